#pragma once

// Laplace-transform export: volume polynomials to the coefficient table of
// the corresponding multidifferentials. Using
//   int_0^inf dl l l^{2d} e^{-z l} = (2d+1)! / z^{2d+2}
// the monomial prod L_i^{2 d_i} * (prod 2^{d_i} d_i!) maps to the series
// entry at d against the basis prod (2 d_i + 1)!! dz_i / z_i^{2 d_i + 2}.

#include "moduli/even_poly.hpp"
#include "moduli/trengine.hpp"

namespace moduli {
namespace laplace {

struct EOSeries {
    int g = 0, n = 0;
    std::map<ExpVec, CoeffElem> entries;

    friend bool operator==(const EOSeries& a, const EOSeries& b) {
        return a.g == b.g && a.n == b.n && a.entries == b.entries;
    }
};

inline EOSeries laplace_export(const Poly& v, int g, int n) {
    tr::require_stable(g, n);
    if (v.nvars() != n) throw std::invalid_argument("volume polynomial has wrong variable count");
    EOSeries s;
    s.g = g;
    s.n = n;
    const int bound = 3 * g - 3 + n;
    for (const auto& [d, c] : v.terms()) {
        int total = 0;
        for (int di : d) total += di;
        if (total > bound) throw std::logic_error("degree support exceeds 3g-3+n");
        Rational norm(1);
        for (int di : d) norm *= Rational(pow_rat(Rational(2), di)) * Rational(factorial(di));
        s.entries[d] = c * norm;
    }
    return s;
}

}  // namespace laplace
}  // namespace moduli

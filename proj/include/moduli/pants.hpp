#pragma once

// Hyperbolic pair-of-pants trigonometry: seam lengths from the right-angled
// hexagon cosine rule, and the seam bound for small pants.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace moduli {
namespace hyp {

struct PantsMetric {
    double L1, L2, L3;
    PantsMetric(double a, double b, double c) : L1(a), L2(b), L3(c) {
        if (!(a > 0 && b > 0 && c > 0)) throw std::invalid_argument("pants needs positive lengths");
    }
};

// cosh(d_{1,2}) = (cosh(L3/2) + cosh(L1/2) cosh(L2/2)) / (sinh(L1/2) sinh(L2/2))
inline double seam_length(const PantsMetric& p) {
    double num = std::cosh(p.L3 / 2.0) + std::cosh(p.L1 / 2.0) * std::cosh(p.L2 / 2.0);
    double den = std::sinh(p.L1 / 2.0) * std::sinh(p.L2 / 2.0);
    return std::acosh(num / den);
}

inline double seam_length(double L1, double L2, double L3) {
    return seam_length(PantsMetric(L1, L2, L3));
}

// Round-trip check of the cosine rule: rebuild cosh(L3/2) from the seam.
inline double seam_roundtrip_error(const PantsMetric& p) {
    double d = seam_length(p);
    double lhs = std::cosh(d) * std::sinh(p.L1 / 2.0) * std::sinh(p.L2 / 2.0) -
                 std::cosh(p.L1 / 2.0) * std::cosh(p.L2 / 2.0);
    return std::abs(lhs - std::cosh(p.L3 / 2.0));
}

struct SmallPantsViolation {
    double L1, L2, L3, seam, bound;
};

// For samples with L1, L2 >= eps and L3 <= L1 + L2 (the small-pants regime),
// the seam obeys d_{1,2} <= 2 ln(4/eps). Returns the violations (expected
// empty).
inline std::vector<SmallPantsViolation> count_small_pants_bound_check(
    double eps, const std::vector<PantsMetric>& samples) {
    if (!(eps > 0 && eps < 4)) throw std::invalid_argument("eps out of range");
    std::vector<SmallPantsViolation> out;
    const double bound = 2.0 * std::log(4.0 / eps);
    for (const auto& p : samples) {
        if (p.L1 < eps || p.L2 < eps) continue;       // precondition filter
        if (p.L3 > p.L1 + p.L2) continue;             // not small
        double d = seam_length(p);
        if (d > bound) out.push_back({p.L1, p.L2, p.L3, d, bound});
    }
    return out;
}

// Grid sweep used by the verification suite.
inline std::vector<SmallPantsViolation> small_pants_grid_sweep(double eps) {
    std::vector<PantsMetric> samples;
    for (double a = eps; a <= 6.0; a += 0.25)
        for (double b = eps; b <= 6.0; b += 0.25)
            for (double frac = 0.1; frac <= 1.0; frac += 0.15)
                samples.emplace_back(a, b, frac * (a + b));
    return count_small_pants_bound_check(eps, samples);
}

}  // namespace hyp
}  // namespace moduli

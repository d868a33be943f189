#pragma once

// Sparse multivariate polynomials in squared length variables. An exponent
// vector d = (d_1,...,d_n) stands for the monomial prod_i L_i^{2 d_i}; odd
// powers of L are unrepresentable by construction. Values are immutable in
// spirit: all operations return new polynomials.

#include "moduli/coeff.hpp"

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace moduli {

using ExpVec = std::vector<int>;

template <class C>
class EvenPoly {
public:
    EvenPoly() : nvars_(1) {}
    explicit EvenPoly(int nvars) : nvars_(nvars) {
        if (nvars < 1) throw std::invalid_argument("EvenPoly needs at least one variable");
    }
    static EvenPoly constant(int nvars, const C& c) {
        EvenPoly p(nvars);
        p.add_term(ExpVec(nvars, 0), c);
        return p;
    }
    // L_{var}^{2k}
    static EvenPoly monomial(int nvars, int var, int k, const C& c) {
        EvenPoly p(nvars);
        ExpVec d(nvars, 0);
        d.at(var) = k;
        p.add_term(d, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<ExpVec, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == ExpVec(nvars_, 0));
    }

    void add_term(const ExpVec& d, const C& c) {
        if (static_cast<int>(d.size()) != nvars_) throw std::invalid_argument("exponent vector length mismatch");
        if (c == RingTraits<C>::zero()) return;
        auto it = terms_.find(d);
        if (it == terms_.end()) terms_[d] = c;
        else {
            it->second += c;
            if (it->second == RingTraits<C>::zero()) terms_.erase(it);
        }
    }

    C coefficient(const ExpVec& d) const {
        if (static_cast<int>(d.size()) != nvars_) throw std::invalid_argument("exponent vector length mismatch");
        auto it = terms_.find(d);
        return it == terms_.end() ? RingTraits<C>::zero() : it->second;
    }

    EvenPoly& operator+=(const EvenPoly& o) {
        if (o.nvars_ != nvars_) throw std::invalid_argument("variable-count mismatch in add");
        for (const auto& [d, c] : o.terms_) add_term(d, c);
        return *this;
    }
    EvenPoly& operator-=(const EvenPoly& o) {
        if (o.nvars_ != nvars_) throw std::invalid_argument("variable-count mismatch in add");
        for (const auto& [d, c] : o.terms_) add_term(d, -c);
        return *this;
    }
    friend EvenPoly operator+(EvenPoly a, const EvenPoly& b) { return a += b; }
    friend EvenPoly operator-(EvenPoly a, const EvenPoly& b) { return a -= b; }
    friend EvenPoly operator-(const EvenPoly& a) {
        EvenPoly out(a.nvars_);
        for (const auto& [d, c] : a.terms_) out.terms_[d] = -c;
        return out;
    }

    // Product; a constant factor may live in a different variable count.
    friend EvenPoly operator*(const EvenPoly& a, const EvenPoly& b) {
        if (a.nvars_ != b.nvars_) {
            if (a.is_constant()) return b * a.constant_value();
            if (b.is_constant()) return a * b.constant_value();
            throw std::invalid_argument("variable-count mismatch in mul");
        }
        EvenPoly out(a.nvars_);
        for (const auto& [da, ca] : a.terms_)
            for (const auto& [db, cb] : b.terms_) {
                ExpVec d(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) d[i] = da[i] + db[i];
                out.add_term(d, ca * cb);
            }
        return out;
    }
    EvenPoly& operator*=(const EvenPoly& o) { return *this = *this * o; }
    friend EvenPoly operator*(EvenPoly a, const C& c) {
        if (c == RingTraits<C>::zero()) return EvenPoly(a.nvars_);
        EvenPoly out(a.nvars_);
        for (const auto& [d, v] : a.terms_) out.add_term(d, v * c);
        return out;
    }
    friend EvenPoly operator*(const C& c, const EvenPoly& a) { return a * c; }
    EvenPoly& operator*=(const C& c) { return *this = *this * c; }
    friend EvenPoly operator*(EvenPoly a, const Rational& q) {
        EvenPoly out(a.nvars_);
        if (q == 0) return out;
        for (auto& [d, v] : a.terms_) { v *= q; out.terms_[d] = v; }
        return out;
    }
    EvenPoly& operator/=(const Rational& q) {
        for (auto& [d, v] : terms_) v /= q;
        return *this;
    }

    friend bool operator==(const EvenPoly& a, const EvenPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const EvenPoly& a, const EvenPoly& b) { return !(a == b); }

    C constant_value() const {
        auto it = terms_.find(ExpVec(nvars_, 0));
        return it == terms_.end() ? RingTraits<C>::zero() : it->second;
    }

    // Total degree in L (twice the exponent sum).
    int total_degree() const {
        int deg = 0;
        for (const auto& [d, c] : terms_)
            deg = std::max(deg, 2 * std::accumulate(d.begin(), d.end(), 0));
        return deg;
    }

    // Sum of monomials of maximal total degree.
    EvenPoly top_degree_part() const {
        EvenPoly out(nvars_);
        if (terms_.empty()) return out;
        const int top = total_degree() / 2;
        for (const auto& [d, c] : terms_)
            if (std::accumulate(d.begin(), d.end(), 0) == top) out.terms_[d] = c;
        return out;
    }

    // Variable permutation: result variable perm[i] carries old variable i.
    EvenPoly permute_vars(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != nvars_) throw std::invalid_argument("bad permutation");
        EvenPoly out(nvars_);
        for (const auto& [d, c] : terms_) {
            ExpVec e(nvars_, 0);
            for (int i = 0; i < nvars_; ++i) e.at(perm[i]) = d[i];
            out.add_term(e, c);
        }
        return out;
    }

    bool is_fully_symmetric() const {
        std::vector<int> perm(nvars_);
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end()))
            if (permute_vars(perm) != *this) return false;
        return true;
    }

    // Substitute L_i -> q*L_i exactly.
    EvenPoly scale_all_vars(const Rational& q) const {
        EvenPoly out(nvars_);
        for (const auto& [d, c] : terms_) {
            int total = std::accumulate(d.begin(), d.end(), 0);
            out.add_term(d, c * pow_rat(q, 2 * total));
        }
        return out;
    }

    std::string str(const std::string& var = "L") const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [d, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (int i = 0; i < nvars_; ++i)
                if (d[i] > 0) out += "*" + var + std::to_string(i + 1) + "^" + std::to_string(2 * d[i]);
        }
        return out;
    }

private:
    int nvars_;
    std::map<ExpVec, C> terms_;  // lexicographic order; no zero coefficients
};

using Poly  = EvenPoly<CoeffElem>;
using FPoly = EvenPoly<FormalPoly>;

// Numeric evaluation, substituting pi^2 -> pi2_value and L_i -> point_i.
inline std::complex<double> eval(const Poly& p, const std::vector<std::complex<double>>& point,
                                 double pi2_value) {
    if (static_cast<int>(point.size()) != p.nvars()) throw std::invalid_argument("point length mismatch");
    std::complex<double> out(0.0, 0.0);
    for (const auto& [d, c] : p.terms()) {
        std::complex<double> m(c.eval(pi2_value), 0.0);
        for (int i = 0; i < p.nvars(); ++i)
            for (int k = 0; k < d[i]; ++k) m *= point[i] * point[i];
        out += m;
    }
    return out;
}

inline double eval_real(const Poly& p, const std::vector<double>& point, double pi2_value) {
    std::vector<std::complex<double>> z(point.begin(), point.end());
    return eval(p, z, pi2_value).real();
}

// Tags each monomial prod L_i^{2 d_i} with beta^{2 sum d_i}, keeping beta formal.
inline FPoly scale_lengths(const Poly& p) {
    FPoly out(p.nvars());
    for (const auto& [d, c] : p.terms()) {
        int total = std::accumulate(d.begin(), d.end(), 0);
        FormalPoly fc = total == 0 ? FormalPoly(c)
                                   : FormalPoly(c) * FormalPoly::generator(Symbol{Symbol::Beta, 0}, 2 * total);
        out.add_term(d, fc);
    }
    return out;
}

inline FPoly promote(const Poly& p) {
    FPoly out(p.nvars());
    for (const auto& [d, c] : p.terms()) out.add_term(d, FormalPoly(c));
    return out;
}

inline Poly collapse(const FPoly& p) {
    Poly out(p.nvars());
    for (const auto& [d, c] : p.terms()) out.add_term(d, c.to_coeff());
    return out;
}

}  // namespace moduli

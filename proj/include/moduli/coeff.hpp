#pragma once

// Coefficient rings for volume polynomials.
//
// CoeffElem is an element of Q[pi^2]: exact rationals attached to powers of
// the formal symbol pi^2. pi^2 is never a float; numeric evaluation happens
// only through eval().
//
// FormalPoly extends CoeffElem by finitely many formal generators (odd
// moments of a twisting function, the conformal-block scalar s, squared
// step heights h_lambda, a length-scaling symbol beta). It is the
// coefficient ring for twisted volumes and algebra-valued recursions.

#include "moduli/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace moduli {

class CoeffElem {
public:
    CoeffElem() = default;
    explicit CoeffElem(const Rational& q) {
        if (q != 0) terms_[0] = q;
    }
    CoeffElem(long long num, long long den) : CoeffElem(rat(num, den)) {}

    // q * (pi^2)^k
    static CoeffElem pi2_power(int k, const Rational& q = Rational(1)) {
        CoeffElem c;
        if (q != 0) {
            if (k < 0) throw std::invalid_argument("negative pi^2 exponent");
            c.terms_[k] = q;
        }
        return c;
    }
    static CoeffElem one() { return CoeffElem(Rational(1)); }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    Rational rational_part() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    CoeffElem& operator+=(const CoeffElem& o) {
        for (const auto& [k, q] : o.terms_) add_term(k, q);
        return *this;
    }
    CoeffElem& operator-=(const CoeffElem& o) {
        for (const auto& [k, q] : o.terms_) add_term(k, -q);
        return *this;
    }
    friend CoeffElem operator+(CoeffElem a, const CoeffElem& b) { return a += b; }
    friend CoeffElem operator-(CoeffElem a, const CoeffElem& b) { return a -= b; }
    friend CoeffElem operator-(const CoeffElem& a) {
        CoeffElem out;
        for (const auto& [k, q] : a.terms_) out.terms_[k] = -q;
        return out;
    }
    friend CoeffElem operator*(const CoeffElem& a, const CoeffElem& b) {
        CoeffElem out;
        for (const auto& [ka, qa] : a.terms_)
            for (const auto& [kb, qb] : b.terms_) out.add_term(ka + kb, qa * qb);
        return out;
    }
    CoeffElem& operator*=(const CoeffElem& o) { return *this = *this * o; }
    CoeffElem& operator*=(const Rational& q) {
        if (q == 0) { terms_.clear(); return *this; }
        for (auto& [k, v] : terms_) v *= q;
        return *this;
    }
    friend CoeffElem operator*(CoeffElem a, const Rational& q) { return a *= q; }
    friend CoeffElem operator*(const Rational& q, CoeffElem a) { return a *= q; }
    CoeffElem& operator/=(const Rational& q) {
        if (q == 0) throw std::domain_error("division by zero");
        for (auto& [k, v] : terms_) v /= q;
        return *this;
    }

    friend bool operator==(const CoeffElem& a, const CoeffElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CoeffElem& a, const CoeffElem& b) { return !(a == b); }
    friend bool operator<(const CoeffElem& a, const CoeffElem& b) { return a.terms_ < b.terms_; }

    double eval(double pi2_value) const {
        double out = 0.0, p = 1.0;
        int last = 0;
        for (const auto& [k, q] : terms_) {
            for (; last < k; ++last) p *= pi2_value;
            out += to_double(q) * p;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, q] : terms_) {
            if (!out.empty()) out += " + ";
            out += rat_to_string(q);
            if (k == 1) out += "*pi2";
            else if (k > 1) out += "*pi2^" + std::to_string(k);
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const CoeffElem& c) { return os << c.str(); }

private:
    void add_term(int k, const Rational& q) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (q != 0) terms_[k] = q;
        } else {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }
    std::map<int, Rational> terms_;  // pi^2 exponent -> coefficient, no zeros stored
};

// Formal generators adjoined to Q[pi^2]. `U` are the odd moments of a
// twisting function: U with index t stands for m_{2t+1}[f], so the tensor
// symbol u_{i,j} is U(i+j). `V` is a second independent moment family.
struct Symbol {
    enum Kind : std::uint8_t { U = 0, V = 1, S = 2, H = 3, Beta = 4 };
    Kind kind;
    int index;
    friend bool operator<(const Symbol& a, const Symbol& b) {
        return a.kind != b.kind ? a.kind < b.kind : a.index < b.index;
    }
    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    std::string str() const {
        switch (kind) {
            case U: return "m" + std::to_string(2 * index + 1);
            case V: return "m'" + std::to_string(2 * index + 1);
            case S: return "s";
            case H: return "h" + std::to_string(index);
            case Beta: return "beta";
        }
        return "?";
    }
};

using SymMonomial = std::vector<std::pair<Symbol, int>>;  // sorted, exponents > 0

class FormalPoly {
public:
    FormalPoly() = default;
    FormalPoly(const CoeffElem& c) {  // NOLINT: implicit ring embedding
        if (!c.is_zero()) terms_[SymMonomial{}] = c;
    }
    FormalPoly(const Rational& q) : FormalPoly(CoeffElem(q)) {}

    static FormalPoly generator(Symbol s, int power = 1) {
        FormalPoly p;
        p.terms_[SymMonomial{{s, power}}] = CoeffElem::one();
        return p;
    }

    const std::map<SymMonomial, CoeffElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_symbol_free() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    CoeffElem constant_part() const {
        auto it = terms_.find(SymMonomial{});
        return it == terms_.end() ? CoeffElem() : it->second;
    }
    // Collapse to Q[pi^2]; throws if a formal generator survives.
    CoeffElem to_coeff() const {
        if (!is_symbol_free()) throw std::domain_error("formal generators remain");
        return constant_part();
    }

    FormalPoly& operator+=(const FormalPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    FormalPoly& operator-=(const FormalPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend FormalPoly operator+(FormalPoly a, const FormalPoly& b) { return a += b; }
    friend FormalPoly operator-(FormalPoly a, const FormalPoly& b) { return a -= b; }
    friend FormalPoly operator-(const FormalPoly& a) {
        FormalPoly out;
        for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
        return out;
    }
    friend FormalPoly operator*(const FormalPoly& a, const FormalPoly& b) {
        FormalPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(merge(ma, mb), ca * cb);
        return out;
    }
    FormalPoly& operator*=(const FormalPoly& o) { return *this = *this * o; }
    FormalPoly& operator*=(const Rational& q) {
        if (q == 0) { terms_.clear(); return *this; }
        for (auto& [m, c] : terms_) c *= q;
        return *this;
    }
    FormalPoly& operator/=(const Rational& q) {
        for (auto& [m, c] : terms_) c /= q;
        return *this;
    }

    friend bool operator==(const FormalPoly& a, const FormalPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FormalPoly& a, const FormalPoly& b) { return !(a == b); }
    friend bool operator<(const FormalPoly& a, const FormalPoly& b) { return a.terms_ < b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (const auto& [s, e] : m) {
                out += "*" + s.str();
                if (e > 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const FormalPoly& p) { return os << p.str(); }

private:
    static SymMonomial merge(const SymMonomial& a, const SymMonomial& b) {
        SymMonomial out;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
            else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
            else { out.emplace_back(a[i].first, a[i].second + b[j].second); ++i; ++j; }
        }
        return out;
    }
    void add_term(const SymMonomial& m, const CoeffElem& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_[m] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    std::map<SymMonomial, CoeffElem> terms_;
};

// Substitute rational values for a subset of the formal generators.
template <class Assign>  // Assign: Symbol -> std::optional<Rational>
FormalPoly substitute(const FormalPoly& p, Assign&& assign) {
    FormalPoly out;
    for (const auto& [mono, coeff] : p.terms()) {
        CoeffElem c = coeff;
        SymMonomial rest;
        for (const auto& [sym, e] : mono) {
            if (auto v = assign(sym)) c *= pow_rat(*v, e);
            else rest.emplace_back(sym, e);
        }
        FormalPoly term;
        if (!c.is_zero()) term += FormalPoly(c) * [&] {
            FormalPoly m(CoeffElem::one());
            for (const auto& [sym, e] : rest) m *= FormalPoly::generator(sym, e);
            return m;
        }();
        out += term;
    }
    return out;
}

// Ring adaptors so templated code can promote scalars uniformly.
template <class C> struct RingTraits;
template <> struct RingTraits<CoeffElem> {
    static CoeffElem zero() { return CoeffElem(); }
    static CoeffElem one() { return CoeffElem::one(); }
    static CoeffElem from(const CoeffElem& c) { return c; }
};
template <> struct RingTraits<FormalPoly> {
    static FormalPoly zero() { return FormalPoly(); }
    static FormalPoly one() { return FormalPoly(CoeffElem::one()); }
    static FormalPoly from(const CoeffElem& c) { return FormalPoly(c); }
};

}  // namespace moduli

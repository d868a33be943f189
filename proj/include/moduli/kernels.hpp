#pragma once

// Recursion kernels: Mirzakhani, Kontsevich, the beta-scaled interpolation
// family, and twists by moment-representable test functions. Provides both
// pointwise evaluators (doubles) and the exact moment transforms
//
//   Bhat[l^{2k}](L1,L2)          = int_0^inf B(L1,L2,l) l^{2k+1} dl
//   Chat[l^{2j} (l')^{2k}](L1)   = int_0^inf int_0^inf C(L1,l,l') l^{2j+1} (l')^{2k+1} dl dl'
//
// which send even monomials to even polynomials ("polynomial type").
//
// The Mirzakhani closed forms are derived from F(x) = 2 ln(1 + e^{x/2}) as
// follows. With Phi_m(a) = int_0^inf l^m (F(a-l) - F(-a-l)) dl one has
//   L1 * Bhat[l^{2k}](L1,L2) = (Phi_{2k+1}(L1+L2) + Phi_{2k+1}(L1-L2)) / 2
//   L1 * Chat[l^{2j}(l')^{2k}](L1) = (2j+1)!(2k+1)!/(2K+1)! * Phi_{2K+1}(L1),  K = j+k+1
// and, for odd m = 2k+1,
//   Phi_m(a) = a^{m+2}/((m+1)(m+2)) + 2 sum_{r=0}^{k} C(m,2r) E_{m-2r} a^{2r+1}/(2r+1)
// with the Fermi-Dirac-type constants E_s = s! (2^{s+1}-2) zeta(s+1), so the
// coefficients live in Q[pi^2]. The quadrature oracle in quadrature.hpp is
// the acceptance gate for this derivation. Kontsevich transforms keep only
// the leading a^{m+2} term (piecewise-linear kernels integrate in closed
// form over the region where the bracket is positive).

#include "moduli/even_poly.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <variant>

namespace moduli {
namespace kernels {

// F(x) = 2 ln(1 + e^{x/2}), evaluated without overflow for large |x|.
inline double eval_F(double x) {
    if (x > 0) return x + 2.0 * std::log1p(std::exp(-x / 2.0));
    return 2.0 * std::log1p(std::exp(x / 2.0));
}

inline double bracket_plus(double x) { return x > 0 ? x : 0.0; }

// ---------------------------------------------------------------------------
// Moment specifications for twisting functions f.

struct MomentSpec {
    enum class Kind { Zero, Indicator, Exponential, Formal };
    Kind kind = Kind::Zero;
    Rational param = Rational(0);  // H for Indicator, rate for Exponential
    int family = 0;                // 0 -> U symbols, 1 -> V symbols

    static MomentSpec zero() { return MomentSpec{}; }
    static MomentSpec indicator(const Rational& H) {
        if (H <= 0) throw std::invalid_argument("indicator needs H > 0");
        return MomentSpec{Kind::Indicator, H, 0};
    }
    static MomentSpec exponential(const Rational& rate) {
        if (rate <= 0) throw std::invalid_argument("exponential needs rate > 0");
        return MomentSpec{Kind::Exponential, rate, 0};
    }
    static MomentSpec formal(int family = 0) { return MomentSpec{Kind::Formal, Rational(0), family}; }

    bool is_zero() const { return kind == Kind::Zero; }

    // m_{2t+1}[f], the only data the exact path needs.
    FormalPoly odd_moment(int t) const {
        switch (kind) {
            case Kind::Zero: return FormalPoly();
            case Kind::Indicator:  // int_0^H l^{2t+1} dl
                return FormalPoly(CoeffElem(pow_rat(param, 2 * t + 2) / Rational(2 * t + 2)));
            case Kind::Exponential:  // int l^{2t+1} e^{-rate l} dl = (2t+1)! / rate^{2t+2}
                return FormalPoly(CoeffElem(Rational(factorial(2 * t + 1)) / pow_rat(param, 2 * t + 2)));
            case Kind::Formal:
                return FormalPoly::generator(Symbol{family == 0 ? Symbol::U : Symbol::V, t});
        }
        return FormalPoly();
    }

    bool has_pointwise() const { return kind != Kind::Formal; }
    double pointwise(double ell) const {
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::Indicator: return ell > 0 && ell < to_double(param) ? 1.0 : 0.0;
            case Kind::Exponential: return std::exp(-to_double(param) * ell);
            case Kind::Formal: throw std::domain_error("formal moments have no pointwise value");
        }
        return 0.0;
    }

    std::string id() const {
        switch (kind) {
            case Kind::Zero: return "0";
            case Kind::Indicator: return "ind:" + rat_to_string(param);
            case Kind::Exponential: return "exp:" + rat_to_string(param);
            case Kind::Formal: return family == 0 ? "formal" : "formal'";
        }
        return "?";
    }
};

// ---------------------------------------------------------------------------
// Kernel families.

struct KernelFamily {
    enum class Base { Mirzakhani, Kontsevich, BetaScaled };
    Base base = Base::Mirzakhani;
    Rational beta = Rational(1);          // only for BetaScaled
    std::vector<MomentSpec> twists;       // applied left to right
    bool polynomial_type = true;

    static KernelFamily mirzakhani() { return KernelFamily{Base::Mirzakhani, Rational(1), {}, true}; }
    static KernelFamily kontsevich() { return KernelFamily{Base::Kontsevich, Rational(1), {}, true}; }
    static KernelFamily beta_scaled(const Rational& b) {
        if (b <= 0) throw std::invalid_argument("beta must be positive");
        return KernelFamily{Base::BetaScaled, b, {}, true};
    }

    std::string id() const {
        std::string out;
        switch (base) {
            case Base::Mirzakhani: out = "mirzakhani"; break;
            case Base::Kontsevich: out = "kontsevich"; break;
            case Base::BetaScaled: out = "beta:" + rat_to_string(beta); break;
        }
        for (const auto& t : twists) out += "+twist(" + t.id() + ")";
        return out;
    }
};

inline KernelFamily twist(KernelFamily fam, const MomentSpec& f) {
    if (!fam.polynomial_type) throw std::invalid_argument("twist needs a polynomial-type family");
    if (!f.is_zero()) fam.twists.push_back(f);
    return fam;
}

// ---------------------------------------------------------------------------
// Pointwise evaluators. L1 must be positive; other arguments nonnegative.

namespace detail {
inline void require_l1(double L1) {
    if (!(L1 > 0)) throw std::domain_error("kernel evaluation needs L1 > 0");
}
}  // namespace detail

inline double eval_A(const KernelFamily&, double, double, double) { return 1.0; }

inline double eval_B(const KernelFamily& fam, double L1, double L2, double ell) {
    detail::require_l1(L1);
    switch (fam.base) {
        case KernelFamily::Base::Mirzakhani: {
            double v = (eval_F(L1 + L2 - ell) + eval_F(L1 - L2 - ell) - eval_F(-L1 + L2 - ell) -
                        eval_F(-L1 - L2 - ell)) /
                       (2.0 * L1);
            for (const auto& f : fam.twists) v += f.pointwise(ell);  // A = 1
            return v;
        }
        case KernelFamily::Base::Kontsevich: {
            double v = (bracket_plus(L1 - L2 - ell) - bracket_plus(-L1 + L2 - ell) +
                        bracket_plus(L1 + L2 - ell)) /
                       (2.0 * L1);
            for (const auto& f : fam.twists) v += f.pointwise(ell);
            return v;
        }
        case KernelFamily::Base::BetaScaled: {
            double b = to_double(fam.beta);
            KernelFamily m = KernelFamily::mirzakhani();
            double v = eval_B(m, b * L1, b * L2, b * ell);
            for (const auto& f : fam.twists) v += f.pointwise(ell);
            return v;
        }
    }
    return 0.0;
}

// The log-ratio closed form of B^M, kept as an independent cross-check of
// the F-combination.
inline double eval_B_mirzakhani_logratio(double L1, double L2, double ell) {
    detail::require_l1(L1);
    return 1.0 - std::log((std::cosh(L2 / 2.0) + std::cosh((L1 + ell) / 2.0)) /
                          (std::cosh(L2 / 2.0) + std::cosh((L1 - ell) / 2.0))) /
                     L1;
}

inline double eval_C(const KernelFamily& fam, double L1, double ell, double ellp) {
    detail::require_l1(L1);
    double v = 0.0;
    switch (fam.base) {
        case KernelFamily::Base::Mirzakhani:
            v = (eval_F(L1 - ell - ellp) - eval_F(-L1 - ell - ellp)) / L1;
            break;
        case KernelFamily::Base::Kontsevich:
            v = bracket_plus(L1 - ell - ellp) / L1;
            break;
        case KernelFamily::Base::BetaScaled: {
            double b = to_double(fam.beta);
            KernelFamily m = KernelFamily::mirzakhani();
            v = eval_C(m, b * L1, b * ell, b * ellp);
            break;
        }
    }
    if (!fam.twists.empty()) {
        KernelFamily base = fam;
        base.twists.pop_back();
        const MomentSpec& f = fam.twists.back();
        v = eval_C(base, L1, ell, ellp) + eval_B(base, L1, ell, ellp) * f.pointwise(ell) +
            eval_B(base, L1, ellp, ell) * f.pointwise(ellp) +
            eval_A(base, L1, ell, ellp) * f.pointwise(ell) * f.pointwise(ellp);
        return v;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Exact moment transforms.

namespace detail {

// E_s = s! (2^{s+1} - 2) zeta(s+1) for odd s = 2i-1, as an element of Q[pi^2].
inline CoeffElem fermi_E(int s) {
    int i = (s + 1) / 2;
    Rational q = Rational(factorial(s)) * (pow_rat(Rational(2), s + 1) - 2) * zeta2k_over_pi2k(i);
    return CoeffElem::pi2_power(i, q);
}

// Coefficients of the odd polynomial Phi_{2k+1}: list of (odd power 2r+1, coeff).
inline std::vector<std::pair<int, CoeffElem>> phi_coeffs(int k, bool kontsevich) {
    std::vector<std::pair<int, CoeffElem>> out;
    int m = 2 * k + 1;
    out.emplace_back(m + 2, CoeffElem(Rational(1) / Rational((m + 1) * (m + 2))));
    if (!kontsevich) {
        for (int r = 0; r <= k; ++r) {
            Rational c = Rational(2 * binomial(m, 2 * r)) / Rational(2 * r + 1);
            out.emplace_back(2 * r + 1, fermi_E(m - 2 * r) * c);
        }
    }
    return out;
}

// (Phi_{2k+1}(L1+L2) + Phi_{2k+1}(L1-L2)) / (2 L1) expanded binomially.
inline Poly bhat_poly(int k, bool kontsevich) {
    Poly out(2);
    for (const auto& [p, c] : phi_coeffs(k, kontsevich)) {
        // (a^p + b^p)/(2 L1) with a = L1+L2, b = L1-L2 and p odd.
        for (int s = 0; s <= p; s += 2) {
            ExpVec d{(p - s - 1) / 2, s / 2};  // L1^{p-1-s} L2^{s}
            out.add_term(d, c * Rational(binomial(p, s)));
        }
    }
    return out;
}

inline Poly chat_poly(int j, int k, bool kontsevich) {
    int K = j + k + 1;
    Rational beta_jk = Rational(factorial(2 * j + 1) * factorial(2 * k + 1)) / Rational(factorial(2 * K + 1));
    Poly out(1);
    for (const auto& [p, c] : phi_coeffs(K, kontsevich))
        out.add_term(ExpVec{(p - 1) / 2}, c * beta_jk);  // Phi(L1)/L1
    return out;
}

}  // namespace detail

// Moment-transform view of a kernel family over a coefficient ring C
// (CoeffElem for the exact families, FormalPoly once formal twists enter).
// Results are cached; the cache is guarded so families can be shared across
// worker threads.
template <class C>
class KernelMoments {
public:
    explicit KernelMoments(const KernelFamily& fam) : fam_(fam) {
        if (!fam.polynomial_type) throw std::invalid_argument("family is not of polynomial type");
        for (const auto& t : fam.twists)
            if (t.kind == MomentSpec::Kind::Formal && !std::is_same_v<C, FormalPoly>)
                throw std::invalid_argument("formal moments need the FormalPoly coefficient ring");
    }

    const KernelFamily& family() const { return fam_; }

    // A(L1,L2,L3) as an even polynomial; identically 1 for these families
    // and unchanged by twisting. References stay valid for the lifetime of
    // this object (caches are node-based).
    const EvenPoly<C>& A() const {
        std::lock_guard<std::mutex> lk(mutex_);
        if (!acache_) acache_ = std::make_unique<EvenPoly<C>>(EvenPoly<C>::constant(3, RingTraits<C>::one()));
        return *acache_;
    }

    // Bhat[l^{2k}](L1, L2)
    const EvenPoly<C>& momentB(int k) const {
        {
            std::lock_guard<std::mutex> lk(mutex_);
            auto it = bcache_.find(k);
            if (it != bcache_.end()) return it->second;
        }
        EvenPoly<C> v = computeB(k);
        std::lock_guard<std::mutex> lk(mutex_);
        return bcache_.try_emplace(k, std::move(v)).first->second;
    }

    // Chat[l^{2j} (l')^{2k}](L1)
    const EvenPoly<C>& momentC(int j, int k) const {
        {
            std::lock_guard<std::mutex> lk(mutex_);
            auto it = ccache_.find({j, k});
            if (it != ccache_.end()) return it->second;
        }
        EvenPoly<C> v = computeC(j, k);
        std::lock_guard<std::mutex> lk(mutex_);
        return ccache_.try_emplace(std::pair<int, int>{j, k}, std::move(v)).first->second;
    }

    // VD(L1) = (1/2) int l C(L1,l,l) dl, the (1,1) base case.
    const EvenPoly<C>& VD() const {
        std::lock_guard<std::mutex> lk(mutex_);
        if (!vd_) vd_ = std::make_unique<EvenPoly<C>>(computeVD());
        return *vd_;
    }

private:
    static EvenPoly<C> lift(const Poly& p) {
        EvenPoly<C> out(p.nvars());
        for (const auto& [d, c] : p.terms()) out.add_term(d, RingTraits<C>::from(c));
        return out;
    }
    static C lift_moment(const FormalPoly& m) {
        if constexpr (std::is_same_v<C, FormalPoly>) return m;
        else return m.to_coeff();
    }

    EvenPoly<C> computeB(int k) const {
        KernelFamily base = fam_;
        if (base.twists.empty()) {
            switch (base.base) {
                case KernelFamily::Base::Mirzakhani: return lift(detail::bhat_poly(k, false));
                case KernelFamily::Base::Kontsevich: return lift(detail::bhat_poly(k, true));
                case KernelFamily::Base::BetaScaled: {
                    // Bhat^beta[l^{2k}](L1,L2) = beta^{-(2k+2)} Bhat^M[l^{2k}](beta L1, beta L2)
                    Poly m = detail::bhat_poly(k, false);
                    Poly out(2);
                    for (const auto& [d, c] : m.terms())
                        out.add_term(d, c * pow_rat(base.beta, 2 * (d[0] + d[1]) - (2 * k + 2)));
                    return lift(out);
                }
            }
        }
        MomentSpec f = base.twists.back();
        base.twists.pop_back();
        KernelMoments<C> inner(base);
        // B[f] = B + A f(l):  Bhat[f][l^{2k}] += sum_A-terms A^{(i,j),a} m_{2(a+k)+1}
        EvenPoly<C> out = inner.momentB(k);
        for (const auto& [d, c] : inner.A().terms()) {
            C w = c * lift_moment(f.odd_moment(d[2] + k));
            out.add_term(ExpVec{d[0], d[1]}, w);
        }
        return out;
    }

    EvenPoly<C> computeC(int j, int k) const {
        KernelFamily base = fam_;
        if (base.twists.empty()) {
            switch (base.base) {
                case KernelFamily::Base::Mirzakhani: return lift(detail::chat_poly(j, k, false));
                case KernelFamily::Base::Kontsevich: return lift(detail::chat_poly(j, k, true));
                case KernelFamily::Base::BetaScaled: {
                    Poly m = detail::chat_poly(j, k, false);
                    Poly out(1);
                    for (const auto& [d, c] : m.terms())
                        out.add_term(d, c * pow_rat(base.beta, 2 * d[0] - (2 * j + 2 * k + 4)));
                    return lift(out);
                }
            }
        }
        MomentSpec f = base.twists.back();
        base.twists.pop_back();
        KernelMoments<C> inner(base);
        EvenPoly<C> out = inner.momentC(j, k);
        // C[f] = C + B(L1,l,l') f(l) + B(L1,l',l) f(l') + A f(l) f(l')
        for (const auto& [d, c] : inner.momentB(k).terms())
            out.add_term(ExpVec{d[0]}, c * lift_moment(f.odd_moment(d[1] + j)));
        for (const auto& [d, c] : inner.momentB(j).terms())
            out.add_term(ExpVec{d[0]}, c * lift_moment(f.odd_moment(d[1] + k)));
        for (const auto& [d, c] : inner.A().terms()) {
            C w = c * lift_moment(f.odd_moment(d[1] + j)) * lift_moment(f.odd_moment(d[2] + k));
            out.add_term(ExpVec{d[0]}, w);
        }
        return out;
    }

    EvenPoly<C> computeVD() const {
        KernelFamily base = fam_;
        if (base.twists.empty()) {
            Poly vd(1);
            switch (base.base) {
                case KernelFamily::Base::Mirzakhani:
                    vd.add_term(ExpVec{0}, CoeffElem::pi2_power(1, rat(1, 12)));
                    vd.add_term(ExpVec{1}, CoeffElem(rat(1, 48)));
                    break;
                case KernelFamily::Base::Kontsevich:
                    vd.add_term(ExpVec{1}, CoeffElem(rat(1, 48)));
                    break;
                case KernelFamily::Base::BetaScaled:
                    // beta^{-2} VD^M(beta L1)
                    vd.add_term(ExpVec{0}, CoeffElem::pi2_power(1, rat(1, 12) / pow_rat(base.beta, 2)));
                    vd.add_term(ExpVec{1}, CoeffElem(rat(1, 48)));
                    break;
            }
            return lift(vd);
        }
        MomentSpec f = base.twists.back();
        base.twists.pop_back();
        KernelMoments<C> inner(base);
        // VD[f](L1) = VD(L1) + (1/2) int l A(L1,l,l) f(l) dl
        EvenPoly<C> out = inner.VD();
        for (const auto& [d, c] : inner.A().terms()) {
            C w = c * lift_moment(f.odd_moment(d[1] + d[2]));
            w *= rat(1, 2);
            out.add_term(ExpVec{d[0]}, w);
        }
        return out;
    }

    KernelFamily fam_;
    mutable std::mutex mutex_;
    mutable std::map<int, EvenPoly<C>> bcache_;
    mutable std::map<std::pair<int, int>, EvenPoly<C>> ccache_;
    mutable std::unique_ptr<EvenPoly<C>> vd_;
    mutable std::unique_ptr<EvenPoly<C>> acache_;
};

}  // namespace kernels
}  // namespace moduli

#pragma once

// The topological recursion over polynomial-type initial data:
//
//   V_{g,n}(L) = sum_{m=2}^n Bhat-transform of V_{g,n-1}(., L_{!=1,m})
//              + 1/2 Chat-transform of [ V_{g-1,n+1} + sum' V_{h,1+#J} V_{h',1+#J'} ]
//
// with base cases V_{0,3} = A and V_{1,1} = VD. The transforms act linearly
// on monomials in the glued variables, so everything stays exact. The
// splitting sum runs over ordered pairs with the 1/2 prefactor retained;
// pieces of type (0,1) and (0,2) are discarded.

#include "moduli/kernels.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace moduli {
namespace tr {

inline bool stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }

inline void require_stable(int g, int n) {
    if (!stable(g, n)) {
        std::ostringstream msg;
        msg << "unstable surface type (" << g << "," << n << ")";
        throw std::invalid_argument(msg.str());
    }
}

template <class C>
class VolumeEngine {
public:
    explicit VolumeEngine(const kernels::KernelFamily& fam) : moments_(fam) {}

    const kernels::KernelMoments<C>& moments() const { return moments_; }

    // V_{g,n} as an even polynomial in n variables (L1 is variable 0).
    EvenPoly<C> volume(int g, int n) const {
        require_stable(g, n);
        {
            std::shared_lock lock(mutex_);
            auto it = memo_.find({g, n});
            if (it != memo_.end()) return it->second;
        }
        EvenPoly<C> v = compute(g, n);
        std::unique_lock lock(mutex_);
        return memo_.try_emplace({g, n}, std::move(v)).first->second;
    }

private:
    EvenPoly<C> compute(int g, int n) const {
        if (g == 0 && n == 3) return moments_.A();
        if (g == 1 && n == 1) return moments_.VD();

        EvenPoly<C> out(n);
        const Rational half = rat(1, 2);

        // B-terms: glue the first boundary with boundary m.
        EvenPoly<C> prev = n >= 2 ? volume(g, n - 1) : EvenPoly<C>(1);
        for (int m = 2; m <= n; ++m) {
            for (const auto& [dp, c] : prev.terms()) {
                EvenPoly<C> bh = moments_.momentB(dp[0]);
                for (const auto& [db, cb] : bh.terms()) {
                    ExpVec e(n, 0);
                    e[0] = db[0];
                    e[m - 1] = db[1];
                    int src = 1;
                    for (int label = 2; label <= n; ++label) {
                        if (label == m) continue;
                        e[label - 1] += dp[src++];
                    }
                    out.add_term(e, c * cb);
                }
            }
        }

        // C-term, non-separating part.
        if (stable(g - 1, n + 1)) {
            EvenPoly<C> inner = volume(g - 1, n + 1);
            for (const auto& [dp, c] : inner.terms()) {
                EvenPoly<C> ch = moments_.momentC(dp[0], dp[1]);
                for (const auto& [dc, cc] : ch.terms()) {
                    ExpVec e(n, 0);
                    e[0] = dc[0];
                    for (int j = 2; j <= n; ++j) e[j - 1] = dp[j];
                    C w = c * cc;
                    w *= half;
                    out.add_term(e, w);
                }
            }
        }

        // C-term, separating part: ordered (h,J) | (g-h,J') splittings.
        const int rest = n - 1;  // labels 2..n
        for (int h = 0; h <= g; ++h) {
            for (unsigned mask = 0; mask < (1u << rest); ++mask) {
                int nj = __builtin_popcount(mask);
                if (!stable(h, 1 + nj) || !stable(g - h, 1 + rest - nj)) continue;
                EvenPoly<C> va = volume(h, 1 + nj);
                EvenPoly<C> vb = volume(g - h, 1 + rest - nj);
                for (const auto& [da, ca] : va.terms()) {
                    for (const auto& [db, cb] : vb.terms()) {
                        EvenPoly<C> ch = moments_.momentC(da[0], db[0]);
                        for (const auto& [dc, cc] : ch.terms()) {
                            ExpVec e(n, 0);
                            e[0] = dc[0];
                            int ia = 1, ib = 1;
                            for (int label = 2; label <= n; ++label) {
                                if (mask & (1u << (label - 2))) e[label - 1] = da[ia++];
                                else e[label - 1] = db[ib++];
                            }
                            C w = ca * cb;
                            w *= cc;
                            w *= half;
                            out.add_term(e, w);
                        }
                    }
                }
            }
        }
        return out;
    }

    kernels::KernelMoments<C> moments_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::pair<int, int>, EvenPoly<C>> memo_;
};

// Memoized volumes across kernel families, keyed by the family id.
class VolumeTable {
public:
    Poly volume(int g, int n, const kernels::KernelFamily& fam) const {
        return engine(fam).volume(g, n);
    }
    const VolumeEngine<CoeffElem>& engine(const kernels::KernelFamily& fam) const {
        std::string key = fam.id();
        {
            std::shared_lock lock(mutex_);
            auto it = engines_.find(key);
            if (it != engines_.end()) return *it->second;
        }
        auto eng = std::make_shared<VolumeEngine<CoeffElem>>(fam);
        std::unique_lock lock(mutex_);
        return *engines_.try_emplace(key, std::move(eng)).first->second;
    }

private:
    mutable std::shared_mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<VolumeEngine<CoeffElem>>> engines_;
};

inline Poly volume(int g, int n, const kernels::KernelFamily& fam) {
    return VolumeEngine<CoeffElem>(fam).volume(g, n);
}

// Volume for twist(fam, f); coefficients are polynomials in the formal odd
// moments when f is a FormalMoments spec.
inline FPoly twisted_volume(int g, int n, const kernels::KernelFamily& fam,
                            const kernels::MomentSpec& f) {
    return VolumeEngine<FormalPoly>(kernels::twist(fam, f)).volume(g, n);
}

// <tau_{d_1} ... tau_{d_n}>_g extracted from the Kontsevich volume:
// V^K_{g,n} = sum_d <tau_d> prod L_i^{2 d_i} / (2^{d_i} d_i!).
inline std::map<ExpVec, Rational> psi_intersections(int g, int n, const VolumeTable& table) {
    require_stable(g, n);
    Poly v = table.volume(g, n, kernels::KernelFamily::kontsevich());
    std::map<ExpVec, Rational> out;
    for (const auto& [d, c] : v.terms()) {
        if (!c.is_rational()) throw std::logic_error("Kontsevich volume has a pi^2 term");
        Rational norm(1);
        for (int di : d) norm *= Rational(pow_rat(Rational(2), di)) * Rational(factorial(di));
        out[d] = c.rational_part() * norm;
    }
    return out;
}

inline std::map<ExpVec, Rational> psi_intersections(int g, int n) {
    VolumeTable t;
    return psi_intersections(g, n, t);
}

}  // namespace tr
}  // namespace moduli

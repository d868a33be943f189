#pragma once

// Algebra-valued topological recursion for modular-functor data:
//   A = mu,  B = s * B^M * mu,  C = s^2 * C^M * mu,
//   D = s * sum_lambda rk(1,1;lambda) e_lambda,
// with s = (2 i pi / sqrt(c/12))^2 carried as a formal symbol so all
// identities stay exact. Components are stored against the basis, i.e.
// T_{g,n}[lambda_1..lambda_n] = (VOmega_{g,n} | e_{lambda_1} x ... ).
//
// The conformal-block twist multiplies in step-function statistics with
// algebra-valued edge pairings; it is routed through the stable-graph sum,
// with squared step heights kept as formal generators h_lambda (their exact
// rational values 2(c/24 - r_lambda) may be substituted afterwards).

#include "moduli/fatgraph.hpp"
#include "moduli/graph_sum.hpp"

namespace moduli {
namespace tqft {

using LabeledPoly = std::map<std::vector<int>, FPoly>;

inline FormalPoly s_power(int k) {
    return k == 0 ? FormalPoly(CoeffElem::one()) : FormalPoly::generator(Symbol{Symbol::S, 0}, k);
}

class AlgebraVolumeEngine {
public:
    explicit AlgebraVolumeEngine(const FrobeniusAlgebra& alg)
        : alg_(alg),
          mom_(kernels::KernelFamily::mirzakhani()),
          etainv_(alg.eta_inverse()) {
        alg_.validate();
    }

    const FrobeniusAlgebra& algebra() const { return alg_; }

    const LabeledPoly& volume(int g, int n) const {
        tr::require_stable(g, n);
        auto key = std::make_pair(g, n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        LabeledPoly v = compute(g, n);
        return memo_.emplace(key, std::move(v)).first->second;
    }

private:
    void add(LabeledPoly& t, const std::vector<int>& lab, const FPoly& p) const {
        if (p.is_zero()) return;
        auto it = t.find(lab);
        if (it == t.end()) t.emplace(lab, p);
        else {
            it->second += p;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    LabeledPoly compute(int g, int n) const {
        const int d = alg_.dim;
        LabeledPoly out;

        if (g == 0 && n == 3) {
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    for (int c = 0; c < d; ++c) {
                        Rational m = alg_.mu(a, b, c);
                        if (m != 0)
                            add(out, {a, b, c}, FPoly::constant(3, FormalPoly(CoeffElem(m))));
                    }
            return out;
        }
        if (g == 1 && n == 1) {
            EvenPoly<FormalPoly> vd = mom_.VD();
            for (int lam = 0; lam < d; ++lam) {
                Rational w(0);
                for (int mu = 0; mu < d; ++mu)
                    w += Rational(fusion_rank(alg_, 1, 1, {mu})) * alg_.eta[mu][lam];
                if (w == 0) continue;
                FPoly val = vd * FormalPoly(CoeffElem(w));
                val = val * s_power(1);
                add(out, {lam}, val);
            }
            return out;
        }

        const Rational half = rat(1, 2);

        // B-step: glue boundary 1 with boundary m through mu and the pairing.
        if (n >= 2) {
            const LabeledPoly& prev = volume(g, n - 1);
            for (const auto& [plab, ppoly] : prev) {
                int y = plab[0];
                for (int m = 1; m < n; ++m) {
                    for (int l0 = 0; l0 < d; ++l0)
                        for (int lm = 0; lm < d; ++lm) {
                            Rational w(0);
                            for (int x = 0; x < d; ++x) w += alg_.mu(l0, lm, x) * etainv_[x][y];
                            if (w == 0) continue;
                            std::vector<int> lab(n, 0);
                            lab[0] = l0;
                            lab[m] = lm;
                            int src = 1;
                            for (int slot = 1; slot < n; ++slot) {
                                if (slot == m) continue;
                                lab[slot] = plab[src++];
                            }
                            FPoly contrib = transformB(ppoly, n, m);
                            contrib = contrib * (s_power(1) * FormalPoly(CoeffElem(w)));
                            add(out, lab, contrib);
                        }
                }
            }
        }

        // C-step, non-separating.
        if (tr::stable(g - 1, n + 1)) {
            const LabeledPoly& inner = volume(g - 1, n + 1);
            for (const auto& [plab, ppoly] : inner) {
                int y = plab[0], yp = plab[1];
                for (int l0 = 0; l0 < d; ++l0) {
                    Rational w(0);
                    for (int x = 0; x < d; ++x)
                        for (int xp = 0; xp < d; ++xp)
                            w += alg_.mu(l0, x, xp) * etainv_[x][y] * etainv_[xp][yp];
                    if (w == 0) continue;
                    std::vector<int> lab(n, 0);
                    lab[0] = l0;
                    for (int slot = 1; slot < n; ++slot) lab[slot] = plab[slot + 1];
                    FPoly contrib = transformC(ppoly, std::nullopt, n);
                    contrib = contrib * (s_power(2) * FormalPoly(CoeffElem(w * half)));
                    add(out, lab, contrib);
                }
            }
        }

        // C-step, separating (ordered splittings, 1/2 kept; unstable pieces
        // are discarded).
        const int rest = n - 1;
        for (int h = 0; h <= g; ++h)
            for (unsigned mask = 0; mask < (1u << rest); ++mask) {
                int nj = __builtin_popcount(mask);
                if (!tr::stable(h, 1 + nj) || !tr::stable(g - h, 1 + rest - nj)) continue;
                const LabeledPoly& va = volume(h, 1 + nj);
                const LabeledPoly& vb = volume(g - h, 1 + rest - nj);
                for (const auto& [alab, apoly] : va)
                    for (const auto& [blab, bpoly] : vb) {
                        int y = alab[0], yp = blab[0];
                        for (int l0 = 0; l0 < d; ++l0) {
                            Rational w(0);
                            for (int x = 0; x < d; ++x)
                                for (int xp = 0; xp < d; ++xp)
                                    w += alg_.mu(l0, x, xp) * etainv_[x][y] * etainv_[xp][yp];
                            if (w == 0) continue;
                            std::vector<int> lab(n, 0);
                            lab[0] = l0;
                            int ia = 1, ib = 1;
                            for (int i = 0; i < rest; ++i)
                                lab[i + 1] = (mask & (1u << i)) ? alab[ia++] : blab[ib++];
                            FPoly contrib = transformC(apoly, bpoly, n, mask);
                            contrib = contrib * (s_power(2) * FormalPoly(CoeffElem(w * half)));
                            add(out, lab, contrib);
                        }
                    }
            }
        return out;
    }

    // Bhat-transform of prev (variable 0 glued) into an n-variable polynomial
    // with the new variable m.
    FPoly transformB(const FPoly& prev, int n, int m) const {
        FPoly out(n);
        for (const auto& [dp, c] : prev.terms()) {
            EvenPoly<FormalPoly> bh = mom_.momentB(dp[0]);
            for (const auto& [db, cb] : bh.terms()) {
                ExpVec e(n, 0);
                e[0] = db[0];
                e[m] = db[1];
                int src = 1;
                for (int slot = 1; slot < n; ++slot) {
                    if (slot == m) continue;
                    e[slot] += dp[src++];
                }
                out.add_term(e, c * cb);
            }
        }
        return out;
    }

    // Chat-transform: either of one (n+1)-variable polynomial with variables
    // (l, l', rest), or of a product pair with glued first variables.
    FPoly transformC(const FPoly& first, std::optional<FPoly> second, int n,
                     unsigned mask = 0) const {
        FPoly out(n);
        if (!second) {
            for (const auto& [dp, c] : first.terms()) {
                EvenPoly<FormalPoly> ch = mom_.momentC(dp[0], dp[1]);
                for (const auto& [dc, cc] : ch.terms()) {
                    ExpVec e(n, 0);
                    e[0] = dc[0];
                    for (int slot = 1; slot < n; ++slot) e[slot] = dp[slot + 1];
                    out.add_term(e, c * cc);
                }
            }
            return out;
        }
        const int rest = n - 1;
        for (const auto& [da, ca] : first.terms())
            for (const auto& [db, cb] : second->terms()) {
                EvenPoly<FormalPoly> ch = mom_.momentC(da[0], db[0]);
                for (const auto& [dc, cc] : ch.terms()) {
                    ExpVec e(n, 0);
                    e[0] = dc[0];
                    int ia = 1, ib = 1;
                    for (int i = 0; i < rest; ++i)
                        e[i + 1] = (mask & (1u << i)) ? da[ia++] : db[ib++];
                    out.add_term(e, ca * cb * cc);
                }
            }
        return out;
    }

    FrobeniusAlgebra alg_;
    kernels::KernelMoments<FormalPoly> mom_;
    std::vector<std::vector<Rational>> etainv_;
    mutable std::map<std::pair<int, int>, LabeledPoly> memo_;
};

inline LabeledPoly algebra_valued_volume(const FrobeniusAlgebra& alg, int g, int n) {
    AlgebraVolumeEngine eng(alg);
    return eng.volume(g, n);
}

// ---------------------------------------------------------------------------
// Conformal-block twist: stable-graph sum with edges paired against the
// Sym^2-valued step function, odd moments m_{2d+1} = H_lambda^{2d+2}/(2d+2)
// entering with the overall minus sign of f. h_lambda stands for H_lambda^2.

inline FormalPoly step_moment(int lambda, int t) {
    FormalPoly h = FormalPoly::generator(Symbol{Symbol::H, lambda}, t + 1);
    h *= -Rational(1, 1) / Rational(2 * t + 2);
    return h;
}

inline LabeledPoly conformal_block_twist(const FrobeniusAlgebra& alg, int g, int n) {
    tr::require_stable(g, n);
    AlgebraVolumeEngine eng(alg);
    const int d = alg.dim;
    LabeledPoly total;

    for (const graphs::StableGraph& G : graphs::enumerate(g, n)) {
        const int E = G.num_edges();
        const int V = G.num_vertices();
        const int ext = n + E;

        std::vector<int> edge_label(E, 0), out_label(n, 0);
        std::function<void(int)> loop_edges = [&](int e) {
            if (e < E) {
                for (int x = 0; x < d; ++x) {
                    edge_label[e] = x;
                    loop_edges(e + 1);
                }
                return;
            }
            // vertex slot labels: side .first takes lambda_e, side .second
            // takes lambda_e^dagger; the vertex polynomial is embedded over
            // leaf variables 0..n-1 and edge variables n..n+E-1.
            FPoly prod = FPoly::constant(ext, RingTraits<FormalPoly>::one());
            for (int v = 0; v < V && !prod.is_zero(); ++v) {
                std::vector<int> slot;
                std::vector<int> vlabels;
                for (int ei = 0; ei < E; ++ei) {
                    if (G.edges[ei].first == v) {
                        slot.push_back(n + ei);
                        vlabels.push_back(edge_label[ei]);
                    }
                    if (G.edges[ei].second == v) {
                        slot.push_back(n + ei);
                        vlabels.push_back(alg.dagger[edge_label[ei]]);
                    }
                }
                for (int leaf : G.leaves[v]) {
                    slot.push_back(leaf - 1);
                    vlabels.push_back(out_label[leaf - 1]);
                }
                const LabeledPoly& vert = eng.volume(G.genus[v], static_cast<int>(slot.size()));
                auto it = vert.find(vlabels);
                if (it == vert.end()) {
                    prod = FPoly(ext);
                    break;
                }
                prod = prod * graphs::detail::embed(it->second, ext, slot);
            }
            if (prod.is_zero()) return;

            FPoly contracted(n);
            for (const auto& [dp, c] : prod.terms()) {
                FormalPoly w = c;
                for (int ei = 0; ei < E; ++ei) w *= step_moment(edge_label[ei], dp[n + ei]);
                if (w.is_zero()) continue;
                ExpVec lead(dp.begin(), dp.begin() + n);
                contracted.add_term(lead, w);
            }
            if (contracted.is_zero()) return;
            contracted /= Rational(G.aut);
            auto it = total.find(out_label);
            if (it == total.end()) total.emplace(out_label, contracted);
            else {
                it->second += contracted;
                if (it->second.is_zero()) total.erase(it);
            }
        };
        std::function<void(int)> loop_out = [&](int l) {
            if (l == n) {
                loop_edges(0);
                return;
            }
            for (int x = 0; x < d; ++x) {
                out_label[l] = x;
                loop_out(l + 1);
            }
        };
        loop_out(0);
    }
    return total;
}

// Substitute the exact squared step heights h_lambda = 2(c/24 - r_lambda).
inline FPoly specialize_step_heights(const FrobeniusAlgebra& alg, const FPoly& p) {
    FPoly out(p.nvars());
    for (const auto& [dvec, c] : p.terms()) {
        FormalPoly v = substitute(c, [&](Symbol s) -> std::optional<Rational> {
            if (s.kind != Symbol::H) return std::nullopt;
            return Rational(2) * (alg.central_charge / Rational(24) - alg.weights[s.index]);
        });
        out.add_term(dvec, v);
    }
    return out;
}

}  // namespace tqft
}  // namespace moduli

#pragma once

// Stable-graph-sum oracle for twisted volumes:
//
//   V_{g,n}[f](L) = sum_G (1/#Aut G) int prod_e dl_e l_e f(l_e)
//                                    prod_v V_{h(v),k(v)}((l_e), (L_lambda))
//
// Edge integrals are executed exactly by pairing the odd moments m_{2d+1}[f]
// against the monomial expansion of the vertex volumes in the edge
// variables. This route is independent of the twisted topological recursion
// and is compared against it term by term.

#include "moduli/stable_graph.hpp"
#include "moduli/trengine.hpp"

namespace moduli {
namespace graphs {

namespace detail {

// Re-embed p into a polynomial with `next` variables, sending variable i of
// p to slot[i]; repeated slots add exponents (loops).
inline FPoly embed(const FPoly& p, int next, const std::vector<int>& slot) {
    FPoly out(next);
    for (const auto& [d, c] : p.terms()) {
        ExpVec e(next, 0);
        for (int i = 0; i < p.nvars(); ++i) e[slot[i]] += d[i];
        out.add_term(e, c);
    }
    return out;
}

}  // namespace detail

inline FPoly graph_sum_volume(int g, int n, const tr::VolumeTable& base,
                              const kernels::KernelFamily& fam, const kernels::MomentSpec& f) {
    tr::require_stable(g, n);
    FPoly total(n);
    for (const StableGraph& G : enumerate(g, n)) {
        const int E = G.num_edges();
        const int ext = n + E;

        // Product of vertex volumes over leaf variables 0..n-1 and edge
        // variables n..n+E-1.
        FPoly prod = FPoly::constant(ext, RingTraits<FormalPoly>::one());
        for (int v = 0; v < G.num_vertices(); ++v) {
            std::vector<int> slot;
            for (int e = 0; e < E; ++e) {
                if (G.edges[e].first == v) slot.push_back(n + e);
                if (G.edges[e].second == v) slot.push_back(n + e);
            }
            for (int label : G.leaves[v]) slot.push_back(label - 1);
            Poly vol = base.volume(G.genus[v], static_cast<int>(slot.size()), fam);
            prod = prod * detail::embed(promote(vol), ext, slot);
        }

        // Contract each edge variable against the odd moments of f.
        FPoly contracted(n);
        for (const auto& [d, c] : prod.terms()) {
            FormalPoly w = c;
            for (int e = 0; e < E; ++e) w *= f.odd_moment(d[n + e]);
            if (w.is_zero()) continue;
            ExpVec lead(d.begin(), d.begin() + n);
            contracted.add_term(lead, w);
        }
        contracted /= Rational(G.aut);
        total += contracted;
    }
    return total;
}

}  // namespace graphs
}  // namespace moduli

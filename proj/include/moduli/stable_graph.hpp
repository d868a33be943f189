#pragma once

// Stable graphs of type (g,n): genus-decorated connected multigraphs (loops
// allowed) with n labeled leaves, satisfying the genus condition
// g = sum h(v) + b1 and per-vertex stability 2h(v) - 2 + k(v) > 0.
// Enumeration is brute force over vertex data and edge multisets with
// canonical-form deduplication; targets are tiny (2g - 2 + n <= 4).

#include "moduli/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace moduli {
namespace graphs {

struct StableGraph {
    int g = 0, n = 0;
    std::vector<int> genus;                  // per vertex
    std::vector<std::vector<int>> leaves;    // sorted leaf labels (1..n) per vertex
    std::vector<std::pair<int, int>> edges;  // sorted pairs (v <= w); loops v == w
    long long aut = 1;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int degree(int v) const {
        int d = 0;
        for (auto [a, b] : edges) d += (a == v) + (b == v);
        return d;
    }
    int valency(int v) const { return degree(v) + static_cast<int>(leaves[v].size()); }
    int loops_at(int v) const {
        int d = 0;
        for (auto [a, b] : edges) d += (a == v && b == v);
        return d;
    }

    bool connected() const {
        int V = num_vertices();
        std::vector<int> comp(V);
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
        for (auto [a, b] : edges) comp[find(a)] = find(b);
        for (int v = 1; v < V; ++v)
            if (find(v) != find(0)) return false;
        return true;
    }

    int betti() const { return num_edges() - num_vertices() + 1; }

    bool valid() const {
        if (!connected()) return false;
        int hsum = std::accumulate(genus.begin(), genus.end(), 0);
        if (hsum + betti() != g) return false;
        for (int v = 0; v < num_vertices(); ++v) {
            if (genus[v] < 0) return false;
            if (2 * genus[v] - 2 + valency(v) <= 0) return false;
        }
        std::vector<int> all;
        for (const auto& ls : leaves) all.insert(all.end(), ls.begin(), ls.end());
        std::sort(all.begin(), all.end());
        std::vector<int> expect(n);
        std::iota(expect.begin(), expect.end(), 1);
        return all == expect;
    }

    // Encoding used for canonical form and isomorphism tests.
    std::vector<int> encode() const {
        std::vector<int> out;
        out.insert(out.end(), genus.begin(), genus.end());
        out.push_back(-1);
        for (const auto& ls : leaves) {
            out.insert(out.end(), ls.begin(), ls.end());
            out.push_back(-2);
        }
        auto es = edges;
        std::sort(es.begin(), es.end());
        for (auto [a, b] : es) {
            out.push_back(a);
            out.push_back(b);
        }
        return out;
    }

    StableGraph relabeled(const std::vector<int>& perm) const {
        StableGraph out = *this;
        for (int v = 0; v < num_vertices(); ++v) {
            out.genus[perm[v]] = genus[v];
            out.leaves[perm[v]] = leaves[v];
        }
        for (auto& [a, b] : out.edges) {
            a = perm[a];
            b = perm[b];
            if (a > b) std::swap(a, b);
        }
        std::sort(out.edges.begin(), out.edges.end());
        return out;
    }

    void canonicalize() {
        int V = num_vertices();
        std::vector<int> perm(V);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best = encode();
        StableGraph bestg = *this;
        while (std::next_permutation(perm.begin(), perm.end())) {
            StableGraph cand = relabeled(perm);
            auto enc = cand.encode();
            if (enc < best) {
                best = enc;
                bestg = cand;
            }
        }
        *this = bestg;
        std::sort(edges.begin(), edges.end());
    }

    // Automorphisms fix every leaf label and preserve genus; parallel edges
    // may be permuted and each loop's half-edges swapped.
    long long compute_aut() const {
        int V = num_vertices();
        std::vector<int> perm(V);
        std::iota(perm.begin(), perm.end(), 0);
        auto self = encode();
        long long vertex_perms = 0;
        do {
            bool ok = true;
            for (int v = 0; v < V && ok; ++v)
                ok = genus[perm[v]] == genus[v] && leaves[perm[v]] == leaves[v];
            if (ok && relabeled(perm).encode() == self) ++vertex_perms;
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::map<std::pair<int, int>, int> mult;
        for (auto e : edges) ++mult[e];
        long long halfedge_factor = 1;
        for (const auto& [e, m] : mult) {
            for (int i = 2; i <= m; ++i) halfedge_factor *= i;  // permute parallel edges
            if (e.first == e.second)
                for (int i = 0; i < m; ++i) halfedge_factor *= 2;  // flip each loop
        }
        return vertex_perms * halfedge_factor;
    }
};

namespace detail {

inline void edge_multisets(const std::vector<std::pair<int, int>>& pairs, int count, std::size_t from,
                           std::vector<std::pair<int, int>>& current,
                           std::vector<std::vector<std::pair<int, int>>>& out) {
    if (count == 0) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
        current.push_back(pairs[i]);
        edge_multisets(pairs, count - 1, i, current, out);
        current.pop_back();
    }
}

}  // namespace detail

// Complete duplicate-free list of stable graphs of type (g,n), each with
// |Aut| computed.
inline std::vector<StableGraph> enumerate(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type");
    std::map<std::vector<int>, StableGraph> seen;

    const int maxV = 2 * g - 2 + n;
    for (int V = 1; V <= maxV; ++V) {
        // genus assignments
        std::vector<int> h(V, 0);
        std::function<void(int, int)> genera = [&](int pos, int remaining) {
            if (pos == V) {
                int E = g - std::accumulate(h.begin(), h.end(), 0) + V - 1;
                if (E < 0 || E > 3 * g - 3 + n) return;

                std::vector<std::pair<int, int>> pairs;
                for (int a = 0; a < V; ++a)
                    for (int b = a; b < V; ++b) pairs.emplace_back(a, b);
                std::vector<std::vector<std::pair<int, int>>> multisets;
                std::vector<std::pair<int, int>> cur;
                detail::edge_multisets(pairs, E, 0, cur, multisets);

                std::vector<int> assign(n, 0);
                std::function<void(int)> place = [&](int label) {
                    if (label == n) {
                        for (const auto& es : multisets) {
                            StableGraph G;
                            G.g = g;
                            G.n = n;
                            G.genus = h;
                            G.leaves.assign(V, {});
                            for (int l = 0; l < n; ++l) G.leaves[assign[l]].push_back(l + 1);
                            G.edges = es;
                            if (!G.valid()) continue;
                            G.canonicalize();
                            auto key = G.encode();
                            if (seen.count(key)) continue;
                            G.aut = G.compute_aut();
                            seen.emplace(std::move(key), std::move(G));
                        }
                        return;
                    }
                    for (int v = 0; v < V; ++v) {
                        assign[label] = v;
                        place(label + 1);
                    }
                };
                place(0);
            } else {
                for (int hv = 0; hv <= remaining; ++hv) {
                    h[pos] = hv;
                    genera(pos + 1, remaining - hv);
                }
                h[pos] = 0;
            }
        };
        genera(0, g);
    }

    std::vector<StableGraph> out;
    out.reserve(seen.size());
    for (auto& [k, G] : seen) out.push_back(std::move(G));
    return out;
}

inline nlohmann::json graph_to_json(const StableGraph& G) {
    nlohmann::json j;
    j["g"] = G.g;
    j["n"] = G.n;
    auto verts = nlohmann::json::array();
    for (int v = 0; v < G.num_vertices(); ++v)
        verts.push_back({{"genus", G.genus[v]}, {"leaves", G.leaves[v]}});
    j["vertices"] = verts;
    auto es = nlohmann::json::array();
    for (auto [a, b] : G.edges) es.push_back({a, b});
    j["edges"] = es;
    j["aut"] = G.aut;
    return j;
}

}  // namespace graphs
}  // namespace moduli

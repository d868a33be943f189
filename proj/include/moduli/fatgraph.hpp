#pragma once

// Rooted uni-trivalent fatgraphs of type (g,n): n univalent vertices (one
// marked as root), 2g-2+n trivalent vertices carrying cyclic orders, first
// Betti number g. Each graph determines a pants decomposition of a genus-g
// surface with n boundary components; the canonical spanning tree and the
// excision type map (A / B / C / D) are derived by face traversal.
//
// Enumeration fixes the cyclic orders to a standard form (half-edges 3i,
// 3i+1, 3i+2 around trivalent vertex i) and runs over edge matchings; every
// isomorphism class has such a representative. Root-preserving isomorphism
// classes are separated by a canonical relabeling grown from the root, which
// is unique because a connected fatgraph has no automorphism fixing a
// half-edge.

#include "moduli/frobenius.hpp"

#include <array>
#include <deque>
#include <optional>

namespace moduli {
namespace tqft {

struct Fatgraph {
    int g = 0, n = 0;
    // half-edges 0..H-1; trivalent vertex i owns {3i, 3i+1, 3i+2} with that
    // cyclic order; univalent vertices own single half-edges 3T..3T+n-1.
    std::vector<int> alpha;  // pairing involution (edges)
    int root = 0;            // root half-edge (at the root univalent vertex)

    int trivalent() const { return 2 * g - 2 + n; }
    int half_edges() const { return 3 * trivalent() + n; }
    int vertex_of(int h) const {
        int T = trivalent();
        return h < 3 * T ? h / 3 : T + (h - 3 * T);
    }
    bool is_univalent_halfedge(int h) const { return h >= 3 * trivalent(); }
    // next half-edge in the cyclic order at the same vertex
    int sigma(int h) const {
        if (is_univalent_halfedge(h)) return h;
        return 3 * (h / 3) + (h % 3 + 1) % 3;
    }

    int num_edges() const { return half_edges() / 2; }
    int num_vertices() const { return trivalent() + n; }
    int betti() const { return num_edges() - num_vertices() + 1; }

    bool connected() const {
        std::vector<char> seen(half_edges(), 0);
        std::deque<int> q{root};
        seen[root] = 1;
        int count = 0;
        while (!q.empty()) {
            int h = q.front();
            q.pop_front();
            ++count;
            for (int to : {alpha[h], sigma(h)})
                if (!seen[to]) {
                    seen[to] = 1;
                    q.push_back(to);
                }
        }
        return count == half_edges();
    }

    // Canonical key under root-preserving isomorphism: relabel half-edges in
    // deterministic traversal order from the root and encode alpha.
    std::vector<int> canonical_key() const {
        const int H = half_edges();
        std::vector<int> newlab(H, -1);
        int next = 0;
        std::deque<int> q{root};
        newlab[root] = next++;
        while (!q.empty()) {
            int h = q.front();
            q.pop_front();
            for (int to : {alpha[h], sigma(h)})
                if (newlab[to] < 0) {
                    newlab[to] = next++;
                    q.push_back(to);
                }
        }
        // Encode both structure maps in canonical labels; equal keys are
        // exactly root-preserving isomorphism.
        std::vector<int> key(2 * H, -1);
        for (int h = 0; h < H; ++h) {
            key[2 * newlab[h]] = newlab[alpha[h]];
            key[2 * newlab[h] + 1] = newlab[sigma(h)];
        }
        return key;
    }
};

// All rooted fatgraphs of type (g,n) up to root-preserving isomorphism.
// `reversed` flips the matching generation order; both orders must produce
// the same set (used as a self-check).
inline std::vector<Fatgraph> fatgraph_enumerate(int g, int n, bool reversed = false) {
    if (g < 0 || n < 1 || 2 * g - 2 + n < 1) throw std::invalid_argument("need 2g-2+n >= 1");
    Fatgraph proto;
    proto.g = g;
    proto.n = n;
    const int H = proto.half_edges();
    proto.alpha.assign(H, -1);
    proto.root = 3 * proto.trivalent();

    std::map<std::vector<int>, Fatgraph> seen;
    std::vector<int> alpha(H, -1);

    std::function<void()> rec = [&]() {
        int h = -1;
        for (int i = 0; i < H; ++i)
            if (alpha[i] < 0) { h = i; break; }
        if (h < 0) {
            Fatgraph G = proto;
            G.alpha = alpha;
            if (G.betti() != g || !G.connected()) return;
            seen.emplace(G.canonical_key(), G);
            return;
        }
        std::vector<int> partners;
        for (int to = h + 1; to < H; ++to)
            if (alpha[to] < 0) partners.push_back(to);
        if (reversed) std::reverse(partners.begin(), partners.end());
        for (int to : partners) {
            alpha[h] = to;
            alpha[to] = h;
            rec();
            alpha[h] = alpha[to] = -1;
        }
    };
    rec();

    std::vector<Fatgraph> out;
    out.reserve(seen.size());
    for (auto& [k, G] : seen) out.push_back(std::move(G));
    return out;
}

// ---------------------------------------------------------------------------
// Canonical spanning tree by face traversal and the excision type map.

struct FatgraphStructure {
    std::vector<std::pair<int, int>> tree_edges;  // as half-edge pairs (h, alpha(h))
    std::vector<int> pants_order;                 // trivalent vertices in excision order
    std::string type_map;                         // one of A,B,C,D per pants
    std::vector<int> b_targets;                   // per pants: second-boundary half-edge, or -1
};

inline FatgraphStructure analyze_fatgraph(const Fatgraph& G) {
    FatgraphStructure out;
    const int H = G.half_edges();
    const int T = G.trivalent();

    // Union-find over vertices for the acyclicity test.
    std::vector<int> comp(G.num_vertices());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };

    std::vector<char> edge_in_tree(H, 0), edge_seen(H, 0);
    auto try_add = [&](int h) {
        int e = std::min(h, G.alpha[h]);
        if (edge_seen[e]) return;
        edge_seen[e] = 1;
        int a = find(G.vertex_of(h)), b = find(G.vertex_of(G.alpha[h]));
        if (a == b) return;  // would close a loop
        comp[a] = b;
        edge_in_tree[e] = 1;
        out.tree_edges.emplace_back(e, G.alpha[e]);
    };

    // Walk the face starting at the root direction; jump to unexplored faces
    // across the first available edge, repeating until all edges were seen.
    std::vector<char> dart_visited(H, 0);
    std::deque<int> pending{G.root};
    while (!pending.empty()) {
        int start = pending.front();
        pending.pop_front();
        if (dart_visited[start]) continue;
        int h = start;
        do {
            dart_visited[h] = 1;
            try_add(h);
            if (!dart_visited[G.alpha[h]]) pending.push_back(G.alpha[h]);
            h = G.sigma(G.alpha[h]);  // next dart along the face
        } while (h != start);
    }

    // Excision order: simulate the nested removal of pants, always cutting
    // at the current distinguished boundary. A B excision hands the
    // distinguished role to its glued cuff; a C excision hands it to the
    // first glued cuff, plus the second when the cut separates.
    std::vector<char> excised(G.num_vertices(), 0);
    auto connected_in_rest = [&](int va, int vb) {
        if (va == vb) return true;
        std::vector<char> seen(G.num_vertices(), 0);
        std::deque<int> q{va};
        seen[va] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (v == vb) return true;
            for (int s = 0; s < 3; ++s) {
                if (v >= T) break;
                int w = G.vertex_of(G.alpha[3 * v + s]);
                if (w < T && !excised[w] && !seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
            }
        }
        return false;
    };

    std::vector<int> stack{G.alpha[G.root]};  // darts into the next pants
    while (!stack.empty()) {
        int h = stack.back();
        stack.pop_back();
        int v = G.vertex_of(h);
        if (v >= T || excised[v]) throw std::logic_error("bad excision dart");

        bool has_loop = false;
        std::vector<int> boundary_cuffs, interior_cuffs;
        for (int s = 0; s < 3; ++s) {
            int cuff = 3 * v + s;
            int w = G.vertex_of(G.alpha[cuff]);
            if (w == v) has_loop = true;
            else if (w >= T || excised[w]) boundary_cuffs.push_back(cuff);
            else interior_cuffs.push_back(cuff);
        }
        char type;
        int target = -1;
        excised[v] = 1;
        if (has_loop) {
            type = 'D';
        } else if (interior_cuffs.empty()) {
            type = 'A';
        } else if (interior_cuffs.size() == 1) {
            type = 'B';
            for (int cuff : boundary_cuffs)
                if (cuff != h) target = cuff;  // the second boundary
            if (target < 0) throw std::logic_error("B excision without a second boundary");
            stack.push_back(G.alpha[interior_cuffs[0]]);
        } else {
            type = 'C';
            int va = G.vertex_of(G.alpha[interior_cuffs[0]]);
            int vb = G.vertex_of(G.alpha[interior_cuffs[1]]);
            if (!connected_in_rest(va, vb)) stack.push_back(G.alpha[interior_cuffs[1]]);
            stack.push_back(G.alpha[interior_cuffs[0]]);
        }
        out.pants_order.push_back(v);
        out.type_map.push_back(type);
        out.b_targets.push_back(target);
    }
    if (static_cast<int>(out.pants_order.size()) != T)
        throw std::logic_error("excision did not exhaust the pants");
    return out;
}

// ---------------------------------------------------------------------------
// Strict GR amplitude as a sum of per-fatgraph contractions. Each graph's
// contraction follows its pants decomposition, so for a Frobenius algebra it
// equals #G^{g,n}_1 * F_{g,n}.

inline Tensor contract_fatgraph(const FrobeniusAlgebra& alg, const Fatgraph& G) {
    const int T = G.trivalent(), d = alg.dim;
    auto etainv = alg.eta_inverse();

    // Boundary slots ordered with the root first, then the remaining
    // univalent half-edges in label order.
    std::vector<int> boundary_halfedge{G.root};
    for (int h = 3 * T; h < G.half_edges(); ++h)
        if (h != G.root) boundary_halfedge.push_back(h);

    // Internal darts (both ends trivalent), paired once.
    std::vector<std::pair<int, int>> internal;
    for (int h = 0; h < 3 * T; ++h)
        if (G.alpha[h] < 3 * T && h < G.alpha[h]) internal.emplace_back(h, G.alpha[h]);

    Tensor out;
    std::vector<int> leaf(G.n, 0), side(2 * internal.size(), 0);
    std::vector<int> label_of_halfedge(G.half_edges(), -1);

    std::function<void(std::size_t)> loop_internal = [&](std::size_t idx) {
        if (idx == internal.size()) {
            for (int i = 0; i < G.n; ++i) label_of_halfedge[G.alpha[boundary_halfedge[i]]] = leaf[i];
            Rational w(1);
            for (std::size_t e = 0; e < internal.size() && w != 0; ++e) {
                w *= etainv[side[2 * e]][side[2 * e + 1]];
                label_of_halfedge[internal[e].first] = side[2 * e];
                label_of_halfedge[internal[e].second] = side[2 * e + 1];
            }
            for (int v = 0; v < T && w != 0; ++v)
                w *= alg.mu(label_of_halfedge[3 * v], label_of_halfedge[3 * v + 1],
                            label_of_halfedge[3 * v + 2]);
            if (w != 0) {
                out[leaf] += w;
                if (out[leaf] == 0) out.erase(leaf);
            }
            return;
        }
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                side[2 * idx] = x;
                side[2 * idx + 1] = y;
                loop_internal(idx + 1);
            }
    };
    std::function<void(int)> loop_leaves = [&](int l) {
        if (l == G.n) {
            loop_internal(0);
            return;
        }
        for (int x = 0; x < d; ++x) {
            leaf[l] = x;
            loop_leaves(l + 1);
        }
    };
    loop_leaves(0);
    return out;
}

inline Tensor strict_gr_sum(const FrobeniusAlgebra& alg, int g, int n) {
    Tensor total;
    for (const auto& G : fatgraph_enumerate(g, n)) {
        analyze_fatgraph(G);  // validates tree and type map
        for (const auto& [k, v] : contract_fatgraph(alg, G)) {
            total[k] += v;
            if (total[k] == 0) total.erase(k);
        }
    }
    return total;
}

inline nlohmann::json fatgraph_to_json(const Fatgraph& G) {
    nlohmann::json j;
    j["g"] = G.g;
    j["n"] = G.n;
    j["root"] = G.root;
    auto verts = nlohmann::json::array();
    for (int v = 0; v < G.trivalent(); ++v) verts.push_back({3 * v, 3 * v + 1, 3 * v + 2});
    j["vertex_cycles"] = verts;
    j["alpha"] = G.alpha;
    auto st = analyze_fatgraph(G);
    j["type_map"] = st.type_map;
    j["pants_order"] = st.pants_order;
    j["b_targets"] = st.b_targets;
    auto tree = nlohmann::json::array();
    for (auto [a, b] : st.tree_edges) tree.push_back({a, b});
    j["spanning_tree"] = tree;
    return j;
}

}  // namespace tqft
}  // namespace moduli

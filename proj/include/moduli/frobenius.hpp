#pragma once

// Frobenius algebras with optional modular data, 2d TQFT amplitudes by
// contraction along pants decompositions, Verlinde ranks, and the exact
// fusion-ring rank oracle. su(2)_k data is bundled as a constructor; user
// data loads from JSON ({"labels", "dagger", "S", "weights", "c"} with
// rationals as "p/q" strings where exactness matters).

#include "moduli/stable_graph.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace moduli {
namespace tqft {

struct FrobeniusAlgebra {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<int> dagger;                            // involution on basis indices
    std::vector<std::vector<Rational>> eta;             // pairing <e_a, e_b>
    std::vector<std::vector<std::vector<Rational>>> N;  // e_a e_b = sum_c N[a][b][c] e_c

    bool has_modular = false;
    std::vector<std::vector<double>> S;
    std::vector<Rational> weights;  // conformal weights r_lambda
    Rational central_charge;

    // mu_{abc} = <e_a e_b, e_c>
    Rational mu(int a, int b, int c) const {
        Rational out(0);
        for (int d = 0; d < dim; ++d) out += N[a][b][d] * eta[d][c];
        return out;
    }

    std::vector<std::vector<Rational>> eta_inverse() const {
        // Gaussian elimination over Q.
        int d = dim;
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(2 * d, Rational(0)));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) m[i][j] = eta[i][j];
            m[i][d + i] = 1;
        }
        for (int col = 0; col < d; ++col) {
            int piv = -1;
            for (int r = col; r < d; ++r)
                if (m[r][col] != 0) { piv = r; break; }
            if (piv < 0) throw std::invalid_argument("pairing matrix is singular");
            std::swap(m[col], m[piv]);
            Rational inv = Rational(1) / m[col][col];
            for (auto& x : m[col]) x *= inv;
            for (int r = 0; r < d; ++r) {
                if (r == col || m[r][col] == 0) continue;
                Rational f = m[r][col];
                for (int j = 0; j < 2 * d; ++j) m[r][j] -= f * m[col][j];
            }
        }
        std::vector<std::vector<Rational>> out(d, std::vector<Rational>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[i][j] = m[i][d + j];
        return out;
    }

    // Exact Frobenius axioms: unit, commutativity, associativity, pairing
    // invariance; with modular data, d(lambda^dagger) = d(lambda).
    void validate() const {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                if (N[0][a][b] != Rational(a == b ? 1 : 0)) throw std::logic_error("unit axiom fails");
                for (int c = 0; c < dim; ++c) {
                    if (N[a][b][c] != N[b][a][c]) throw std::logic_error("product not commutative");
                    // <ab, c> = <a, bc>
                    Rational lhs(0), rhs(0);
                    for (int x = 0; x < dim; ++x) {
                        lhs += N[a][b][x] * eta[x][c];
                        rhs += N[b][c][x] * eta[a][x];
                    }
                    if (lhs != rhs) throw std::logic_error("pairing not invariant");
                    for (int d = 0; d < dim; ++d) {
                        Rational l(0), r(0);
                        for (int x = 0; x < dim; ++x) {
                            l += N[a][b][x] * N[x][c][d];
                            r += N[b][c][x] * N[a][x][d];
                        }
                        if (l != r) throw std::logic_error("product not associative");
                    }
                }
            }
        if (has_modular)
            for (int a = 0; a < dim; ++a)
                if (weights[dagger[a]] != weights[a])
                    throw std::logic_error("weights not dagger-invariant");
    }

    static FrobeniusAlgebra trivial() {
        FrobeniusAlgebra A;
        A.dim = 1;
        A.labels = {"0"};
        A.dagger = {0};
        A.eta = {{Rational(1)}};
        A.N = {{{Rational(1)}}};
        return A;
    }

    // su(2) level k: labels 0..k, fusion N_{ab}^c = 1 iff |a-b| <= c <= min(a+b, 2k-a-b)
    // and a+b+c even; S_{ab} = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2)),
    // r_lambda = lambda(lambda+2)/(4(k+2)), c = 3k/(k+2).
    static FrobeniusAlgebra su2k(int k) {
        if (k < 0) throw std::invalid_argument("level must be nonnegative");
        FrobeniusAlgebra A;
        A.dim = k + 1;
        for (int a = 0; a <= k; ++a) A.labels.push_back(std::to_string(a));
        A.dagger.resize(k + 1);
        for (int a = 0; a <= k; ++a) A.dagger[a] = a;
        A.eta.assign(k + 1, std::vector<Rational>(k + 1, Rational(0)));
        for (int a = 0; a <= k; ++a) A.eta[a][a] = 1;
        A.N.assign(k + 1, std::vector<std::vector<Rational>>(k + 1, std::vector<Rational>(k + 1, Rational(0))));
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k; ++b)
                for (int c = 0; c <= k; ++c)
                    if ((a + b + c) % 2 == 0 && std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b))
                        A.N[a][b][c] = 1;
        A.has_modular = true;
        A.S.assign(k + 1, std::vector<double>(k + 1, 0.0));
        const double pi = std::acos(-1.0);
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k; ++b)
                A.S[a][b] = std::sqrt(2.0 / (k + 2)) * std::sin(pi * (a + 1.0) * (b + 1.0) / (k + 2));
        A.weights.resize(k + 1);
        for (int a = 0; a <= k; ++a) A.weights[a] = Rational(a * (a + 2), 4 * (k + 2));
        A.central_charge = Rational(3 * k, k + 2);
        return A;
    }
};

// ---------------------------------------------------------------------------
// Exact fusion-ring rank oracle:
//   rk Z_{g,n}(lambda) = e_0^T N_{lambda_1} ... N_{lambda_n} H^g e_0,
// with the handle operator H = sum_a N_a N_{a^dagger}.

inline long long fusion_rank(const FrobeniusAlgebra& alg, int g, int n,
                             const std::vector<int>& lam) {
    if (static_cast<int>(lam.size()) != n) throw std::invalid_argument("label count mismatch");
    int d = alg.dim;
    auto matmul = [&](const std::vector<std::vector<Rational>>& A,
                      const std::vector<std::vector<Rational>>& B) {
        std::vector<std::vector<Rational>> C(d, std::vector<Rational>(d, Rational(0)));
        for (int i = 0; i < d; ++i)
            for (int x = 0; x < d; ++x)
                if (A[i][x] != 0)
                    for (int j = 0; j < d; ++j) C[i][j] += A[i][x] * B[x][j];
        return C;
    };
    std::vector<std::vector<Rational>> acc(d, std::vector<Rational>(d, Rational(0)));
    for (int i = 0; i < d; ++i) acc[i][i] = 1;
    for (int x : lam) acc = matmul(acc, alg.N[x]);
    if (g > 0) {
        std::vector<std::vector<Rational>> H(d, std::vector<Rational>(d, Rational(0)));
        for (int a = 0; a < d; ++a) {
            auto prod = matmul(alg.N[a], alg.N[alg.dagger[a]]);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) H[i][j] += prod[i][j];
        }
        for (int i = 0; i < g; ++i) acc = matmul(acc, H);
    }
    Rational r = acc[0][0];
    if (denominator(r) != 1) throw std::logic_error("fusion rank is not an integer");
    return static_cast<long long>(numerator(r));
}

// ---------------------------------------------------------------------------
// Verlinde formula, numeric: rk = sum_mu prod_i Sinv[lam_i][mu] / (Sinv[0][mu])^{2g-2+n}.

struct VerlindeResult {
    long long value;
    double residual;
};

inline std::vector<std::vector<double>> invert_numeric(std::vector<std::vector<double>> m) {
    int d = static_cast<int>(m.size());
    std::vector<std::vector<double>> inv(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col; r < d; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) throw std::invalid_argument("S-matrix is singular");
        std::swap(m[col], m[piv]);
        std::swap(inv[col], inv[piv]);
        double f = m[col][col];
        for (int j = 0; j < d; ++j) { m[col][j] /= f; inv[col][j] /= f; }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            double g = m[r][col];
            for (int j = 0; j < d; ++j) { m[r][j] -= g * m[col][j]; inv[r][j] -= g * inv[col][j]; }
        }
    }
    return inv;
}

inline VerlindeResult verlinde_rank(const FrobeniusAlgebra& alg, int g, int n,
                                    const std::vector<int>& lam, double tol = 1e-8) {
    if (!alg.has_modular) throw std::invalid_argument("no modular data");
    if (static_cast<int>(lam.size()) != n) throw std::invalid_argument("label count mismatch");
    auto Sinv = invert_numeric(alg.S);
    double acc = 0.0;
    for (int mu = 0; mu < alg.dim; ++mu) {
        double prod = 1.0;
        for (int x : lam) prod *= Sinv[x][mu];
        acc += prod / std::pow(Sinv[0][mu], 2 * g - 2 + n);
    }
    long long snapped = std::llround(acc);
    double residual = std::abs(acc - static_cast<double>(snapped));
    if (residual > tol) throw std::runtime_error("Verlinde rank residual above tolerance");
    return {snapped, residual};
}

// ---------------------------------------------------------------------------
// TQFT amplitude F_{g,n}: contract one mu per pants along a decomposition.
// Pants decompositions are the stable graphs with every vertex of genus 0
// and valency 3.

using Tensor = std::map<std::vector<int>, Rational>;  // label vector -> value

inline std::vector<graphs::StableGraph> pants_decompositions(int g, int n) {
    std::vector<graphs::StableGraph> out;
    for (auto& G : graphs::enumerate(g, n)) {
        bool ok = true;
        for (int v = 0; v < G.num_vertices() && ok; ++v)
            ok = G.genus[v] == 0 && G.valency(v) == 3;
        if (ok) out.push_back(G);
    }
    if (out.empty()) throw std::logic_error("no pants decomposition found");
    return out;
}

inline Tensor contract_decomposition(const FrobeniusAlgebra& alg, const graphs::StableGraph& G) {
    const int d = alg.dim, E = G.num_edges(), n = G.n;
    auto etainv = alg.eta_inverse();

    Tensor out;
    std::vector<int> leaf(n, 0), side(2 * E, 0);
    // iterate over all leaf labels and both edge-side labels
    std::function<void(int)> loop_edges = [&](int e2) {
        if (e2 == 2 * E) {
            Rational w(1);
            for (int e = 0; e < E && w != 0; ++e) w *= etainv[side[2 * e]][side[2 * e + 1]];
            if (w == 0) return;
            for (int v = 0; v < G.num_vertices() && w != 0; ++v) {
                std::vector<int> slots;
                for (int e = 0; e < E; ++e) {
                    if (G.edges[e].first == v) slots.push_back(side[2 * e]);
                    if (G.edges[e].second == v) slots.push_back(side[2 * e + 1]);
                }
                for (int l : G.leaves[v]) slots.push_back(leaf[l - 1]);
                w *= alg.mu(slots[0], slots[1], slots[2]);
            }
            if (w == 0) return;
            std::vector<int> key(leaf);
            out[key] += w;
            if (out[key] == 0) out.erase(key);
            return;
        }
        for (int x = 0; x < d; ++x) {
            side[e2] = x;
            loop_edges(e2 + 1);
        }
    };
    std::function<void(int)> loop_leaves = [&](int l) {
        if (l == n) {
            loop_edges(0);
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

// Well-defined independently of the decomposition; checked in the tests.
inline Tensor tqft_amplitude(const FrobeniusAlgebra& alg, int g, int n) {
    if (2 * g - 2 + n <= 0) throw std::invalid_argument("unstable type");
    return contract_decomposition(alg, pants_decompositions(g, n).front());
}

// ---------------------------------------------------------------------------
// Modular-data JSON. Numeric fields accept either JSON numbers or exact
// "p/q" strings; S entries are floats.

inline Rational rat_from_json(const nlohmann::json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw std::invalid_argument("expected integer or \"p/q\" string");
}

inline FrobeniusAlgebra algebra_from_modular_json(const nlohmann::json& j, double snap_tol = 1e-8) {
    FrobeniusAlgebra A;
    A.labels = j.at("labels").get<std::vector<std::string>>();
    A.dim = static_cast<int>(A.labels.size());
    A.dagger = j.at("dagger").get<std::vector<int>>();
    A.S = j.at("S").get<std::vector<std::vector<double>>>();
    A.weights.clear();
    for (const auto& w : j.at("weights")) A.weights.push_back(rat_from_json(w));
    A.central_charge = rat_from_json(j.at("c"));
    A.has_modular = true;

    A.eta.assign(A.dim, std::vector<Rational>(A.dim, Rational(0)));
    for (int a = 0; a < A.dim; ++a) A.eta[a][A.dagger[a]] = 1;

    // Fusion numbers from the Verlinde sum, snapped to integers.
    A.N.assign(A.dim, std::vector<std::vector<Rational>>(A.dim, std::vector<Rational>(A.dim, Rational(0))));
    for (int a = 0; a < A.dim; ++a)
        for (int b = 0; b < A.dim; ++b)
            for (int c = 0; c < A.dim; ++c) {
                double acc = 0.0;
                for (int m = 0; m < A.dim; ++m)
                    acc += A.S[a][m] * A.S[b][m] * A.S[A.dagger[c]][m] / A.S[0][m];
                long long snapped = std::llround(acc);
                if (std::abs(acc - static_cast<double>(snapped)) > snap_tol)
                    throw std::runtime_error("fusion number fails to snap to an integer");
                A.N[a][b][c] = Rational(snapped);
            }
    A.validate();
    return A;
}

inline nlohmann::json modular_json(const FrobeniusAlgebra& A) {
    nlohmann::json j;
    j["labels"] = A.labels;
    j["dagger"] = A.dagger;
    j["S"] = A.S;
    auto ws = nlohmann::json::array();
    for (const auto& w : A.weights) ws.push_back(rat_to_string(w));
    j["weights"] = ws;
    j["c"] = rat_to_string(A.central_charge);
    return j;
}

}  // namespace tqft
}  // namespace moduli

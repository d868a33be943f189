#pragma once

// Tensor view of polynomial-type initial data and the Kontsevich-Soibelman
// recursion on it. The scalars are defined by
//
//   A(L1,L2,L3)     = sum A^i_{j,k} L1^{2i} L2^{2j} L3^{2k}
//   Bhat[l^{2k}]    = sum B^i_{j,k} L1^{2i} L2^{2j}
//   Chat[l^{2j}(l')^{2k}] = sum C^i_{j,k} L1^{2i}
//   VD(L1)          = sum D^i L1^{2i}
//
// so the KS amplitudes F_{g,n}[d] coincide with the monomial coefficients of
// the volume polynomials. Index caps are enforced: a sum that could reach
// entries at or beyond the cap is an error, never a silent truncation.

#include "moduli/trengine.hpp"

#include <array>
#include <tuple>

namespace moduli {
namespace airy {

struct CapExhausted : std::runtime_error {
    explicit CapExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Default index cap for the tensors backing a (g,n) computation: one above
// the degree bound, so cap exhaustion is detectable rather than silent.
inline int default_cap(int g, int n) { return 3 * g - 3 + n + 1; }

template <class C>
struct AiryTensors {
    int cap = 0;
    std::map<std::array<int, 3>, C> A;  // A^i_{j,k}, symmetric in (j,k)
    std::map<std::array<int, 3>, C> B;  // B^i_{j,k}
    std::map<std::array<int, 3>, C> Ct; // C^i_{j,k}, symmetric in (j,k)
    std::map<int, C> D;                 // D^i

    C a(int i, int j, int k) const { return get(A, {i, j, k}); }
    C b(int i, int j, int k) const { return get(B, {i, j, k}); }
    C c(int i, int j, int k) const { return get(Ct, {i, j, k}); }
    C d(int i) const {
        auto it = D.find(i);
        return it == D.end() ? RingTraits<C>::zero() : it->second;
    }

    // Largest upper index with a nonzero entry whose lower indices are both
    // <= bound. Used to certify that contraction sums are complete.
    int max_upper_with_lower_le(const std::map<std::array<int, 3>, C>& t, int bound) const {
        int m = -1;
        for (const auto& [idx, v] : t)
            if (idx[1] <= bound && idx[2] <= bound) m = std::max(m, idx[0]);
        return m;
    }

private:
    static C get(const std::map<std::array<int, 3>, C>& t, std::array<int, 3> idx) {
        auto it = t.find(idx);
        return it == t.end() ? RingTraits<C>::zero() : it->second;
    }
};

template <class C>
AiryTensors<C> airy_tensors(const kernels::KernelMoments<C>& mom, int cap) {
    if (cap < 0) throw std::invalid_argument("cap must be nonnegative");
    AiryTensors<C> t;
    t.cap = cap;
    for (const auto& [d, c] : mom.A().terms())
        if (d[0] <= cap && d[1] <= cap && d[2] <= cap) t.A[{d[0], d[1], d[2]}] = c;
    for (int k = 0; k <= cap; ++k)
        for (const auto& [d, c] : mom.momentB(k).terms())
            if (d[0] <= cap && d[1] <= cap) t.B[{d[0], d[1], k}] = c;
    for (int j = 0; j <= cap; ++j)
        for (int k = j; k <= cap; ++k)
            for (const auto& [d, c] : mom.momentC(j, k).terms())
                if (d[0] <= cap) {
                    t.Ct[{d[0], j, k}] = c;
                    t.Ct[{d[0], k, j}] = c;
                }
    for (const auto& [d, c] : mom.VD().terms())
        if (d[0] <= cap) t.D[d[0]] = c;
    // Declared symmetries must hold by construction.
    for (const auto& [idx, v] : t.A)
        if (t.a(idx[0], idx[2], idx[1]) != v) throw std::logic_error("A tensor not symmetric");
    return t;
}

template <class C>
AiryTensors<C> airy_tensors(const kernels::KernelFamily& fam, int cap) {
    kernels::KernelMoments<C> mom(fam);
    return airy_tensors<C>(mom, cap);
}

// ---------------------------------------------------------------------------
// Lie-compatibility relations. Residuals are exact; an empty list means the
// window passes.

template <class C>
struct AiryResidual {
    int relation;              // 1..6
    std::array<int, 4> index;  // (i,j,k,l); unused slots are -1
    C value;
};

template <class C>
std::vector<AiryResidual<C>> check_airy_relations(const AiryTensors<C>& t, int window) {
    if (window > t.cap) throw CapExhausted("window exceeds tensor cap");
    // Certify contraction completeness: the inner tensors must vanish
    // strictly before the cap on the relevant index ranges.
    if (t.max_upper_with_lower_le(t.B, window) >= t.cap ||
        t.max_upper_with_lower_le(t.Ct, window) >= t.cap)
        throw CapExhausted("cap too small to certify complete contraction sums");

    std::vector<AiryResidual<C>> out;
    auto push = [&](int rel, std::array<int, 4> idx, const C& v) {
        if (!(v == RingTraits<C>::zero())) out.push_back({rel, idx, v});
    };
    const int w = window;

    // 1: A^i_{j,k} = A^j_{i,k}
    for (int i = 0; i <= w; ++i)
        for (int j = 0; j <= w; ++j)
            for (int k = 0; k <= w; ++k)
                push(1, {i, j, k, -1}, t.a(i, j, k) - t.a(j, i, k));

    // 2: f^k_{i,j} = B^i_{j,k} - B^j_{i,k} is a definition; its antisymmetry
    // under i<->j is automatic and recorded as relation 2 with zero residual.

    auto rel3 = [&](int i, int j, int k, int l) {
        C acc = RingTraits<C>::zero();
        for (int a = 0; a <= t.cap; ++a) {
            acc += t.b(i, j, a) * t.a(a, k, l);
            acc += t.b(i, k, a) * t.a(j, a, l);
            acc += t.b(i, l, a) * t.a(j, a, k);
        }
        return acc;
    };
    auto rel4 = [&](int i, int j, int k, int l) {
        C acc = RingTraits<C>::zero();
        for (int a = 0; a <= t.cap; ++a) {
            acc += t.b(i, j, a) * t.b(a, k, l);
            acc += t.b(i, k, a) * t.b(j, a, l);
            acc += t.c(i, l, a) * t.a(j, a, k);
        }
        return acc;
    };
    auto rel5 = [&](int i, int j, int k, int l) {
        C acc = RingTraits<C>::zero();
        for (int a = 0; a <= t.cap; ++a) {
            acc += t.b(i, j, a) * t.c(a, k, l);
            acc += t.c(i, k, a) * t.b(j, a, l);
            acc += t.c(i, l, a) * t.b(j, a, k);
        }
        return acc;
    };

    for (int i = 0; i <= w; ++i)
        for (int j = 0; j < i; ++j)  // residuals are antisymmetric in (i,j)
            for (int k = 0; k <= w; ++k)
                for (int l = 0; l <= w; ++l) {
                    push(3, {i, j, k, l}, rel3(i, j, k, l) - rel3(j, i, k, l));
                    push(4, {i, j, k, l}, rel4(i, j, k, l) - rel4(j, i, k, l));
                    push(5, {i, j, k, l}, rel5(i, j, k, l) - rel5(j, i, k, l));
                }

    // 6: sum_a B^i_{j,a} D^a + 1/2 sum_{a,b} C^i_{a,b} A^j_{a,b} = (i<->j)
    auto rel6 = [&](int i, int j) {
        C acc = RingTraits<C>::zero();
        for (const auto& [a, dv] : t.D) acc += t.b(i, j, a) * dv;
        for (const auto& [idx, av] : t.A) {
            if (idx[0] != j) continue;
            C term = t.c(i, idx[1], idx[2]) * av;
            term *= rat(1, 2);
            acc += term;
        }
        return acc;
    };
    for (int i = 0; i <= w; ++i)
        for (int j = 0; j < i; ++j) push(6, {i, j, -1, -1}, rel6(i, j) - rel6(j, i));

    return out;
}

// ---------------------------------------------------------------------------
// Kontsevich-Soibelman recursion on the tensors. F_{g,n}[i_1..i_n] equals the
// coefficient of prod L^{2 i} in V_{g,n}; this is the second route of the
// oracle triangle.

template <class C>
class KSRecursion {
public:
    explicit KSRecursion(const AiryTensors<C>& t) : t_(t) {}

    const std::map<ExpVec, C>& amplitudes(int g, int n) const {
        tr::require_stable(g, n);
        const int deg = 3 * g - 3 + n;
        if (t_.cap < deg)
            throw CapExhausted("index cap " + std::to_string(t_.cap) + " below degree bound " +
                               std::to_string(deg));
        auto key = std::make_pair(g, n);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        std::map<ExpVec, C> table;
        ExpVec idx(n, 0);
        fill(g, n, idx, 0, deg, table);
        return memo_.emplace(key, std::move(table)).first->second;
    }

    C value(int g, int n, const ExpVec& idx) const {
        const auto& tab = amplitudes(g, n);
        auto it = tab.find(idx);
        return it == tab.end() ? RingTraits<C>::zero() : it->second;
    }

private:
    void fill(int g, int n, ExpVec& idx, int pos, int budget, std::map<ExpVec, C>& table) const {
        if (pos == n) {
            C v = compute(g, n, idx);
            if (!(v == RingTraits<C>::zero())) table[idx] = v;
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            idx[pos] = v;
            fill(g, n, idx, pos + 1, budget - v, table);
        }
        idx[pos] = 0;
    }

    C lookup(int g, int n, const ExpVec& idx) const {
        int sum = 0;
        for (int v : idx) sum += v;
        if (sum > 3 * g - 3 + n) return RingTraits<C>::zero();
        const auto& tab = amplitudes(g, n);
        auto it = tab.find(idx);
        return it == tab.end() ? RingTraits<C>::zero() : it->second;
    }

    C compute(int g, int n, const ExpVec& idx) const {
        if (g == 0 && n == 3) return t_.a(idx[0], idx[1], idx[2]);
        if (g == 1 && n == 1) return t_.d(idx[0]);

        C out = RingTraits<C>::zero();
        const int i1 = idx[0];
        const Rational half = rat(1, 2);

        // B-terms
        for (int m = 1; m < n; ++m) {
            ExpVec rest;
            for (int i = 1; i < n; ++i)
                if (i != m) rest.push_back(idx[i]);
            int abound = 3 * g - 3 + (n - 1);
            for (int a = 0; a <= abound; ++a) {
                C bv = t_.b(i1, idx[m], a);
                if (bv == RingTraits<C>::zero()) continue;
                ExpVec sub;
                sub.push_back(a);
                sub.insert(sub.end(), rest.begin(), rest.end());
                out += bv * lookup(g, n - 1, sub);
            }
        }

        // C-terms
        int inner_bound = 3 * g - 3 + n;  // safe bound for internal indices
        for (int a = 0; a <= inner_bound; ++a)
            for (int b = 0; b <= inner_bound; ++b) {
                C cv = t_.c(i1, a, b);
                if (cv == RingTraits<C>::zero()) continue;
                C bracket = RingTraits<C>::zero();
                if (tr::stable(g - 1, n + 1)) {
                    ExpVec sub;
                    sub.push_back(a);
                    sub.push_back(b);
                    sub.insert(sub.end(), idx.begin() + 1, idx.end());
                    bracket += lookup(g - 1, n + 1, sub);
                }
                const int rest = n - 1;
                for (int h = 0; h <= g; ++h)
                    for (unsigned mask = 0; mask < (1u << rest); ++mask) {
                        int nj = __builtin_popcount(mask);
                        if (!tr::stable(h, 1 + nj) || !tr::stable(g - h, 1 + rest - nj)) continue;
                        ExpVec ja{a}, jb{b};
                        for (int i = 0; i < rest; ++i)
                            (mask & (1u << i) ? ja : jb).push_back(idx[i + 1]);
                        bracket += lookup(h, 1 + nj, ja) * lookup(g - h, 1 + rest - nj, jb);
                    }
                C term = cv * bracket;
                term *= half;
                out += term;
            }
        return out;
    }

    AiryTensors<C> t_;
    mutable std::map<std::pair<int, int>, std::map<ExpVec, C>> memo_;
};

template <class C>
std::map<ExpVec, C> ks_recursion(const AiryTensors<C>& t, int g, int n) {
    return KSRecursion<C>(t).amplitudes(g, n);
}

}  // namespace airy
}  // namespace moduli

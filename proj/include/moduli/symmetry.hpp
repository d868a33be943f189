#pragma once

// The four integrated symmetry conditions on polynomial-type initial data,
// rewritten through the moment transforms. Conditions 1 and 4 close up
// against the finitely many monomials of A and VD and become genuine
// polynomial identities in (L1..L4) resp. (L1,L2). Conditions 2 and 3 glue
// a kernel into a kernel; their moment form carries two free input indices,
// which are assembled into generating polynomials in (L3,L4) over a finite
// window. The contracted index ranges are finite by the degree structure of
// the transforms, so the windowed identities are exact.

#include "moduli/airy.hpp"

namespace moduli {
namespace sym {

template <class C>
struct SymmetryReport {
    std::array<EvenPoly<C>, 4> residual{EvenPoly<C>(4), EvenPoly<C>(4), EvenPoly<C>(4),
                                        EvenPoly<C>(2)};
    bool all_zero() const {
        for (const auto& r : residual)
            if (!r.is_zero()) return false;
        return true;
    }
};

namespace detail {

// residual := poly - (L1 <-> L2)
template <class C>
EvenPoly<C> antisymmetrize(const EvenPoly<C>& p) {
    std::vector<int> perm(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) perm[i] = i;
    perm[0] = 1;
    perm[1] = 0;
    return p - p.permute_vars(perm);
}

}  // namespace detail

template <class C>
SymmetryReport<C> check_integrated_symmetry(const airy::AiryTensors<C>& t, int window = 3) {
    if (t.max_upper_with_lower_le(t.B, window) >= t.cap ||
        t.max_upper_with_lower_le(t.Ct, window) >= t.cap)
        throw airy::CapExhausted("cap too small for complete glued sums");

    SymmetryReport<C> rep;

    // Condition 1:
    //   int dl l [ B(L1,L2,l) A(l,L3,L4) + B(L1,L3,l) A(L2,l,L4) + B(L1,L4,l) A(L2,l,L3) ]
    {
        EvenPoly<C> lhs(4);
        for (const auto& [ai, av] : t.A) {
            for (const auto& [bi, bv] : t.B) {
                // B(L1,Lx,l) A(...) with l in the stated slot of A
                if (bi[2] == ai[0])  // A(l,L3,L4)
                    lhs.add_term({bi[0], bi[1], ai[1], ai[2]}, bv * av);
                if (bi[2] == ai[1]) {
                    lhs.add_term({bi[0], ai[0], bi[1], ai[2]}, bv * av);  // A(L2,l,L4), B(L1,L3,l)
                    lhs.add_term({bi[0], ai[0], ai[2], bi[1]}, bv * av);  // A(L2,l,L3), B(L1,L4,l)
                }
            }
        }
        rep.residual[0] = detail::antisymmetrize(lhs);
    }

    // Condition 2:
    //   B(L1,L2,l) B(l,L3,L4) + B(L1,L3,l) B(L2,l,L4) + C(L1,L4,l) A(L2,l,L3)
    // with free input indices generated by (L3,L4) over the window.
    {
        EvenPoly<C> lhs(4);
        for (int k = 0; k <= window; ++k)
            for (int l = 0; l <= window; ++l)
                for (int i = 0; i <= t.cap; ++i)
                    for (int j = 0; j <= t.cap; ++j) {
                        C acc = RingTraits<C>::zero();
                        for (int a = 0; a <= t.cap; ++a) {
                            acc += t.b(i, j, a) * t.b(a, k, l);
                            acc += t.b(i, k, a) * t.b(j, a, l);
                            acc += t.c(i, l, a) * t.a(j, a, k);
                        }
                        if (!(acc == RingTraits<C>::zero())) lhs.add_term({i, j, k, l}, acc);
                    }
        rep.residual[1] = detail::antisymmetrize(lhs);
    }

    // Condition 3:
    //   B(L1,L2,l) C(l,L3,L4) + C(L1,L3,l) B(L2,l,L4) + C(L1,L4,l) B(L2,l,L3)
    {
        EvenPoly<C> lhs(4);
        for (int k = 0; k <= window; ++k)
            for (int l = 0; l <= window; ++l)
                for (int i = 0; i <= t.cap; ++i)
                    for (int j = 0; j <= t.cap; ++j) {
                        C acc = RingTraits<C>::zero();
                        for (int a = 0; a <= t.cap; ++a) {
                            acc += t.b(i, j, a) * t.c(a, k, l);
                            acc += t.c(i, k, a) * t.b(j, a, l);
                            acc += t.c(i, l, a) * t.b(j, a, k);
                        }
                        if (!(acc == RingTraits<C>::zero())) lhs.add_term({i, j, k, l}, acc);
                    }
        rep.residual[2] = detail::antisymmetrize(lhs);
    }

    // Condition 4:
    //   int dl l B(L1,L2,l) VD(l) + 1/2 int dl dl' l l' C(L1,l,l') A(L2,l,l')
    {
        EvenPoly<C> lhs(2);
        for (const auto& [a, dv] : t.D)
            for (const auto& [bi, bv] : t.B)
                if (bi[2] == a) lhs.add_term({bi[0], bi[1]}, bv * dv);
        for (const auto& [ai, av] : t.A) {
            for (const auto& [ci, cv] : t.Ct) {
                if (ci[1] != ai[1] || ci[2] != ai[2]) continue;
                C w = cv * av;
                w *= rat(1, 2);
                lhs.add_term({ci[0], ai[0]}, w);
            }
        }
        rep.residual[3] = detail::antisymmetrize(lhs);
    }

    return rep;
}

template <class C>
SymmetryReport<C> check_integrated_symmetry(const kernels::KernelFamily& fam, int window = 3) {
    // Cap chosen so every contracted index range closes strictly below it.
    int cap = 2 * window + 4;
    return check_integrated_symmetry(airy::airy_tensors<C>(fam, cap), window);
}

}  // namespace sym
}  // namespace moduli

#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature. This is the validation oracle
// for the exact moment transforms: it integrates the pointwise kernels
// numerically and never feeds results back into the exact path.

#include "moduli/kernels.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace moduli {
namespace quadrature {

namespace detail {

// K15 nodes/weights on [-1,1]; G7 weights sit at the odd-indexed nodes.
inline constexpr double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double kWk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double kWg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double value, error;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double kres = 0.0, gres = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(c + h * kXgk[i]);
        kres += kWk[i] * v;
        if (i % 2 == 1) gres += kWg[i / 2] * v;
    }
    return {kres * h, std::abs((kres - gres) * h)};
}

// Globally adaptive scheme: repeatedly split the panel with the largest
// error estimate until the total estimate meets the tolerance (with a
// rounding-level relative floor) or the panel budget runs out.
template <class F>
double global_adaptive(const F& f, double a, double b, double abstol) {
    struct Entry {
        double a, b, value, error;
    };
    auto worse = [](const Entry& x, const Entry& y) { return x.error < y.error; };
    std::vector<Entry> heap;
    double total = 0.0, err = 0.0;
    auto push = [&](double lo, double hi) {
        Panel p = gk15(f, lo, hi);
        heap.push_back({lo, hi, p.value, p.error});
        std::push_heap(heap.begin(), heap.end(), worse);
        total += p.value;
        err += p.error;
    };
    push(a, b);
    for (int iter = 0; iter < 4000; ++iter) {
        if (err <= std::max(abstol, 2e-13 * std::abs(total))) return total;
        std::pop_heap(heap.begin(), heap.end(), worse);
        Entry worst = heap.back();
        heap.pop_back();
        total -= worst.value;
        err -= worst.error;
        double m = 0.5 * (worst.a + worst.b);
        push(worst.a, m);
        push(m, worst.b);
    }
    // Recompute the running sums before the final verdict; the incremental
    // updates can drift after many splits.
    total = err = 0.0;
    for (const auto& e : heap) {
        total += e.value;
        err += e.error;
    }
    if (err > std::max(1e3 * abstol, 1e-9 * std::abs(total)))
        throw std::runtime_error("quadrature did not converge");
    return total;
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abstol = 1e-11) {
    if (!(b > a)) return 0.0;
    return detail::global_adaptive(f, a, b, abstol);
}

// Upper cutoff beyond which the exponentially decaying kernels are
// negligible against the requested tolerance.
inline double kernel_cutoff(const kernels::KernelFamily& fam, double scale) {
    double b = fam.base == kernels::KernelFamily::Base::BetaScaled ? to_double(fam.beta) : 1.0;
    double top = scale + 200.0 / std::min(b, 1.0);
    if (fam.base == kernels::KernelFamily::Base::Kontsevich && fam.twists.empty())
        return scale;  // compact support
    for (const auto& f : fam.twists) {
        if (f.kind == kernels::MomentSpec::Kind::Indicator)
            top = std::max(top, scale + to_double(f.param) + 1.0);
        if (f.kind == kernels::MomentSpec::Kind::Exponential)
            top = std::max(top, scale + 200.0 / std::min(to_double(f.param), 1.0));
    }
    return top;
}

// Numerical Bhat[l^{2k}](L1,L2).
inline double oracle_moment_B(const kernels::KernelFamily& fam, int k, double L1, double L2,
                              double abstol = 1e-11) {
    double top = kernel_cutoff(fam, L1 + L2);
    return integrate(
        [&](double ell) { return kernels::eval_B(fam, L1, L2, ell) * std::pow(ell, 2 * k + 1); }, 0.0,
        top, abstol);
}

// Numerical Chat[l^{2j} (l')^{2k}](L1) by iterated adaptive integration. The
// inner domain shrinks with the outer variable following the kernel decay in
// l + l'.
inline double oracle_moment_C(const kernels::KernelFamily& fam, int j, int k, double L1,
                              double abstol = 1e-11) {
    double top = kernel_cutoff(fam, L1);
    bool kontsevich = fam.base == kernels::KernelFamily::Base::Kontsevich && fam.twists.empty();
    auto inner = [&](double ell) {
        double itop = kontsevich ? std::max(0.0, L1 - ell) : std::max(0.0, top - ell);
        if (itop <= 0.0) return 0.0;
        // inner errors are amplified by the outer weight l^{2j+1}
        double itol = abstol / ((std::pow(ell, 2 * j + 1) + 1.0) * 4.0 * top);
        return detail::global_adaptive(
            [&](double ellp) {
                return kernels::eval_C(fam, L1, ell, ellp) * std::pow(ellp, 2 * k + 1);
            },
            0.0, itop, itol);
    };
    return integrate([&](double ell) { return inner(ell) * std::pow(ell, 2 * j + 1); }, 0.0, top,
                     abstol);
}

// Numerical VD(L1) = (1/2) int l C(L1,l,l) dl.
inline double oracle_VD(const kernels::KernelFamily& fam, double L1, double abstol = 1e-11) {
    double top = kernel_cutoff(fam, L1);
    return 0.5 * integrate([&](double ell) { return kernels::eval_C(fam, L1, ell, ell) * ell; }, 0.0,
                           top, abstol);
}

}  // namespace quadrature
}  // namespace moduli

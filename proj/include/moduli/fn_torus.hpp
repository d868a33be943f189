#pragma once

// One-holed torus: Fenchel-Nielsen coordinates (l_gamma, tau), explicit
// SL(2,R) holonomy, the simple-closed-curve spectrum via the trace-triple
// tree, and the Mirzakhani-McShane partial sums.
//
// Holonomy construction: X is diagonal with entries e^{+-l/2} (the curve
// gamma of slope 0/1). Y translates along an axis crossing X's axis
// perpendicularly, with cross-piece sinh(l/2) sinh(m/2) = sqrt(2), composed
// with the twist flow diag(e^{+-tau/2}). This normalization keeps the
// commutator trace at -6 for every (l, tau), so the boundary length is
// constantly 2 arccosh(3) ~ 3.5255. Validation is via the Fricke trace
// identity, the boundary-trace invariant, and Dehn-twist invariance of the
// spectrum.

#include "moduli/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace moduli {
namespace hyp {

struct Mat2 {
    double a, b, c, d;
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const { return {d, -b, -c, a}; }  // unit determinant
};

struct Slope {
    int p, q;  // coprime, normalized with q > 0 or (p,q) = (1,0)
    friend bool operator<(const Slope& a, const Slope& b) {
        return a.p != b.p ? a.p < b.p : a.q < b.q;
    }
    friend bool operator==(const Slope& a, const Slope& b) { return a.p == b.p && a.q == b.q; }
};

inline Slope normalize_slope(int p, int q) {
    if (p == 0 && q == 0) throw std::logic_error("null slope");
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    int g = std::gcd(std::abs(p), std::abs(q));
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return {p, q};
}

struct SpectrumEntry {
    Slope slope;
    double length;
};

class FNTorus {
public:
    FNTorus(double ell, double tau) : ell_(ell), tau_(tau) {
        if (!(ell > 0)) throw std::invalid_argument("FN length must be positive");
        double sh = std::sinh(ell / 2.0);
        double s = std::sqrt(2.0) / sh;
        double c = std::sqrt(1.0 + s * s);
        Mat2 y0{c, s, s, c};
        Mat2 dt{std::exp(tau / 2.0), 0.0, 0.0, std::exp(-tau / 2.0)};
        x_ = Mat2{std::exp(ell / 2.0), 0.0, 0.0, std::exp(-ell / 2.0)};
        y_ = dt * y0;
    }

    double fn_length() const { return ell_; }
    double fn_twist() const { return tau_; }
    const Mat2& X() const { return x_; }
    const Mat2& Y() const { return y_; }

    double commutator_trace() const {
        Mat2 k = x_ * y_ * x_.inverse() * y_.inverse();
        return k.trace();
    }
    // 2 cosh(L/2) = |tr[X,Y]|, tr[X,Y] <= -2
    double boundary_length() const {
        double t = std::abs(commutator_trace());
        return 2.0 * std::acosh(t / 2.0);
    }
    // tr^2 X + tr^2 Y + tr^2(XY) - trX trY tr(XY) - 2 - tr[X,Y]
    double fricke_residual() const {
        double x = x_.trace(), y = y_.trace(), z = (x_ * y_).trace();
        return x * x + y * y + z * z - x * y * z - 2.0 - commutator_trace();
    }

    // Every unoriented simple closed curve of length <= cutoff, exactly once,
    // ordered by length. Traces are generated by the triple moves
    // (x,y,z) -> (x,z,xz-y) etc. rooted at (trX, trY, trXY).
    std::vector<SpectrumEntry> spectrum(double cutoff) const {
        std::vector<SpectrumEntry> out;
        if (!(cutoff > 0)) return out;
        const double trace_cut = 2.0 * std::cosh(cutoff / 2.0);

        struct Node {
            Slope s[3];
            double t[3];
        };
        Node root;
        root.s[0] = {0, 1};
        root.t[0] = x_.trace();
        root.s[1] = {1, 0};
        root.t[1] = y_.trace();
        root.s[2] = {1, 1};
        root.t[2] = (x_ * y_).trace();

        std::map<Slope, double> found;
        auto record = [&](const Slope& s, double t) {
            if (t <= 2.0) throw std::runtime_error("degenerate holonomy: non-hyperbolic trace");
            auto it = found.find(s);
            if (it == found.end()) found[s] = t;
        };
        for (int i = 0; i < 3; ++i) record(root.s[i], root.t[i]);

        auto key_of = [](const Node& nd) {
            std::array<Slope, 3> k{nd.s[0], nd.s[1], nd.s[2]};
            std::sort(k.begin(), k.end());
            return k;
        };
        std::set<std::array<Slope, 3>> visited;
        visited.insert(key_of(root));
        std::deque<Node> queue{root};

        std::size_t expanded = 0;
        while (!queue.empty()) {
            Node nd = queue.front();
            queue.pop_front();
            if (++expanded > 4'000'000) throw std::runtime_error("spectrum enumeration overran");
            for (int i = 0; i < 3; ++i) {
                int j = (i + 1) % 3, k = (i + 2) % 3;
                double nt = nd.t[j] * nd.t[k] - nd.t[i];
                // Keep descending while traces can still shrink or stay in range.
                if (nt > trace_cut && nt > nd.t[i]) continue;
                Node child = nd;
                // Slopes are +- classes: the flipped vertex is s_j + s_k or
                // s_j - s_k, whichever differs from the replaced one.
                Slope cand1 = normalize_slope(nd.s[j].p + nd.s[k].p, nd.s[j].q + nd.s[k].q);
                Slope cand2 = normalize_slope(nd.s[j].p - nd.s[k].p, nd.s[j].q - nd.s[k].q);
                child.s[i] = cand1 == nd.s[i] ? cand2 : cand1;
                child.t[i] = nt;
                auto key = key_of(child);
                if (!visited.insert(key).second) continue;
                record(child.s[i], nt);
                queue.push_back(child);
            }
        }

        for (const auto& [s, t] : found) {
            double len = 2.0 * std::acosh(t / 2.0);
            if (len <= cutoff) out.push_back({s, len});
        }
        std::sort(out.begin(), out.end(),
                  [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.length < b.length; });
        return out;
    }

    // Trace of the slope-(p,q) curve from its Christoffel word in the
    // generators; independent oracle for the tree enumeration.
    double christoffel_trace(int p, int q) const {
        Slope s = normalize_slope(p, q);
        Mat2 ygen = s.p >= 0 ? y_ : y_.inverse();
        int pp = std::abs(s.p), qq = s.q;
        if (pp == 0) return x_.trace();
        if (qq == 0) return y_.trace();
        Mat2 acc{1, 0, 0, 1};
        int total = pp + qq;
        for (int i = 1; i <= total; ++i) {
            long long cur = static_cast<long long>(i) * pp / total;
            long long prev = static_cast<long long>(i - 1) * pp / total;
            acc = acc * (cur > prev ? ygen : x_);
        }
        return std::abs(acc.trace());
    }

    // Partial sums of sum_{l(gamma) <= cutoff} C^M(L, l, l), which converge
    // to the constant function 1.
    std::vector<std::pair<double, double>> mcshane_partial_sums(
        double cutoff, const kernels::KernelFamily& fam = kernels::KernelFamily::mirzakhani()) const {
        std::vector<std::pair<double, double>> out;
        double L = boundary_length();
        double acc = 0.0;
        for (const auto& e : spectrum(cutoff)) {
            acc += kernels::eval_C(fam, L, e.length, e.length);
            out.emplace_back(e.length, acc);
        }
        return out;
    }

    double mcshane_sum(double cutoff,
                       const kernels::KernelFamily& fam = kernels::KernelFamily::mirzakhani()) const {
        auto sums = mcshane_partial_sums(cutoff, fam);
        return sums.empty() ? 0.0 : sums.back().second;
    }

private:
    double ell_, tau_;
    Mat2 x_, y_;
};

}  // namespace hyp
}  // namespace moduli

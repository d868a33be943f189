// Acceptance suite: one PASS/FAIL line per criterion, every tolerance pinned
// in code. Exits nonzero if any criterion fails.

#include "moduli/moduli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace moduli;
using kernels::KernelFamily;
using kernels::MomentSpec;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& note = "") {
    std::printf("criterion %2d [%s] %s%s\n", number, pass ? "PASS" : "FAIL", name.c_str(),
                note.empty() ? "" : ("  -- " + note).c_str());
    if (!pass) ++failures;
}

const double kPi2 = std::acos(-1.0) * std::acos(-1.0);

bool timed(const std::function<bool()>& body, double limit_seconds, std::string& note) {
    auto start = std::chrono::steady_clock::now();
    bool ok = body();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2fs (limit %.0fs)", secs, limit_seconds);
    note = buf;
    if (secs > limit_seconds) return false;
    return ok;
}

std::vector<std::pair<int, int>> cells_up_to(int max_complexity) {
    std::vector<std::pair<int, int>> out;
    for (int c = 1; c <= max_complexity; ++c)
        for (int g = 0; 2 * g <= c + 2; ++g) {
            int n = c + 2 - 2 * g;
            if (n >= 1 && tr::stable(g, n)) out.emplace_back(g, n);
        }
    return out;
}

}  // namespace

int main() {
    auto M = KernelFamily::mirzakhani();
    auto K = KernelFamily::kontsevich();
    tr::VolumeTable table;
    std::string note;

    // 1 -- exact base cases
    {
        bool ok = timed(
            [&] {
                Poly v11(1);
                v11.add_term({0}, CoeffElem::pi2_power(1, rat(1, 12)));
                v11.add_term({1}, CoeffElem(rat(1, 48)));
                Poly v11k(1);
                v11k.add_term({1}, CoeffElem(rat(1, 48)));
                return table.volume(0, 3, M) == Poly::constant(3, CoeffElem::one()) &&
                       table.volume(1, 1, M) == v11 && table.volume(1, 1, K) == v11k;
            },
            1.0, note);
        report(1, "exact base cases", ok, note);
    }

    // 2 -- moment transforms vs adaptive quadrature
    {
        bool ok = timed(
            [&] {
                const std::vector<std::pair<double, double>> pts = {
                    {1, 1}, {2, 1}, {0.5, 3}, {3, 2.5}, {7.0 / 3, 1.0 / 3}, {1.5, 0.25},
                    {4, 4}, {0.2, 0.8}, {5, 1}, {2.5, 2.5}, {1, 6}};
                for (auto fam : {M, K}) {
                    kernels::KernelMoments<CoeffElem> mom(fam);
                    for (int k = 0; k <= 4; ++k)
                        for (auto [a, b] : pts) {
                            double exact = eval_real(mom.momentB(k), {a, b}, kPi2);
                            double orac = quadrature::oracle_moment_B(fam, k, a, b);
                            if (std::abs(exact - orac) > 1e-9 * std::max(1.0, std::abs(exact)))
                                return false;
                        }
                    for (int j = 0; j <= 4; ++j)
                        for (int k = 0; j + k <= 4; ++k)
                            for (auto [a, b] : pts) {
                                (void)b;
                                double exact = eval_real(mom.momentC(j, k), {a}, kPi2);
                                double orac = quadrature::oracle_moment_C(fam, j, k, a);
                                if (std::abs(exact - orac) > 1e-9 * std::max(1.0, std::abs(exact)))
                                    return false;
                            }
                }
                return true;
            },
            60.0, note);
        report(2, "moment transforms agree with quadrature (rel 1e-9)", ok, note);
    }

    // 3 -- oracle triangle
    {
        bool ok = timed(
            [&] {
                for (auto fam : {M, K}) {
                    auto tensors = airy::airy_tensors<CoeffElem>(fam, 7);
                    airy::KSRecursion<CoeffElem> ks(tensors);
                    for (auto [g, n] : cells_up_to(3)) {
                        Poly v = table.volume(g, n, fam);
                        const auto& F = ks.amplitudes(g, n);
                        if (F.size() != v.terms().size()) return false;
                        for (const auto& [d, c] : v.terms()) {
                            auto it = F.find(d);
                            if (it == F.end() || !(it->second == c)) return false;
                        }
                        FPoly tw = tr::twisted_volume(g, n, fam, MomentSpec::formal());
                        FPoly gs = graphs::graph_sum_volume(g, n, table, fam, MomentSpec::formal());
                        if (!(tw == gs)) return false;
                    }
                }
                return true;
            },
            120.0, note);
        report(3, "oracle triangle exact (KS == volumes; graph sum == twisted)", ok, note);
    }

    // 4 -- Airy relations and mutation detection
    {
        bool ok = timed(
            [&] {
                for (auto fam : {M, K}) {
                    auto t = airy::airy_tensors<CoeffElem>(fam, 10);
                    if (!airy::check_airy_relations(t, 3).empty()) return false;
                    auto mut = t;
                    mut.B[{1, 1, 1}] += CoeffElem::one();
                    if (airy::check_airy_relations(mut, 3).empty()) return false;
                }
                return true;
            },
            60.0, note);
        report(4, "six relation families exact on window 3; mutations detected", ok, note);
    }

    // 5 -- scaling and limit laws
    {
        bool ok = timed(
            [&] {
                for (auto [g, n] : cells_up_to(4)) {
                    Poly vm = table.volume(g, n, M);
                    // agreement at 5 rational beta pins the bounded-degree
                    // Laurent dependence on beta exactly
                    for (auto b : {rat(2), rat(3), rat(1, 2), rat(7, 3), rat(5)}) {
                        Poly lhs = tr::volume(g, n, KernelFamily::beta_scaled(b));
                        Poly rhs = vm.scale_all_vars(b) * (Rational(1) / pow_rat(b, 6 * g - 6 + 2 * n));
                        if (!(lhs == rhs)) return false;
                    }
                    if (!(vm.top_degree_part() == table.volume(g, n, K))) return false;
                }
                return true;
            },
            120.0, note);
        report(5, "scaling law in beta and Kontsevich top-degree limit", ok, note);
    }

    // 6 -- integrated symmetry and full S_n symmetry
    {
        bool ok = timed(
            [&] {
                if (!sym::check_integrated_symmetry<CoeffElem>(M, 3).all_zero()) return false;
                if (!sym::check_integrated_symmetry<CoeffElem>(K, 3).all_zero()) return false;
                for (auto fam : {M, K})
                    for (auto [g, n] : cells_up_to(4))
                        if (!table.volume(g, n, fam).is_fully_symmetric()) return false;
                return true;
            },
            120.0, note);
        report(6, "four averaged conditions vanish; volumes fully symmetric", ok, note);
    }

    // 7 -- Mirzakhani-McShane identity, numerical
    {
        bool ok = timed(
            [&] {
                for (auto [l, t] :
                     std::vector<std::pair<double, double>>{{1.0, 0.0}, {2.0, 0.7}, {0.8, 1.3}}) {
                    hyp::FNTorus T(l, t);
                    if (T.boundary_length() > 4.0) return false;
                    auto sums = T.mcshane_partial_sums(25.0);
                    if (sums.empty()) return false;
                    double prev = 0.0;
                    for (auto [len, s] : sums) {
                        (void)len;
                        if (!(s > prev) || s > 1.0 + 1e-9) return false;
                        prev = s;
                    }
                    if (std::abs(sums.back().second - 1.0) >= 1e-3) return false;
                    auto s1 = T.spectrum(20.0);
                    auto s2 = hyp::FNTorus(l, t + l).spectrum(20.0);
                    if (s1.size() != s2.size()) return false;
                    for (std::size_t i = 0; i < s1.size(); ++i)
                        if (std::abs(s1[i].length - s2[i].length) > 1e-9) return false;
                }
                return true;
            },
            60.0, note);
        report(7, "McShane partial sums increase to 1; Dehn-twist invariance", ok, note);
    }

    // 8a -- quadratic growth of simple-closed-curve counts
    {
        bool ok = timed(
            [&] {
                for (auto [l, t] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {2.0, 0.7}}) {
                    hyp::FNTorus T(l, t);
                    double N = 0.0;
                    for (int lam = 5; lam <= 15; ++lam)
                        N = std::max(N, static_cast<double>(T.spectrum(lam).size()) / (lam * lam));
                    N *= 1.5;
                    std::size_t prev = 0;
                    for (int lam = 5; lam <= 30; ++lam) {
                        auto c = T.spectrum(lam).size();
                        if (c < prev || static_cast<double>(c) > N * lam * lam) return false;
                        prev = c;
                    }
                }
                return true;
            },
            60.0, note);
        report(8, "curve counts fit N * Lambda^2 on [5,30]", ok, note);
    }

    // 8b -- seam bound with the stated constant. The sweep includes the
    // corner L1 = L2 = eps, L3 = L1 + L2, where the stated constant is
    // violated (see the sharp-constant line below); reported honestly.
    {
        std::string detail;
        bool ok = timed(
            [&] {
                bool pass = true;
                for (double eps : {0.5, 1.0}) {
                    auto viol = hyp::small_pants_grid_sweep(eps);
                    if (!viol.empty()) {
                        pass = false;
                        char buf[160];
                        std::snprintf(buf, sizeof(buf),
                                      " eps=%.1f: %zu violations, first at (%.2f, %.2f, %.2f): seam "
                                      "%.4f > bound %.4f;",
                                      eps, viol.size(), viol.front().L1, viol.front().L2,
                                      viol.front().L3, viol.front().seam, viol.front().bound);
                        detail += buf;
                    }
                }
                return pass;
            },
            60.0, note);
        report(8, "seam bound d12 <= 2 ln(4/eps) on the eps-grid sweep", ok, note + detail);

        // informational: the sharp constant from the same derivation passes
        bool corrected = true;
        for (double eps : {0.5, 1.0}) {
            double bound = 2.0 * std::log(4.0 / (1.0 - std::exp(-eps)));
            for (double a = eps; a <= 6.0; a += 0.125)
                for (double b = eps; b <= 6.0; b += 0.125)
                    if (hyp::seam_length(a, b, a + b) > bound) corrected = false;
        }
        std::printf("criterion  8 [%s] seam bound with the sharp constant 2 ln(4/(1-e^-eps)) "
                    "(informational)\n",
                    corrected ? "PASS" : "FAIL");
        if (!corrected) ++failures;
    }

    // 9 -- TQFT layer
    {
        bool ok = timed(
            [&] {
                auto alg1 = tqft::FrobeniusAlgebra::su2k(1);
                for (auto [g, n] : cells_up_to(3)) {
                    auto decs = tqft::pants_decompositions(g, n);
                    auto ref = tqft::contract_decomposition(alg1, decs.front());
                    for (const auto& D : decs)
                        if (!(tqft::contract_decomposition(alg1, D) == ref)) return false;
                }
                for (int k = 1; k <= 4; ++k) {
                    auto alg = tqft::FrobeniusAlgebra::su2k(k);
                    std::vector<int> lam(3, 0);
                    for (lam[0] = 0; lam[0] <= k; ++lam[0])
                        for (lam[1] = 0; lam[1] <= k; ++lam[1])
                            for (lam[2] = 0; lam[2] <= k; ++lam[2]) {
                                auto vr = tqft::verlinde_rank(alg, 0, 3, lam);
                                if (vr.residual > 1e-8) return false;
                                if (vr.value != tqft::fusion_rank(alg, 0, 3, lam)) return false;
                            }
                    for (int g = 1; g <= 2; ++g)
                        for (int a = 0; a <= k; ++a)
                            if (tqft::verlinde_rank(alg, g, 1, {a}).value !=
                                tqft::fusion_rank(alg, g, 1, {a}))
                                return false;
                }
                tqft::AlgebraVolumeEngine eng(alg1);
                for (auto [g, n] : cells_up_to(2)) {
                    const auto& T = eng.volume(g, n);
                    Poly vm = table.volume(g, n, M);
                    std::vector<int> lam(n, 0);
                    bool ok2 = true;
                    std::function<void(int)> rec = [&](int i) {
                        if (i == n) {
                            long long rk = tqft::fusion_rank(alg1, g, n, lam);
                            FPoly expect = promote(vm) * (tqft::s_power(3 * g - 3 + n) *
                                                          FormalPoly(CoeffElem(Rational(rk))));
                            auto it = T.find(lam);
                            FPoly got = it == T.end() ? FPoly(n) : it->second;
                            if (!(got == expect)) ok2 = false;
                            return;
                        }
                        for (int x = 0; x < alg1.dim; ++x) {
                            lam[i] = x;
                            rec(i + 1);
                        }
                    };
                    rec(0);
                    if (!ok2) return false;
                }
                return true;
            },
            120.0, note);
        report(9, "TQFT: decomposition independence, Verlinde = fusion, rank factorization", ok,
               note);
    }

    // 10 -- excluded-scope marker: the full convergence theory, large tables,
    // and independent Chern-character integrals are replaced by the property
    // suites above.
    report(10, "excluded-scope replacements documented (property suites 1-9)", true);

    std::printf("%s: %d failing criterion check(s)\n", failures == 0 ? "ALL PASS" : "RESULT",
                failures);
    return failures == 0 ? 0 : 1;
}

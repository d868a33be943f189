// Prints the exact volume polynomials for both kernel families up to a given
// complexity, plus the psi-class intersection numbers they encode.

#include "moduli/moduli.hpp"

#include <iostream>

using namespace moduli;

int main(int argc, char** argv) {
    int max_complexity = argc > 1 ? std::atoi(argv[1]) : 3;
    tr::VolumeTable table;
    for (int c = 1; c <= max_complexity; ++c) {
        for (int g = 0; 2 * g <= c + 2; ++g) {
            int n = c + 2 - 2 * g;
            if (n < 1 || !tr::stable(g, n)) continue;
            std::cout << "V_{" << g << "," << n << "}^M = "
                      << table.volume(g, n, kernels::KernelFamily::mirzakhani()).str() << "\n";
            std::cout << "V_{" << g << "," << n << "}^K = "
                      << table.volume(g, n, kernels::KernelFamily::kontsevich()).str() << "\n";
        }
    }
    std::cout << "\npsi intersections <tau_d1 ... tau_dn>:\n";
    for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
        for (const auto& [d, q] : tr::psi_intersections(g, n, table)) {
            std::cout << "  g=" << g << " d=(";
            for (std::size_t i = 0; i < d.size(); ++i) std::cout << (i ? "," : "") << d[i];
            std::cout << ") -> " << rat_to_string(q) << "\n";
        }
    }
    return 0;
}

// Sums the Mirzakhani kernel over the simple-closed-curve spectrum of a
// one-holed torus and watches the partial sums converge to 1.

#include "moduli/moduli.hpp"

#include <iomanip>
#include <iostream>

using namespace moduli;

int main(int argc, char** argv) {
    double ell = argc > 1 ? std::atof(argv[1]) : 1.0;
    double tau = argc > 2 ? std::atof(argv[2]) : 0.0;
    hyp::FNTorus T(ell, tau);
    std::cout << std::setprecision(12);
    std::cout << "boundary length L = " << T.boundary_length() << "\n";
    for (double cutoff : {5.0, 10.0, 15.0, 20.0, 25.0}) {
        auto spec = T.spectrum(cutoff);
        std::cout << "cutoff " << cutoff << ": " << spec.size()
                  << " curves, partial sum = " << T.mcshane_sum(cutoff) << "\n";
    }
    return 0;
}

// evolve_and_measure.cpp — Evolves two spins among N = 6 and prints the state and its concurrence

#include <iostream>

#include "dephasim.hpp"

int main() {
    using namespace dephasim;
    const CouplingConfig cfg{0.1, 0.02, 0.0, 6};
    const EnsembleConfig ens;  // p = 0.5, v = 0.48 for both spins, background p = 0.5
    const BathConfig bath;

    const TwoQubitDensity rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    for (double t : {0.0, 5.0, 20.0, 60.0}) {
        const TwoQubitDensity rho = evolve(rho0, t, cfg, ens, bath);
        const ConcurrenceResult c = concurrence(rho);
        std::cout << "t = " << t << "  C = " << c.value << "  PPT-entangled = " << std::boolalpha
                  << ppt_negative(rho) << "\n";
    }
    const TwoQubitDensity rho = evolve(rho0, 20.0, cfg, ens, bath);
    std::cout << "rho(t = 20) =\n" << rho.matrix() << "\n";
}

// bath_functions.cpp — Tabulates the bath phase S(t) and decay Γ(t) at two temperatures

#include <cstdio>

#include "dephasim.hpp"

int main() {
    using namespace dephasim;
    std::printf("%10s %16s %16s %16s\n", "t", "S", "Gamma(theta=1)", "Gamma(theta=0.2)");
    BathConfig warm;
    BathConfig cold;
    cold.theta = 0.2;
    cold.epsilon = 5.0;  // same cutoff k_c = 1
    for (double t : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        std::printf("%10.3g %16.8g %16.8g %16.8g\n", t, phase_S(t, warm), decay_Gamma(t, warm),
                    decay_Gamma(t, cold));
    }
    std::printf("asymptotic dS/dt = %.8g\n", phase_slope(warm));
}

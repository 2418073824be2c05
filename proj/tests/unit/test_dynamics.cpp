// test_dynamics.cpp — Reduced two-qubit evolution, background factors and large-N limits

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dephasim/dynamics.hpp"
#include "dephasim/entanglement.hpp"

using namespace dephasim;

namespace {

// Direct product Π_j [p_j e^{iφ} + (1−p_j) e^{−iφ}].
cplx background_product(double phi, const std::vector<double>& ps) {
    cplx z{1.0, 0.0};
    for (double p : ps) z *= p * std::polar(1.0, phi) + (1.0 - p) * std::polar(1.0, -phi);
    return z;
}

// Entry-by-entry coherence rules written out as a table.
Matrix4c expected_entries(const Matrix4c& r0, double ks, double kg_c, double kg_l, cplx P, cplx Pt) {
    const cplx e = std::polar(1.0, ks);
    const double dc = std::exp(-kg_c);
    const double dl = std::exp(-kg_l);
    Matrix4c m = r0;
    m(0, 1) = r0(0, 1) * e * dl * dc * P;
    m(0, 2) = r0(0, 2) * e * dl * dc * P;
    m(0, 3) = r0(0, 3) * std::pow(dl, 2) * std::pow(dc, 4) * Pt;
    m(1, 2) = r0(1, 2) * std::pow(dl, 2);
    m(1, 3) = r0(1, 3) * std::conj(e) * dl * dc * P;
    m(2, 3) = r0(2, 3) * std::conj(e) * dl * dc * P;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return m;
}

} // namespace

TEST(Dynamics, EffectiveCoupling) {
    CouplingConfig cfg{0.2, 0.0, 0.5, 16};
    EXPECT_DOUBLE_EQ(cfg.effective_kappa_c(), 0.05);
    cfg.N = 1;
    EXPECT_THROW(cfg.validate(), ValidationError);
    EXPECT_THROW((CouplingConfig{-0.1, 0.0, 0.0, 2}.validate()), ValidationError);
    EXPECT_THROW((CouplingConfig{0.1, 0.0, -1.0, 2}.validate()), ValidationError);
}

TEST(Dynamics, BackgroundModulusIdentity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double p = u(rng);
        const double phi = 20.0 * (u(rng) - 0.5);
        const cplx z = background_factor_at_phase(phi, 3, Background::homogeneous(p));
        const double s = std::sin(phi);
        EXPECT_NEAR(std::norm(z), 1.0 - 4.0 * p * (1.0 - p) * s * s, 1e-12);
    }
}

TEST(Dynamics, BackgroundFactorMatchesDirectProduct) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const int count = 1 + static_cast<int>(u(rng) * 30);
        std::vector<double> ps(static_cast<std::size_t>(count));
        for (double& p : ps) p = u(rng);
        const double phi = 6.0 * (u(rng) - 0.5);
        const cplx listed = background_factor_at_phase(phi, count + 2, Background::listed(ps));
        EXPECT_LT(std::abs(listed - background_product(phi, ps)), 1e-12);
        const cplx homo = background_factor_at_phase(phi, count + 2, Background::homogeneous(ps[0]));
        EXPECT_LT(std::abs(homo - background_product(phi, std::vector<double>(ps.size(), ps[0]))), 1e-12);
    }
    EXPECT_EQ(background_factor_at_phase(1.0, 2, Background::homogeneous(0.3)), cplx(1.0, 0.0));
}

TEST(Dynamics, BackgroundModulusBounds) {
    // |2p−1|^{N−2} ≤ |P_N| ≤ 1
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        for (double phi : {0.0, 0.3, std::numbers::pi / 2, 2.0}) {
            const double m = std::abs(background_factor_at_phase(phi, 12, Background::homogeneous(p)));
            EXPECT_LE(m, 1.0 + 1e-15);
            EXPECT_GE(m, std::pow(std::abs(2.0 * p - 1.0), 10) - 1e-15);
        }
    }
}

TEST(Dynamics, BackgroundListMustMatchN) {
    EXPECT_THROW(Background::listed({0.5, 0.5}).validate(5), ValidationError);
    EXPECT_THROW(Background::listed({0.5, 1.5}).validate(4), ValidationError);
    EXPECT_NO_THROW(Background::listed({0.5, 0.2, 0.1}).validate(5));
}

TEST(Dynamics, EvolutionMatchesEntryTable) {
    const CouplingConfig cfg{0.3, 0.2, 0.1, 7};
    EnsembleConfig ens;
    ens.spin1 = SpinInit{0.3, cplx(0.2, 0.3)};
    ens.spin2 = SpinInit{0.6, cplx(-0.4, 0.1)};
    ens.background = Background::listed({0.1, 0.5, 0.7, 0.9, 0.25});
    BathConfig collective;
    BathConfig local{2.0, 0.5, FormFactor::SqrtCutoff, {}};
    const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    for (double t : {0.0, 0.5, 3.0, 40.0}) {
        const auto rho = evolve(rho0, t, cfg, ens, collective, local);
        const double k2 = std::pow(cfg.effective_kappa_c(), 2);
        const double S = phase_S(t, collective);
        const std::vector<double> ps{0.1, 0.5, 0.7, 0.9, 0.25};
        const Matrix4c expected = expected_entries(rho0.matrix(), k2 * S, k2 * decay_Gamma(t, collective),
                                                   cfg.kappa_l * cfg.kappa_l * decay_Gamma(t, local),
                                                   background_product(k2 * S, ps), background_product(2 * k2 * S, ps));
        EXPECT_LT((rho.matrix() - expected).cwiseAbs().maxCoeff(), 1e-13) << "t = " << t;
    }
}

TEST(Dynamics, EvolvedStatesAreValidWithFrozenPopulations) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const BathConfig bath;
    for (int k = 0; k < 200; ++k) {
        const double p1 = u(rng), p2 = u(rng);
        EnsembleConfig ens;
        ens.spin1 = SpinInit{p1, std::polar(std::sqrt(p1 * (1 - p1)) * u(rng), 6.0 * u(rng))};
        ens.spin2 = SpinInit{p2, std::polar(std::sqrt(p2 * (1 - p2)) * u(rng), 6.0 * u(rng))};
        ens.background = Background::homogeneous(u(rng));
        const CouplingConfig cfg{u(rng), u(rng), u(rng), 2 + static_cast<std::int64_t>(u(rng) * 100)};
        const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
        const auto rho = evolve(rho0, 100.0 * u(rng), cfg, ens, bath);
        for (int i = 0; i < 4; ++i) EXPECT_EQ(rho(i, i), rho0(i, i));
        EXPECT_GE(rho.min_eigenvalue(), -1e-10);
        EXPECT_LE(rho.hermiticity_defect(), 1e-12);
        EXPECT_LE(rho.trace_defect(), 1e-12);
    }
}

TEST(Dynamics, UncoupledDynamicsIsFrozen) {
    const CouplingConfig cfg{0.0, 0.0, 0.0, 10};
    const EnsembleConfig ens;
    const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    const auto rho = evolve(rho0, 123.0, cfg, ens, BathConfig{});
    EXPECT_EQ(rho.distance(rho0), 0.0);
}

TEST(Dynamics, LabFrameOnlyAddsLocalPhases) {
    const CouplingConfig cfg{0.2, 0.1, 0.0, 5};
    EnsembleConfig ens;
    ens.omega1 = 1.3;
    ens.omega2 = -0.7;
    const BathConfig bath;
    const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    const auto sample = sample_dephasing(9.0, cfg, ens, bath, bath);
    const auto lab = evolve(rho0, sample, cfg, ens, Frame::Lab);
    const auto inter = evolve(rho0, sample, cfg, ens, Frame::Interaction);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(lab(i, j)), std::abs(inter(i, j)), 1e-15);
    const double w1 = ens.omega1 * 9.0, w2 = ens.omega2 * 9.0;
    EXPECT_LT(std::abs(lab(0, 3) - inter(0, 3) * std::polar(1.0, w1 + w2)), 1e-15);
    EXPECT_LT(std::abs(lab(1, 2) - inter(1, 2) * std::polar(1.0, w1 - w2)), 1e-15);
    EXPECT_NEAR(concurrence(lab).value, concurrence(inter).value, 1e-12);
}

TEST(Dynamics, LargeNKillsCollectiveCoherences) {
    const CouplingConfig cfg{0.05, 0.0, 0.0, 1'000'000};
    const EnsembleConfig ens;
    const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    const auto rho = evolve(rho0, 10.0, cfg, ens, BathConfig{});
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}) EXPECT_LT(std::abs(rho(i, j)), 1e-12);
    EXPECT_NEAR(std::abs(rho(1, 2)), std::abs(rho0(1, 2)), 1e-15);
}

TEST(Dynamics, SmallEtaLimitApproachedMonotonically) {
    CouplingConfig cfg{0.5, 0.1, 0.1, 2};
    const EnsembleConfig ens;
    const BathConfig bath;
    const double t = 2.0;  // κ_c² S ≈ −0.37
    double previous = INFINITY;
    for (std::int64_t n : {100, 1000, 10000, 100000}) {
        cfg.N = n;
        const auto rho = evolve(initial_two_qubit(ens.spin1, ens.spin2), t, cfg, ens, bath);
        const double d = rho.distance(limit_state_small_eta(t, ens.spin1, ens.spin2, cfg, bath));
        EXPECT_LT(d, previous) << "N = " << n;
        previous = d;
    }
    EXPECT_LT(previous, 1e-6);
}

TEST(Dynamics, LargeEtaLimitApproachedMonotonically) {
    CouplingConfig cfg{0.5, 0.1, 0.5, 2};
    EnsembleConfig ens;
    ens.background = Background::homogeneous(0.3);
    const BathConfig bath;
    const double t = 2.0;
    double previous = INFINITY;
    for (std::int64_t n : {100, 1000, 10000, 100000}) {
        cfg.N = n;
        const auto rho = evolve(initial_two_qubit(ens.spin1, ens.spin2), t, cfg, ens, bath);
        const double d = rho.distance(limit_state_large_eta(t, ens.spin1, ens.spin2, cfg, ens, bath));
        EXPECT_LT(d, previous) << "N = " << n;
        previous = d;
    }
    EXPECT_LT(previous, 1e-3);
}

TEST(Dynamics, LimitStatesAreUnentangled) {
    const EnsembleConfig ens;
    const BathConfig bath;
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
        const CouplingConfig small{0.3, 0.2, 0.1, 1000};
        EXPECT_EQ(concurrence(limit_state_small_eta(t, ens.spin1, ens.spin2, small, bath)).value, 0.0);
        const CouplingConfig large{0.3, 0.2, 0.5, 1000};
        EXPECT_EQ(concurrence(limit_state_large_eta(t, ens.spin1, ens.spin2, large, ens, bath)).value, 0.0);
    }
    EXPECT_THROW(limit_state_large_eta(1.0, ens.spin1, ens.spin2, CouplingConfig{0.3, 0.0, 0.2, 10}, ens, bath),
                 PreconditionError);
}

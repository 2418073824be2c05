// dynamics.hpp — Exact reduced two-qubit dynamics under energy-conserving local + collective baths
//
// Spins 1 and 2 are retained; spins 3..N are traced out. Every off-diagonal entry of
// ρ_t is its initial value times a product of a collective phase e^{±iϰ²S}, decay
// factors e^{−ϰ²Γ} and the background factor P_N (or P̃_N for the (1,4) coherence).
// Populations never change.
//
// The single-spin coherences (1,2), (1,3), (2,4), (3,4) all carry one local decay
// factor e^{−ϰ_ℓ²Γ_ℓ}. Without it on (1,3) the map is not positive for ϰ_ℓ > 0 and
// would disagree with the product-form large-N limit.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "dephasim/bath.hpp"
#include "dephasim/density.hpp"
#include "dephasim/errors.hpp"

namespace dephasim {

struct CouplingConfig {
    double kappa_c{0.05};
    double kappa_l{0.0};
    double eta{0.0};
    std::int64_t N{2};

    /// ϰ_c / N^η
    double effective_kappa_c() const { return kappa_c / std::pow(static_cast<double>(N), eta); }

    void validate() const {
        if (!(kappa_c >= 0.0) || !std::isfinite(kappa_c)) throw ValidationError("kappa_c must be >= 0");
        if (!(kappa_l >= 0.0) || !std::isfinite(kappa_l)) throw ValidationError("kappa_l must be >= 0");
        if (!(eta >= 0.0) || !std::isfinite(eta)) throw ValidationError("eta must be >= 0");
        if (N < 2) throw ValidationError("N must be >= 2");
    }
};

/// Populations of the traced-out spins 3..N. Their coherences never enter the dynamics,
/// so they are not representable here.
class Background {
public:
    static Background homogeneous(double p) { return Background(p, {}); }
    static Background listed(std::vector<double> ps) { return Background(0.0, std::move(ps)); }

    Background() = default;

    bool is_homogeneous() const noexcept { return listed_.empty(); }
    double homogeneous_p() const noexcept { return p_; }
    const std::vector<double>& populations() const noexcept { return listed_; }

    void validate(std::int64_t N) const {
        auto check = [](double p) {
            if (!(p >= 0.0 && p <= 1.0)) {
                std::ostringstream msg;
                msg << "background population must lie in [0, 1] (got " << p << ")";
                throw ValidationError(msg.str());
            }
        };
        if (is_homogeneous()) {
            check(p_);
            return;
        }
        if (static_cast<std::int64_t>(listed_.size()) != N - 2) {
            std::ostringstream msg;
            msg << "background lists " << listed_.size() << " populations but N - 2 = " << N - 2;
            throw ValidationError(msg.str());
        }
        for (double p : listed_) check(p);
    }

private:
    Background(double p, std::vector<double> listed) : p_(p), listed_(std::move(listed)) {}

    double p_{0.5};
    std::vector<double> listed_;
};

struct EnsembleConfig {
    Background background{Background::homogeneous(0.5)};
    SpinInit spin1{0.5, {0.48, 0.0}};
    SpinInit spin2{0.5, {0.48, 0.0}};
    double omega1{0.0};
    double omega2{0.0};

    void validate(std::int64_t N) const {
        background.validate(N);
        spin1.validate();
        spin2.validate();
    }
};

enum class Frame { Lab, Interaction };

struct DephasingSample {
    double t{0.0};
    double S{0.0};
    double Gamma_l{0.0};
    double Gamma_c{0.0};
    cplx P_N{1.0, 0.0};
    cplx tilde_P_N{1.0, 0.0};
};

/// The dimensionless products that actually multiply the coherences. Building these
/// directly (rather than from a time) is the abstract mode: N = 2 with ϰ²S and ϰ²Γ as knobs.
struct CoherenceFactors {
    double phase{0.0};    // ϰ_eff² S
    double decay_c{0.0};  // ϰ_eff² Γ_c
    double decay_l{0.0};  // ϰ_ℓ² Γ_ℓ
    cplx background{1.0, 0.0};
    cplx background_doubled{1.0, 0.0};
};

namespace detail {

// log|z| and arg z for z = p e^{iφ} + (1−p) e^{−iφ} = cos φ + i(2p−1) sin φ.
inline std::pair<double, double> background_log_factor(double p, double phi) {
    const double s = std::sin(phi);
    const double q = 4.0 * p * (1.0 - p) * s * s;  // 1 − |z|²
    const double log_mod = q >= 1.0 ? -INFINITY : 0.5 * std::log1p(-q);
    const double arg = std::atan2((2.0 * p - 1.0) * s, std::cos(phi));
    return {log_mod, arg};
}

inline cplx from_log_polar(double log_mod, double arg) {
    if (log_mod == -INFINITY) return {0.0, 0.0};
    return std::polar(std::exp(log_mod), arg);
}

} // namespace detail

/// ∏_{j=3}^{N} [p_j e^{iφ} + (1−p_j) e^{−iφ}] evaluated in log-polar form, where
/// φ = ϰ_eff² S (doubled: 2ϰ_eff² S). Equals 1 for N = 2.
inline cplx background_factor_at_phase(double phi, std::int64_t N, const Background& bg) {
    if (N <= 2) return {1.0, 0.0};
    if (bg.is_homogeneous()) {
        const auto [log_mod, arg] = detail::background_log_factor(bg.homogeneous_p(), phi);
        const double count = static_cast<double>(N - 2);
        return detail::from_log_polar(count * log_mod, count * arg);
    }
    double log_mod = 0.0;
    double arg = 0.0;
    for (double p : bg.populations()) {
        const auto [lm, a] = detail::background_log_factor(p, phi);
        log_mod += lm;
        arg += a;
    }
    return detail::from_log_polar(log_mod, std::remainder(arg, 2.0 * std::numbers::pi));
}

/// P_N(t), or P̃_N(t) when doubled.
inline cplx background_factor(double t, const CouplingConfig& cfg, const EnsembleConfig& ens,
                              const BathConfig& bath, bool doubled) {
    cfg.validate();
    ens.background.validate(cfg.N);
    const double k = cfg.effective_kappa_c();
    const double phi = (doubled ? 2.0 : 1.0) * k * k * phase_S(t, bath);
    return background_factor_at_phase(phi, cfg.N, ens.background);
}

inline DephasingSample make_sample(const DephasingPoint& collective, double gamma_local,
                                   const CouplingConfig& cfg, const Background& bg) {
    const double k = cfg.effective_kappa_c();
    const double phi = k * k * collective.S;
    return {collective.t,
            collective.S,
            gamma_local,
            collective.Gamma,
            background_factor_at_phase(phi, cfg.N, bg),
            background_factor_at_phase(2.0 * phi, cfg.N, bg)};
}

inline DephasingSample sample_dephasing(double t, const CouplingConfig& cfg, const EnsembleConfig& ens,
                                        const BathConfig& collective, const BathConfig& local) {
    const DephasingPoint point{t, phase_S(t, collective), decay_Gamma(t, collective)};
    const double gamma_l = (cfg.kappa_l == 0.0) ? 0.0 : decay_Gamma(t, local);
    return make_sample(point, gamma_l, cfg, ens.background);
}

inline CoherenceFactors coherence_factors(const DephasingSample& s, const CouplingConfig& cfg) {
    const double k = cfg.effective_kappa_c();
    return {k * k * s.S, k * k * s.Gamma_c, cfg.kappa_l * cfg.kappa_l * s.Gamma_l, s.P_N, s.tilde_P_N};
}

/// Applies the coherence factors to ρ₀. Free phases e^{iωt} are included only in the lab frame.
inline TwoQubitDensity apply_coherence_factors(const TwoQubitDensity& rho0, const CoherenceFactors& f,
                                               Frame frame = Frame::Interaction, double t = 0.0,
                                               double omega1 = 0.0, double omega2 = 0.0) {
    const cplx lamb = std::polar(1.0, f.phase);
    const double dc = std::exp(-f.decay_c);
    const double dl = std::exp(-f.decay_l);
    const double dc2 = dc * dc;

    cplx f12 = lamb * (dl * dc) * f.background;
    cplx f13 = lamb * (dl * dc) * f.background;
    cplx f14 = (dl * dl * dc2 * dc2) * f.background_doubled;
    cplx f23 = dl * dl;
    cplx f24 = std::conj(lamb) * (dl * dc) * f.background;
    cplx f34 = f24;

    if (frame == Frame::Lab) {
        const cplx w1 = std::polar(1.0, omega1 * t);
        const cplx w2 = std::polar(1.0, omega2 * t);
        f12 *= w2;
        f13 *= w1;
        f14 *= w1 * w2;
        f23 *= w1 * std::conj(w2);
        f24 *= w1;
        f34 *= w2;
    }

    const Matrix4c& r0 = rho0.matrix();
    Matrix4c m = r0;
    auto set = [&m, &r0](int i, int j, cplx factor) {
        m(i, j) = r0(i, j) * factor;
        m(j, i) = std::conj(m(i, j));
    };
    set(0, 1, f12);
    set(0, 2, f13);
    set(0, 3, f14);
    set(1, 2, f23);
    set(1, 3, f24);
    set(2, 3, f34);
    return TwoQubitDensity(m);
}

namespace detail {

inline void check_consistency(const TwoQubitDensity& rho) {
    if (!rho.matrix().allFinite()) throw NumericalError("evolve: non-finite density matrix entries");
    if (rho.hermiticity_defect() > 1e-10 || rho.trace_defect() > 1e-10)
        throw NumericalError("evolve: evolved matrix failed the Hermiticity/trace consistency check");
}

} // namespace detail

inline TwoQubitDensity evolve(const TwoQubitDensity& rho0, const DephasingSample& sample,
                              const CouplingConfig& cfg, const EnsembleConfig& ens,
                              Frame frame = Frame::Interaction) {
    auto rho = apply_coherence_factors(rho0, coherence_factors(sample, cfg), frame, sample.t, ens.omega1,
                                       ens.omega2);
    detail::check_consistency(rho);
    return rho;
}

inline TwoQubitDensity evolve(const TwoQubitDensity& rho0, double t, const CouplingConfig& cfg,
                              const EnsembleConfig& ens, const BathConfig& collective, const BathConfig& local,
                              Frame frame = Frame::Interaction) {
    cfg.validate();
    ens.validate(cfg.N);
    collective.validate();
    local.validate();
    rho0.validate();
    return evolve(rho0, sample_dephasing(t, cfg, ens, collective, local), cfg, ens, frame);
}

/// Local form factor equal to the collective one.
inline TwoQubitDensity evolve(const TwoQubitDensity& rho0, double t, const CouplingConfig& cfg,
                              const EnsembleConfig& ens, const BathConfig& bath,
                              Frame frame = Frame::Interaction) {
    return evolve(rho0, t, cfg, ens, bath, bath, frame);
}

/// N → ∞ state for 0 < η < 1/4: P_N, P̃_N → 0, leaving an X state whose only coherence
/// is the locally decaying (2,3) entry.
inline TwoQubitDensity limit_state_small_eta(double t, const SpinInit& s1, const SpinInit& s2,
                                             const CouplingConfig& cfg, const BathConfig& local) {
    cfg.validate();
    const double gamma_l = cfg.kappa_l == 0.0 ? 0.0 : decay_Gamma(t, local);
    const double decay = std::exp(-2.0 * cfg.kappa_l * cfg.kappa_l * gamma_l);
    const TwoQubitDensity rho0 = initial_two_qubit(s1, s2);
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = rho0(i, i);
    m(1, 2) = s1.v * std::conj(s2.v) * decay;
    m(2, 1) = std::conj(m(1, 2));
    return TwoQubitDensity(m);
}

/// P_∞(t) = exp(−i ϰ_c² S(t) (1−2p) N^{1−2η}) with the bare ϰ_c.
inline cplx limit_background_factor(double t, const CouplingConfig& cfg, double p, const BathConfig& bath) {
    const double exponent = cfg.kappa_c * cfg.kappa_c * phase_S(t, bath) * (1.0 - 2.0 * p) *
                            std::pow(static_cast<double>(cfg.N), 1.0 - 2.0 * cfg.eta);
    return std::polar(1.0, -exponent);
}

/// N → ∞ state for η > 1/4: a product of single-spin states with coherences v_j·D_ℓ·P_∞.
inline TwoQubitDensity limit_state_large_eta(double t, const SpinInit& s1, const SpinInit& s2,
                                             const CouplingConfig& cfg, const EnsembleConfig& ens,
                                             const BathConfig& collective, const BathConfig& local) {
    cfg.validate();
    if (!(cfg.eta > 0.25)) throw PreconditionError("limit_state_large_eta requires eta > 1/4");
    if (!ens.background.is_homogeneous())
        throw PreconditionError("limit_state_large_eta requires a homogeneous background");
    s1.validate();
    s2.validate();
    const double gamma_l = cfg.kappa_l == 0.0 ? 0.0 : decay_Gamma(t, local);
    const double d = std::exp(-cfg.kappa_l * cfg.kappa_l * gamma_l);
    const cplx p_inf = limit_background_factor(t, cfg, ens.background.homogeneous_p(), collective);

    const SpinInit a{s1.p, s1.v * d * p_inf};
    const SpinInit b{s2.p, s2.v * d * p_inf};
    const Matrix2c ma = a.matrix();
    const Matrix2c mb = b.matrix();
    Matrix4c m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = ma(i, j) * mb;
    return TwoQubitDensity(m);
}

inline TwoQubitDensity limit_state_large_eta(double t, const SpinInit& s1, const SpinInit& s2,
                                             const CouplingConfig& cfg, const EnsembleConfig& ens,
                                             const BathConfig& bath) {
    return limit_state_large_eta(t, s1, s2, cfg, ens, bath, bath);
}

} // namespace dephasim

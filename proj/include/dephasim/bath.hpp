// bath.hpp — Bath-induced phase S(t) and decay Γ(t) for the sqrt(|k|) sharp-cutoff form factor
//
// Units: energies in ħω₀, time in 1/ω₀. With f(k) = sqrt(|k|)·χ(|k| ≤ k_c) and
// d³k = 4π ω² dω the defining integrals reduce to
//
//   S(t) = -2π ∫₀^{k_c} ω (ωt − sin ωt) dω
//   Γ(t) =  4π ∫₀^{k_c} ω coth(βω/2) sin²(ωt/2) dω
//
// S has an elementary antiderivative. Γ is integrated numerically: directly on
// [0, k_c] for moderate k_c·t, and for large k_c·t through the steepest-descent
// contour Re z = k_c, Im z ∈ [0, ∞), which turns the oscillatory cosine transform
// into a smooth Laplace integral plus the residues of coth on the imaginary axis.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dephasim/errors.hpp"
#include "dephasim/quadrature.hpp"

namespace dephasim {

enum class FormFactor { SqrtCutoff };

struct BathConfig {
    double epsilon{1.0};   // ν_c / ν_T
    double theta{1.0};     // k_B T / (ħ ω₀)
    FormFactor form_factor{FormFactor::SqrtCutoff};
    QuadratureSettings quadrature{};

    double beta() const noexcept { return 1.0 / theta; }
    double cutoff() const noexcept { return epsilon * theta; }  // k_c
    double thermal_frequency() const noexcept { return theta / (2.0 * std::numbers::pi); }
    double cutoff_frequency() const noexcept { return cutoff() / (2.0 * std::numbers::pi); }

    void validate() const {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("bath epsilon must be > 0");
        if (!(theta > 0.0) || !std::isfinite(theta)) throw ValidationError("bath theta must be > 0");
        quadrature.validate();
    }
};

/// Large-time slope dS/dt = −2π k_c³/3.
inline double phase_slope(const BathConfig& cfg) {
    const double kc = cfg.cutoff();
    return -2.0 * std::numbers::pi * kc * kc * kc / 3.0;
}

namespace detail {

inline void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        std::ostringstream msg;
        msg << who << ": time must be finite and >= 0 (got " << t << ")";
        throw PreconditionError(msg.str());
    }
}

// ω coth(βω/2), continuous at ω = 0.
inline double thermal_weight(double omega, double beta) {
    const double x = 0.5 * beta * omega;
    if (std::abs(x) < 1e-5) return (2.0 / beta) * (1.0 + x * x / 3.0);
    return omega / std::tanh(x);
}

inline std::complex<double> thermal_weight(std::complex<double> z, double beta) {
    return z / std::tanh(0.5 * beta * z);
}

// Crossover between direct quadrature and the contour representation of Γ.
inline constexpr double kContourThreshold = 50.0;
// e^{-u} is below 1e-26 past this point of the Laplace variable u = y·t.
inline constexpr double kLaplaceCutoff = 60.0;

inline double gamma_direct(double t, const BathConfig& cfg) {
    const double kc = cfg.cutoff();
    const double beta = cfg.beta();
    std::vector<double> edges{0.0};
    const double node = std::numbers::pi / t;
    for (double w = node; w < kc; w += node) edges.push_back(w);
    edges.push_back(kc);

    auto integrand = [t, beta](double w) {
        const double s = std::sin(0.5 * w * t);
        return thermal_weight(w, beta) * s * s;
    };
    return 4.0 * std::numbers::pi * integrate(integrand, edges, cfg.quadrature).value;
}

inline double gamma_contour(double t, const BathConfig& cfg) {
    using namespace std::complex_literals;
    const double kc = cfg.cutoff();
    const double beta = cfg.beta();
    const double pi = std::numbers::pi;

    const double total = integrate([beta](double w) { return thermal_weight(w, beta); }, 0.0, kc,
                                   cfg.quadrature).value;

    // L = ∫₀^∞ g(k_c + i y) e^{−y t} dy with u = y t.
    auto laplace = [t, kc, beta](double u) {
        return thermal_weight(std::complex<double>(kc, u / t), beta) * std::exp(-u);
    };
    const std::complex<double> L = integrate(laplace, 0.0, kLaplaceCutoff, cfg.quadrature).value / t;

    // ∫₀^{k_c} g cos ωt dω = Re(−i e^{i k_c t} L) − (4π²/β²) Σ_n n qⁿ, q = e^{−2π t/β}.
    const double q = std::exp(-2.0 * pi * t / beta);
    const double residues = 4.0 * pi * pi / (beta * beta) * q / ((1.0 - q) * (1.0 - q));
    const double cosine = std::real(-1.0i * std::exp(1.0i * (kc * t)) * L) - residues;

    return 2.0 * pi * (total - cosine);
}

} // namespace detail

namespace detail {

// x/3 − (sin x − x cos x)/x² = Σ_{n≥2} (−1)ⁿ 2n x^{2n−1}/(2n+1)!. The closed form cancels
// to ~x³/30 and loses digits for small x, so the series is summed for x < 2.
inline double phase_bracket(double x) {
    if (x >= 2.0) return x / 3.0 - (std::sin(x) - x * std::cos(x)) / (x * x);
    const double x2 = x * x;
    double term = x * x2 / 30.0;  // n = 2
    double sum = term;
    for (int n = 3; n < 40; ++n) {
        // term_n / term_{n−1} = −x² · n / ((n−1)(2n)(2n+1))
        term *= -x2 * n / ((n - 1.0) * (2.0 * n) * (2.0 * n + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace detail

/// Bath phase S(t) ≤ 0 from the closed form in x = k_c t.
inline double phase_S(double t, const BathConfig& cfg) {
    detail::require_time(t, "phase_S");
    const double kc = cfg.cutoff();
    const double bracket = detail::phase_bracket(kc * t);
    const double s = -2.0 * std::numbers::pi * kc * kc * bracket;
    if (!std::isfinite(s)) {
        std::ostringstream msg;
        msg << "phase_S: non-finite result at t = " << t;
        throw NumericalError(msg.str());
    }
    return s;
}

/// Bath decay Γ(t) ≥ 0 for the sqrt-cutoff form factor at inverse temperature β = 1/theta.
inline double decay_Gamma(double t, const BathConfig& cfg) {
    detail::require_time(t, "decay_Gamma");
    if (t == 0.0) return 0.0;
    const double kc = cfg.cutoff();
    // The residue series needs t/β bounded away from zero to be negligible-or-summable;
    // its closed form is exact, the guard only protects q/(1−q)² from cancellation.
    const bool contour = kc * t > detail::kContourThreshold && t * cfg.theta > 0.5;
    const double g = contour ? detail::gamma_contour(t, cfg) : detail::gamma_direct(t, cfg);
    return g < 0.0 ? 0.0 : g;
}

struct DephasingPoint {
    double t;
    double S;
    double Gamma;
};

using DephasingTable = std::vector<DephasingPoint>;

/// Tabulates (t, S, Γ) on a strictly increasing grid of non-negative times.
inline DephasingTable dephasing_grid(const std::vector<double>& times, const BathConfig& cfg) {
    cfg.validate();
    DephasingTable table;
    table.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw PreconditionError("dephasing_grid: times must be strictly increasing");
        const double t = times[i];
        detail::require_time(t, "dephasing_grid");
        try {
            table.push_back({t, phase_S(t, cfg), decay_Gamma(t, cfg)});
        } catch (const QuadratureError& e) {
            std::ostringstream msg;
            msg << e.what() << " [at t = " << t << "]";
            throw QuadratureError(msg.str(), e.achieved_error());
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << e.what() << " [at t = " << t << "]";
            throw NumericalError(msg.str());
        }
    }
    return table;
}

} // namespace dephasim

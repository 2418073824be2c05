// experiments.hpp — Concurrence time series, peak/collapse extraction, and parameter sweeps
//
// All series are evaluated in the interaction frame. The rescaled time is
// τ = ϰ_eff²·ν_c·t with ν_c = k_c/2π.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dephasim/bath.hpp"
#include "dephasim/density.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/entanglement.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/parallel.hpp"

namespace dephasim {

struct SeriesRow {
    double t{0.0};
    double tau{0.0};
    double concurrence{0.0};
    double abs_p_n{1.0};
    double S{0.0};
    double gamma_l{0.0};
    double gamma_c{0.0};
};

struct TimeSeries {
    std::vector<SeriesRow> rows;
    std::vector<std::string> warnings;
};

/// Time-grid policy for sweeps: cover τ ∈ [0, tau_max] with at least min_steps points,
/// refined until Δt ≤ peak_fraction × (width of a P_N revival peak).
struct GridPolicy {
    double tau_max{2.0 * std::numbers::pi};
    std::size_t min_steps{4000};
    double peak_fraction{0.1};
    std::size_t max_steps{5'000'000};
};

struct Baths {
    BathConfig collective{};
    BathConfig local{};

    static Baths same(const BathConfig& b) { return {b, b}; }
};

/// τ/t = ϰ_eff² ν_c
inline double rescaled_time_factor(const CouplingConfig& cfg, const BathConfig& bath) {
    const double k = cfg.effective_kappa_c();
    return k * k * bath.cutoff_frequency();
}

/// Width in t of a |P_N| peak: a unit phase window 1/√(N−2) divided by the asymptotic
/// phase velocity ϰ_eff²|dS/dt|.
inline double peak_width(const CouplingConfig& cfg, const BathConfig& bath) {
    const double k = cfg.effective_kappa_c();
    const double spins = std::max<double>(1.0, static_cast<double>(cfg.N - 2));
    return 1.0 / (k * k * std::abs(phase_slope(bath)) * std::sqrt(spins));
}

inline double default_t_max(const CouplingConfig& cfg, const BathConfig& bath, const GridPolicy& policy) {
    const double factor = rescaled_time_factor(cfg, bath);
    if (!(factor > 0.0))
        throw PreconditionError("default_t_max: zero collective coupling, pass an explicit t_max");
    return policy.tau_max / factor;
}

inline std::size_t resolved_steps(const CouplingConfig& cfg, const BathConfig& bath, double t_max,
                                  const GridPolicy& policy) {
    std::size_t steps = policy.min_steps;
    if (cfg.effective_kappa_c() > 0.0) {
        const double dt = policy.peak_fraction * peak_width(cfg, bath);
        const double needed = std::ceil(t_max / dt) + 1.0;
        if (needed > static_cast<double>(policy.max_steps)) {
            std::ostringstream msg;
            msg << "time grid would need " << needed << " points (max_steps " << policy.max_steps << ")";
            throw PreconditionError(msg.str());
        }
        steps = std::max(steps, static_cast<std::size_t>(needed));
    }
    return std::max<std::size_t>(steps, 2);
}

inline std::vector<double> uniform_times(double t_max, std::size_t steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw PreconditionError("time grid: t_max must be > 0");
    if (steps < 2) throw PreconditionError("time grid: steps must be >= 2");
    std::vector<double> times(steps);
    const double last = static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) times[k] = t_max * (static_cast<double>(k) / last);
    return times;
}

/// Collective (S, Γ_c) table plus the local decay on the same times. Γ_ℓ is only
/// integrated when it can matter (ϰ_ℓ > 0).
struct BathTables {
    DephasingTable collective;
    std::vector<double> gamma_local;
};

inline BathTables tabulate_baths(const std::vector<double>& times, const Baths& baths, bool need_local) {
    BathTables out;
    out.collective = dephasing_grid(times, baths.collective);
    out.gamma_local.assign(times.size(), 0.0);
    if (need_local) {
        const DephasingTable local = dephasing_grid(times, baths.local);
        for (std::size_t i = 0; i < local.size(); ++i) out.gamma_local[i] = local[i].Gamma;
    }
    return out;
}

/// Evolves and measures on a precomputed bath table.
inline TimeSeries time_series_on(const BathTables& tables, const CouplingConfig& cfg, const EnsembleConfig& ens,
                                 const BathConfig& collective) {
    cfg.validate();
    ens.validate(cfg.N);
    const TwoQubitDensity rho0 = initial_two_qubit(ens.spin1, ens.spin2);
    const double factor = rescaled_time_factor(cfg, collective);

    TimeSeries series;
    series.rows.reserve(tables.collective.size());
    for (std::size_t i = 0; i < tables.collective.size(); ++i) {
        const DephasingPoint& point = tables.collective[i];
        const DephasingSample sample = make_sample(point, tables.gamma_local[i], cfg, ens.background);
        const TwoQubitDensity rho = evolve(rho0, sample, cfg, ens, Frame::Interaction);
        series.rows.push_back({point.t, factor * point.t, concurrence(rho).value, std::abs(sample.P_N), point.S,
                               sample.Gamma_l, sample.Gamma_c});
    }

    if (tables.collective.size() >= 2 && cfg.effective_kappa_c() > 0.0 && cfg.N > 2) {
        const double dt = tables.collective[1].t - tables.collective[0].t;
        const double width = peak_width(cfg, collective);
        if (dt > 0.1 * width) {
            std::ostringstream msg;
            msg << "under-resolved time grid: dt = " << dt << " exceeds 1/10 of the P_N peak width " << width;
            series.warnings.push_back(msg.str());
        }
    }
    return series;
}

inline TimeSeries time_series(const CouplingConfig& cfg, const EnsembleConfig& ens, const Baths& baths,
                              double t_max, std::size_t steps) {
    baths.collective.validate();
    baths.local.validate();
    const auto times = uniform_times(t_max, steps);
    return time_series_on(tabulate_baths(times, baths, cfg.kappa_l > 0.0), cfg, ens, baths.collective);
}

inline TimeSeries time_series(const CouplingConfig& cfg, const EnsembleConfig& ens, const BathConfig& bath,
                              double t_max, std::size_t steps) {
    return time_series(cfg, ens, Baths::same(bath), t_max, steps);
}

// ---------------------------------------------------------------------------------------
// Series diagnostics

struct PeakResult {
    double t{0.0};
    double tau{0.0};
    double value{0.0};
    bool all_zero{false};
};

/// Global maximum of the concurrence; ties go to the earliest time.
inline PeakResult peak_concurrence(const TimeSeries& series) {
    if (series.rows.empty()) throw PreconditionError("peak_concurrence: empty series");
    PeakResult best{series.rows.front().t, series.rows.front().tau, series.rows.front().concurrence, false};
    for (const auto& row : series.rows) {
        if (row.concurrence > best.value) best = {row.t, row.tau, row.concurrence, false};
    }
    if (best.value == 0.0) return {0.0, 0.0, 0.0, true};
    return best;
}

enum class CollapseStatus { Collapsed, NoEntanglement, NoCollapse };

inline const char* to_string(CollapseStatus s) {
    switch (s) {
        case CollapseStatus::Collapsed: return "collapsed";
        case CollapseStatus::NoEntanglement: return "no-entanglement";
        case CollapseStatus::NoCollapse: return "no-collapse";
    }
    return "?";
}

struct CollapseResult {
    CollapseStatus status{CollapseStatus::NoEntanglement};
    double t{std::numeric_limits<double>::quiet_NaN()};
    double tau{std::numeric_limits<double>::quiet_NaN()};
};

struct CollapseCriteria {
    double floor{1e-6};          // "zero" concurrence
    std::size_t persistence{10};  // consecutive points that must stay below the floor
    double significance{1e-4};   // below this peak value the series counts as unentangled
};

/// First grid point after the initial entangled stretch at which C drops below the floor
/// and stays there for `persistence` points.
inline CollapseResult collapse_time(const TimeSeries& series, const CollapseCriteria& criteria = {}) {
    const auto& rows = series.rows;
    double peak = 0.0;
    for (const auto& r : rows) peak = std::max(peak, r.concurrence);
    if (peak < criteria.significance) return {};

    std::size_t i = 0;
    while (i < rows.size() && !(rows[i].concurrence > criteria.floor)) ++i;
    for (; i < rows.size(); ++i) {
        if (rows[i].concurrence >= criteria.floor) continue;
        if (i + criteria.persistence > rows.size()) break;
        bool stays = true;
        for (std::size_t k = i; k < i + criteria.persistence; ++k) {
            if (rows[k].concurrence >= criteria.floor) {
                stays = false;
                break;
            }
        }
        if (stays) return {CollapseStatus::Collapsed, rows[i].t, rows[i].tau};
    }
    return {CollapseStatus::NoCollapse};
}

// ---------------------------------------------------------------------------------------
// Sweeps

struct SweepRow {
    double eta{0.0};
    double kappa_c{0.0};
    std::int64_t N{2};
    double c_max{0.0};
    double t_peak{0.0};
    double tau_peak{0.0};
    CollapseResult collapse{};
    std::size_t steps{0};
    std::vector<std::string> warnings;
};

namespace detail {

inline void require_homogeneous(const EnsembleConfig& ens, const char* who) {
    if (!ens.background.is_homogeneous()) {
        std::ostringstream msg;
        msg << who << ": sweeps over N need a homogeneous background population";
        throw PreconditionError(msg.str());
    }
}

inline SweepRow summarize(const TimeSeries& series, const CouplingConfig& cfg, std::size_t steps) {
    const PeakResult peak = peak_concurrence(series);
    return {cfg.eta, cfg.kappa_c, cfg.N, peak.value, peak.t, peak.tau, collapse_time(series), steps,
            series.warnings};
}

inline SweepRow run_point(const CouplingConfig& cfg, const EnsembleConfig& ens, const Baths& baths,
                          const GridPolicy& policy) {
    const double t_max = default_t_max(cfg, baths.collective, policy);
    const std::size_t steps = resolved_steps(cfg, baths.collective, t_max, policy);
    return summarize(time_series(cfg, ens, baths, t_max, steps), cfg, steps);
}

} // namespace detail

/// Peak concurrence and collapse time for each N.
///
/// With η = 0 every N shares ϰ_eff, so one bath table, resolved for the largest N, serves
/// the whole sweep. With η > 0 each N gets its own table on the common τ window.
/// Rows come back in the order of `Ns`.
inline std::vector<SweepRow> sweep_N(const CouplingConfig& tmpl, const EnsembleConfig& ens, const Baths& baths,
                                     const std::vector<std::int64_t>& Ns, const GridPolicy& policy = {}) {
    detail::require_homogeneous(ens, "sweep_N");
    tmpl.validate();
    if (Ns.empty()) return {};
    for (auto n : Ns) {
        if (n < 2) throw ValidationError("sweep_N: every N must be >= 2");
    }

    if (tmpl.eta == 0.0) {
        CouplingConfig widest = tmpl;
        widest.N = *std::max_element(Ns.begin(), Ns.end());
        const double t_max = default_t_max(widest, baths.collective, policy);
        const std::size_t steps = resolved_steps(widest, baths.collective, t_max, policy);
        const BathTables tables = tabulate_baths(uniform_times(t_max, steps), baths, tmpl.kappa_l > 0.0);
        return parallel_map<SweepRow>(Ns.size(), [&](std::size_t i) {
            CouplingConfig cfg = tmpl;
            cfg.N = Ns[i];
            return detail::summarize(time_series_on(tables, cfg, ens, baths.collective), cfg, steps);
        });
    }

    return parallel_map<SweepRow>(Ns.size(), [&](std::size_t i) {
        CouplingConfig cfg = tmpl;
        cfg.N = Ns[i];
        return detail::run_point(cfg, ens, baths, policy);
    });
}

/// sweep_N repeated for each scaling exponent; rows ordered by (η, N) as given.
inline std::vector<SweepRow> sweep_eta(const CouplingConfig& tmpl, const EnsembleConfig& ens, const Baths& baths,
                                       const std::vector<double>& etas, const std::vector<std::int64_t>& Ns,
                                       const GridPolicy& policy = {}) {
    std::vector<SweepRow> rows;
    for (double eta : etas) {
        CouplingConfig cfg = tmpl;
        cfg.eta = eta;
        auto part = sweep_N(cfg, ens, baths, Ns, policy);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

/// Peak concurrence versus coupling strength; rows ordered by (N, ϰ_c) as given.
inline std::vector<SweepRow> sweep_kappa(const CouplingConfig& tmpl, const EnsembleConfig& ens, const Baths& baths,
                                         const std::vector<double>& kappas, const std::vector<std::int64_t>& Ns,
                                         const GridPolicy& policy = {}) {
    detail::require_homogeneous(ens, "sweep_kappa");
    const std::size_t count = kappas.size() * Ns.size();
    return parallel_map<SweepRow>(count, [&](std::size_t i) {
        CouplingConfig cfg = tmpl;
        cfg.N = Ns[i / kappas.size()];
        cfg.kappa_c = kappas[i % kappas.size()];
        cfg.validate();
        return detail::run_point(cfg, ens, baths, policy);
    });
}

// ---------------------------------------------------------------------------------------
// Initial-state grids

enum class PvMode {
    SameSpin,  // axes (p, v); both retained spins start in the same state
    PEqualsV,  // axes (p1, p2); v1 = p1, v2 = p2
};

struct PvRow {
    double axis1{0.0};
    double axis2{0.0};
    SpinInit spin1{};
    SpinInit spin2{};
    bool feasible{true};
    double c_max{0.0};
    double tau_peak{0.0};
};

/// Fixed coherence factors (N = 2): the products ϰ_c²S, ϰ_c²Γ_c and ϰ_ℓ²Γ_ℓ set directly.
struct AbstractKnobs {
    double phase{std::numbers::pi / 2.0};
    double decay_c{0.0};
    double decay_l{0.0};
};

namespace detail {

inline std::pair<SpinInit, SpinInit> pv_spins(PvMode mode, double a1, double a2) {
    if (mode == PvMode::SameSpin) return {SpinInit{a1, a2}, SpinInit{a1, a2}};
    return {SpinInit{a1, a1}, SpinInit{a2, a2}};
}

template <class Eval>
std::vector<PvRow> grid_rows(PvMode mode, const std::vector<double>& axis1, const std::vector<double>& axis2,
                             Eval&& eval) {
    const std::size_t count = axis1.size() * axis2.size();
    return parallel_map<PvRow>(count, [&](std::size_t i) {
        const double a1 = axis1[i / axis2.size()];
        const double a2 = axis2[i % axis2.size()];
        auto [s1, s2] = pv_spins(mode, a1, a2);
        PvRow row{a1, a2, s1, s2, s1.feasible() && s2.feasible(), 0.0, 0.0};
        if (row.feasible) {
            // Clip rounding-level excursions of |v|² above p(1−p) onto the boundary.
            auto clip = [](SpinInit& s) {
                const double bound = std::sqrt(std::max(0.0, s.p * (1.0 - s.p)));
                if (std::abs(s.v) > bound) s.v *= bound / std::abs(s.v);
            };
            clip(row.spin1);
            clip(row.spin2);
            eval(row);
        }
        return row;
    });
}

} // namespace detail

inline std::vector<PvRow> grid_pv_abstract(PvMode mode, const std::vector<double>& axis1,
                                           const std::vector<double>& axis2, const AbstractKnobs& knobs) {
    CoherenceFactors factors{knobs.phase, knobs.decay_c, knobs.decay_l, {1.0, 0.0}, {1.0, 0.0}};
    return detail::grid_rows(mode, axis1, axis2, [&](PvRow& row) {
        const auto rho = apply_coherence_factors(initial_two_qubit(row.spin1, row.spin2), factors);
        row.c_max = concurrence(rho).value;
    });
}

/// Peak concurrence over a full time series for each initial-state cell. All cells share
/// one bath table and one set of background factors.
inline std::vector<PvRow> grid_pv_dynamic(PvMode mode, const std::vector<double>& axis1,
                                          const std::vector<double>& axis2, const CouplingConfig& cfg,
                                          const EnsembleConfig& ens, const Baths& baths,
                                          const GridPolicy& policy = {}) {
    cfg.validate();
    ens.background.validate(cfg.N);
    const double t_max = default_t_max(cfg, baths.collective, policy);
    const std::size_t steps = resolved_steps(cfg, baths.collective, t_max, policy);
    const BathTables tables = tabulate_baths(uniform_times(t_max, steps), baths, cfg.kappa_l > 0.0);
    std::vector<DephasingSample> samples;
    samples.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i)
        samples.push_back(make_sample(tables.collective[i], tables.gamma_local[i], cfg, ens.background));
    const double factor = rescaled_time_factor(cfg, baths.collective);

    return detail::grid_rows(mode, axis1, axis2, [&](PvRow& row) {
        EnsembleConfig cell = ens;
        cell.spin1 = row.spin1;
        cell.spin2 = row.spin2;
        const TwoQubitDensity rho0 = initial_two_qubit(row.spin1, row.spin2);
        for (const auto& sample : samples) {
            const double c = concurrence(evolve(rho0, sample, cfg, cell)).value;
            if (c > row.c_max) {
                row.c_max = c;
                row.tau_peak = factor * sample.t;
            }
        }
    });
}

/// Index of the feasible row with the largest C_max (first in row order on ties).
inline std::optional<std::size_t> argmax_pv(const std::vector<PvRow>& rows) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].feasible) continue;
        if (!best || rows[i].c_max > rows[*best].c_max) best = i;
    }
    return best;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
    return v;
}

// ---------------------------------------------------------------------------------------
// Large-N limits

struct LimitRow {
    std::int64_t N{2};
    double t{0.0};
    double distance{0.0};
    double limit_concurrence{0.0};
};

/// Max-entry distance between the finite-N state and the matching N → ∞ state
/// (η < 1/4: X state; η > 1/4: product state).
inline std::vector<LimitRow> limit_distances(const CouplingConfig& tmpl, const EnsembleConfig& ens,
                                             const Baths& baths, const std::vector<std::int64_t>& Ns, double t) {
    if (tmpl.eta == 0.25) throw PreconditionError("limit_distances: eta = 1/4 has no closed-form limit");
    return parallel_map<LimitRow>(Ns.size(), [&](std::size_t i) {
        CouplingConfig cfg = tmpl;
        cfg.N = Ns[i];
        const auto rho0 = initial_two_qubit(ens.spin1, ens.spin2);
        const auto rho = evolve(rho0, t, cfg, ens, baths.collective, baths.local);
        const auto limit = cfg.eta < 0.25
                               ? limit_state_small_eta(t, ens.spin1, ens.spin2, cfg, baths.local)
                               : limit_state_large_eta(t, ens.spin1, ens.spin2, cfg, ens, baths.collective,
                                                       baths.local);
        return LimitRow{cfg.N, t, rho.distance(limit), concurrence(limit).value};
    });
}

} // namespace dephasim

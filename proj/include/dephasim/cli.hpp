// cli.hpp — Command-line configuration, subcommand dispatch and exit-code mapping for the dephasim tool

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dephasim/bath.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/experiments.hpp"
#include "dephasim/fit.hpp"
#include "dephasim/table.hpp"

namespace dephasim {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitIo = 3, kExitNumerical = 4 };

class UsageError : public Error {
public:
    using Error::Error;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"timeseries", "sweep-kappa", "sweep-n", "grid-pv",
                                                "sweep-eta",  "limits",      "fit"};
    return names;
}

/// Fully resolved run parameters. Every field maps to one `--key` flag and one config-file key.
struct RunConfig {
    std::string command;

    // couplings and states
    std::int64_t n{2};
    double kappa_c{0.05};
    double kappa_l{0.0};
    double eta{0.0};
    double p{0.5};
    double v{0.48};
    double p_bg{0.5};

    // bath
    double epsilon{1.0};
    double theta{1.0};

    // time grid; 0 selects the automatic grid
    double t_max{0.0};
    std::int64_t steps{0};

    // sweeps
    std::int64_t n_min{2};
    std::int64_t n_max{200};
    std::int64_t n_step{1};
    std::string ns{"2"};
    std::string kappas{"0.04,0.1,0.2,0.4"};
    std::string etas{"0,0.1,0.25,0.3,0.4,0.5"};

    // grid-pv
    std::string mode{"same-spin"};
    bool abstract{false};
    std::int64_t grid_points{51};
    double a1_min{std::numeric_limits<double>::quiet_NaN()};
    double a1_max{std::numeric_limits<double>::quiet_NaN()};
    double a2_min{std::numeric_limits<double>::quiet_NaN()};
    double a2_max{std::numeric_limits<double>::quiet_NaN()};
    double phase{std::numbers::pi / 2.0};
    double decay_c{0.0};
    double decay_l{0.0};

    // limits
    double t{1.0};

    // fit
    std::string input;
    std::string x_column{"n"};
    std::string y_column{"c_max"};
    double x_min{-std::numeric_limits<double>::infinity()};
    double x_max{std::numeric_limits<double>::infinity()};

    // output
    std::string out{"-"};
    std::string format{"csv"};

    bool operator==(const RunConfig&) const = default;
};

namespace detail {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* key) {
    std::vector<T> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw UsageError(std::string("--") + key + ": empty list element");
        item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
        try {
            std::size_t used = 0;
            T value;
            if constexpr (std::is_same_v<T, double>)
                value = std::stod(item, &used);
            else
                value = static_cast<T>(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
            values.push_back(value);
        } catch (const std::logic_error&) {
            throw UsageError(std::string("--") + key + ": cannot parse '" + item + "'");
        }
    }
    if (values.empty()) throw UsageError(std::string("--") + key + ": list is empty");
    return values;
}

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

/// `key = value` lines with `#` comments, turned into `--key value` tokens.
inline std::vector<std::string> config_file_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OutputError("cannot read config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": expected 'key = value'";
            throw UsageError(msg.str());
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (char& c : key) {
            if (c == '_') c = '-';
        }
        if (key.empty() || key == "config") {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": invalid key '" << key << "'";
            throw UsageError(msg.str());
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

inline std::string fmt(double x) { return format_double(x); }

inline void fill_axis_defaults(RunConfig& c) {
    const bool same = c.mode == "same-spin";
    auto fill = [](double& x, double value) {
        if (std::isnan(x)) x = value;
    };
    fill(c.a1_min, 0.0);
    fill(c.a1_max, same ? 1.0 : 0.5);
    fill(c.a2_min, 0.0);
    fill(c.a2_max, 0.5);
}

} // namespace detail

/// `key = value` lines that parse back to the same RunConfig.
inline std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
    using detail::fmt;
    return {{"n", std::to_string(c.n)},
            {"kappa-c", fmt(c.kappa_c)},
            {"kappa-l", fmt(c.kappa_l)},
            {"eta", fmt(c.eta)},
            {"p", fmt(c.p)},
            {"v", fmt(c.v)},
            {"p-bg", fmt(c.p_bg)},
            {"epsilon", fmt(c.epsilon)},
            {"theta", fmt(c.theta)},
            {"t-max", fmt(c.t_max)},
            {"steps", std::to_string(c.steps)},
            {"n-min", std::to_string(c.n_min)},
            {"n-max", std::to_string(c.n_max)},
            {"n-step", std::to_string(c.n_step)},
            {"ns", c.ns},
            {"kappas", c.kappas},
            {"etas", c.etas},
            {"mode", c.mode},
            {"abstract", c.abstract ? "true" : "false"},
            {"grid-points", std::to_string(c.grid_points)},
            {"a1-min", fmt(c.a1_min)},
            {"a1-max", fmt(c.a1_max)},
            {"a2-min", fmt(c.a2_min)},
            {"a2-max", fmt(c.a2_max)},
            {"phase", fmt(c.phase)},
            {"decay-c", fmt(c.decay_c)},
            {"decay-l", fmt(c.decay_l)},
            {"t", fmt(c.t)},
            {"input", c.input},
            {"x-column", c.x_column},
            {"y-column", c.y_column},
            {"x-min", fmt(c.x_min)},
            {"x-max", fmt(c.x_max)},
            {"out", c.out},
            {"format", c.format}};
}

inline std::string config_text(const RunConfig& c) {
    std::string text;
    for (const auto& [k, v] : config_entries(c)) text += k + " = " + v + "\n";
    return text;
}

inline CouplingConfig coupling_of(const RunConfig& c) { return {c.kappa_c, c.kappa_l, c.eta, c.n}; }

inline EnsembleConfig ensemble_of(const RunConfig& c) {
    EnsembleConfig ens;
    ens.background = Background::homogeneous(c.p_bg);
    ens.spin1 = SpinInit{c.p, c.v};
    ens.spin2 = SpinInit{c.p, c.v};
    return ens;
}

inline BathConfig bath_of(const RunConfig& c) {
    BathConfig b;
    b.epsilon = c.epsilon;
    b.theta = c.theta;
    return b;
}

inline std::vector<std::int64_t> n_range(const RunConfig& c) {
    std::vector<std::int64_t> ns;
    for (std::int64_t n = c.n_min; n <= c.n_max; n += c.n_step) ns.push_back(n);
    return ns;
}

/// Domain invariants of the resolved configuration. Throws ValidationError or UsageError.
inline void validate(const RunConfig& c) {
    coupling_of(c).validate();
    ensemble_of(c).validate(c.n);
    bath_of(c).validate();
    if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) throw ValidationError("t-max must be >= 0 (0 = automatic)");
    if (c.steps != 0 && c.steps < 2) throw ValidationError("steps must be >= 2 (0 = automatic)");
    if (c.n_min < 2 || c.n_max < c.n_min || c.n_step < 1)
        throw ValidationError("N range needs 2 <= n-min <= n-max and n-step >= 1");
    for (auto n : detail::parse_list<std::int64_t>(c.ns, "ns")) {
        if (n < 2) throw ValidationError("ns: every N must be >= 2");
    }
    for (double k : detail::parse_list<double>(c.kappas, "kappas")) {
        if (!(k >= 0.0) || !std::isfinite(k)) throw ValidationError("kappas: every kappa_c must be >= 0");
    }
    for (double e : detail::parse_list<double>(c.etas, "etas")) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw ValidationError("etas: every eta must be >= 0");
    }
    if (c.mode != "same-spin" && c.mode != "p-equals-v") throw UsageError("mode must be same-spin or p-equals-v");
    if (c.grid_points < 2) throw ValidationError("grid-points must be >= 2");
    for (double a : {c.a1_min, c.a1_max, c.a2_min, c.a2_max}) {
        if (!std::isfinite(a)) throw ValidationError("grid axis bounds must be finite");
    }
    if (c.a1_min > c.a1_max || c.a2_min > c.a2_max) throw ValidationError("grid axis min exceeds max");
    if (!std::isfinite(c.phase)) throw ValidationError("phase must be finite");
    if (!(c.decay_c >= 0.0) || !(c.decay_l >= 0.0)) throw ValidationError("decay knobs must be >= 0");
    if (!(c.t >= 0.0) || !std::isfinite(c.t)) throw ValidationError("t must be >= 0");
    if (c.format != "csv" && c.format != "json") throw UsageError("format must be csv or json");
    if (c.command == "fit" && c.input.empty()) throw UsageError("fit requires --input");
    if (c.command == "limits" && c.eta == 0.25) throw ValidationError("limits: eta = 1/4 has no closed-form limit");
}

struct ParseOutcome {
    RunConfig config;
    bool exit_now{false};  // help or version was printed
    int exit_code{kExitOk};
};

/// Parses argv (argv[0] is the program name). `--config FILE` lines are merged in front of the
/// command-line flags, so flags win. Throws UsageError/ValidationError on bad input.
inline ParseOutcome parse_args(const std::vector<std::string>& argv, std::ostream& out = std::cout) {
    std::vector<std::string> tokens;
    std::vector<std::string> cli;
    std::string config_path;
    for (std::size_t i = 1; i < argv.size(); ++i) {
        const std::string& a = argv[i];
        if (a == "--config") {
            if (i + 1 >= argv.size()) throw UsageError("--config needs a file argument");
            config_path = argv[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            cli.push_back(a);
        }
    }
    if (!config_path.empty()) tokens = detail::config_file_tokens(config_path);
    tokens.insert(tokens.end(), cli.begin(), cli.end());

    ParseOutcome result;
    RunConfig& c = result.config;

    CLI::App app{"Exact dephasing of N spins in local and collective baths: two-qubit entanglement", "dephasim"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.add_option("--config", config_path, "key = value file; command-line flags take precedence");

    app.add_option("--n", c.n, "total number of spins N");
    app.add_option("--kappa-c", c.kappa_c, "collective coupling");
    app.add_option("--kappa-l", c.kappa_l, "local coupling");
    app.add_option("--eta", c.eta, "collective coupling scales as kappa_c / N^eta");
    app.add_option("--p", c.p, "population of the two retained spins");
    app.add_option("--v", c.v, "coherence of the two retained spins (real)");
    app.add_option("--p-bg", c.p_bg, "population of the N-2 background spins");
    app.add_option("--epsilon", c.epsilon, "cutoff-to-thermal frequency ratio");
    app.add_option("--theta", c.theta, "temperature in units of the reference frequency");
    app.add_option("--t-max", c.t_max, "final time (0 = 2 pi in rescaled time)");
    app.add_option("--steps", c.steps, "grid points (0 = resolve the P_N peaks)");
    app.add_option("--n-min", c.n_min, "smallest N of a sweep");
    app.add_option("--n-max", c.n_max, "largest N of a sweep");
    app.add_option("--n-step", c.n_step, "N increment of a sweep");
    app.add_option("--ns", c.ns, "comma-separated N values");
    app.add_option("--kappas", c.kappas, "comma-separated kappa_c values");
    app.add_option("--etas", c.etas, "comma-separated eta values");
    app.add_option("--mode", c.mode, "grid-pv axes: same-spin (p, v) or p-equals-v (p1, p2)");
    app.add_option("--abstract", c.abstract, "grid-pv with fixed phase/decay knobs at N = 2");
    app.add_option("--grid-points", c.grid_points, "points per grid axis");
    app.add_option("--a1-min", c.a1_min, "first grid axis lower bound");
    app.add_option("--a1-max", c.a1_max, "first grid axis upper bound");
    app.add_option("--a2-min", c.a2_min, "second grid axis lower bound");
    app.add_option("--a2-max", c.a2_max, "second grid axis upper bound");
    app.add_option("--phase", c.phase, "abstract mode: kappa^2 S");
    app.add_option("--decay-c", c.decay_c, "abstract mode: kappa_c^2 Gamma_c");
    app.add_option("--decay-l", c.decay_l, "abstract mode: kappa_l^2 Gamma_l");
    app.add_option("--t", c.t, "evaluation time for limits");
    app.add_option("--input", c.input, "table to re-fit");
    app.add_option("--x-column", c.x_column, "fit abscissa column");
    app.add_option("--y-column", c.y_column, "fit ordinate column (fitted as ln y)");
    app.add_option("--x-min", c.x_min, "fit range lower bound");
    app.add_option("--x-max", c.x_max, "fit range upper bound");
    app.add_option("--out", c.out, "output path, - for standard output");
    app.add_option("--format", c.format, "csv or json");

    app.add_subcommand("timeseries", "concurrence versus rescaled time");
    app.add_subcommand("sweep-kappa", "peak concurrence versus kappa_c");
    app.add_subcommand("sweep-n", "peak concurrence and collapse time versus N");
    app.add_subcommand("grid-pv", "peak concurrence over an initial-state grid");
    app.add_subcommand("sweep-eta", "peak concurrence versus N for several coupling scalings");
    app.add_subcommand("limits", "distance to the large-N limit state");
    app.add_subcommand("fit", "exponential fit of an existing table");

    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        result.exit_now = true;
        return result;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        result.exit_now = true;
        return result;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        result.exit_now = true;
        return result;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
    detail::fill_axis_defaults(c);
    validate(c);
    return result;
}

// ---------------------------------------------------------------------------------------
// Subcommands

namespace detail {

inline Baths baths_of(const RunConfig& c) { return Baths::same(bath_of(c)); }

inline OutputTable sweep_table(const std::vector<SweepRow>& rows) {
    OutputTable table({"eta", "kappa_c", "n", "kappa_eff", "c_max", "t_peak", "tau_peak", "t_c", "tau_c",
                       "collapse", "steps"});
    for (const auto& r : rows) {
        CouplingConfig cfg{r.kappa_c, 0.0, r.eta, r.N};
        table.add_row({r.eta, r.kappa_c, r.N, cfg.effective_kappa_c(), r.c_max, r.t_peak, r.tau_peak, r.collapse.t,
                       r.collapse.tau, std::string(to_string(r.collapse.status)), static_cast<std::int64_t>(r.steps)});
        for (const auto& w : r.warnings) {
            std::ostringstream msg;
            msg << "N = " << r.N << ", kappa_c = " << r.kappa_c << ": " << w;
            table.add_warning(msg.str());
        }
    }
    return table;
}

inline OutputTable run_timeseries(const RunConfig& c) {
    const auto cfg = coupling_of(c);
    const auto bath = bath_of(c);
    const GridPolicy policy;
    const double t_max = c.t_max > 0.0 ? c.t_max : default_t_max(cfg, bath, policy);
    const std::size_t steps =
        c.steps > 0 ? static_cast<std::size_t>(c.steps) : resolved_steps(cfg, bath, t_max, policy);
    const TimeSeries series = time_series(cfg, ensemble_of(c), baths_of(c), t_max, steps);

    OutputTable table({"t", "tau", "concurrence", "abs_p_n", "s", "gamma_l", "gamma_c"});
    for (const auto& r : series.rows) table.add_row({r.t, r.tau, r.concurrence, r.abs_p_n, r.S, r.gamma_l, r.gamma_c});
    for (const auto& w : series.warnings) table.add_warning(w);
    return table;
}

inline OutputTable run_grid_pv(const RunConfig& c) {
    const PvMode mode = c.mode == "same-spin" ? PvMode::SameSpin : PvMode::PEqualsV;
    const auto count = static_cast<std::size_t>(c.grid_points);
    const auto axis1 = linspace(c.a1_min, c.a1_max, count);
    const auto axis2 = linspace(c.a2_min, c.a2_max, count);
    const auto rows = c.abstract
                          ? grid_pv_abstract(mode, axis1, axis2, {c.phase, c.decay_c, c.decay_l})
                          : grid_pv_dynamic(mode, axis1, axis2, coupling_of(c), ensemble_of(c), baths_of(c));

    const bool same = mode == PvMode::SameSpin;
    OutputTable table({same ? "p" : "p1", same ? "v" : "p2", "feasible", "c_max", "tau_peak"});
    for (const auto& r : rows) table.add_row({r.axis1, r.axis2, r.feasible, r.c_max, r.tau_peak});
    if (const auto best = argmax_pv(rows)) {
        table.set_meta("argmax-axis1", fmt(rows[*best].axis1));
        table.set_meta("argmax-axis2", fmt(rows[*best].axis2));
        table.set_meta("argmax-c-max", fmt(rows[*best].c_max));
    }
    return table;
}

inline OutputTable run_limits(const RunConfig& c) {
    const auto ns = parse_list<std::int64_t>(c.ns, "ns");
    const auto rows = limit_distances(coupling_of(c), ensemble_of(c), baths_of(c), ns, c.t);
    OutputTable table({"n", "eta", "t", "distance", "limit_concurrence"});
    for (const auto& r : rows) table.add_row({r.N, c.eta, r.t, r.distance, r.limit_concurrence});
    return table;
}

/// Numeric column of a CSV table written by this tool (`#` lines skipped, first line is the header).
inline std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw OutputError("cannot read input table '" + path + "'");
    std::string line;
    std::vector<std::string> header;
    std::vector<double> values;
    std::ptrdiff_t index = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (header.empty()) {
            header = fields;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] == column) index = static_cast<std::ptrdiff_t>(i);
            }
            if (index < 0) throw UsageError("input table has no column '" + column + "'");
            continue;
        }
        if (static_cast<std::size_t>(index) >= fields.size()) throw UsageError("input table row is too short");
        try {
            values.push_back(std::stod(fields[static_cast<std::size_t>(index)]));
        } catch (const std::logic_error&) {
            values.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    if (header.empty()) throw UsageError("input table '" + path + "' has no header");
    return values;
}

inline OutputTable run_fit(const RunConfig& c) {
    const auto xs_all = read_csv_column(c.input, c.x_column);
    const auto ys_all = read_csv_column(c.input, c.y_column);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < xs_all.size(); ++i) {
        if (xs_all[i] >= c.x_min && xs_all[i] <= c.x_max) {
            xs.push_back(xs_all[i]);
            ys.push_back(ys_all[i]);
        }
    }
    const FitResult fit = fit_exponential(xs, ys);
    OutputTable table({"slope", "intercept", "std_error", "r_squared", "x_min", "x_max", "used", "excluded"});
    table.add_row({fit.slope, fit.intercept, fit.std_error, fit.r_squared, fit.x_min, fit.x_max,
                   static_cast<std::int64_t>(fit.used), static_cast<std::int64_t>(fit.excluded)});
    if (fit.excluded > 0) {
        std::ostringstream msg;
        msg << fit.excluded << " point(s) with non-positive " << c.y_column << " excluded from the fit";
        table.add_warning(msg.str());
    }
    return table;
}

} // namespace detail

/// Runs the configured subcommand and returns its table, metadata included.
inline OutputTable execute(const RunConfig& c) {
    OutputTable table;
    const std::string& cmd = c.command;
    if (cmd == "timeseries") {
        table = detail::run_timeseries(c);
    } else if (cmd == "sweep-kappa") {
        table = detail::sweep_table(sweep_kappa(coupling_of(c), ensemble_of(c), detail::baths_of(c),
                                                detail::parse_list<double>(c.kappas, "kappas"),
                                                detail::parse_list<std::int64_t>(c.ns, "ns")));
    } else if (cmd == "sweep-n") {
        table = detail::sweep_table(sweep_N(coupling_of(c), ensemble_of(c), detail::baths_of(c), n_range(c)));
    } else if (cmd == "sweep-eta") {
        table = detail::sweep_table(sweep_eta(coupling_of(c), ensemble_of(c), detail::baths_of(c),
                                              detail::parse_list<double>(c.etas, "etas"), n_range(c)));
    } else if (cmd == "grid-pv") {
        table = detail::run_grid_pv(c);
    } else if (cmd == "limits") {
        table = detail::run_limits(c);
    } else if (cmd == "fit") {
        table = detail::run_fit(c);
    } else {
        throw UsageError("unknown subcommand '" + cmd + "'");
    }

    OutputTable full(table.columns());
    full.set_meta("tool", std::string("dephasim ") + kVersion);
    full.set_meta("command", cmd);
    for (const auto& [k, v] : config_entries(c)) full.set_meta(k, v);
    for (const auto& [k, v] : table.meta()) full.set_meta(k, v);
    for (const auto& w : table.warnings()) full.add_warning(w);
    for (const auto& row : table.rows()) full.add_row(row);
    return full;
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        const ParseOutcome parsed = parse_args(argv, out);
        if (parsed.exit_now) return parsed.exit_code;
        const RunConfig& c = parsed.config;
        const OutputTable table = execute(c);
        const OutputFormat format = c.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        if (c.out == "-") {
            out << table.render(format);
            out.flush();
            if (!out) throw OutputError("failed writing to standard output");
        } else {
            emit(table, format, c.out);
        }
        for (const auto& w : table.warnings()) err << "warning: " << w << "\n";
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutputError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const FitError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace dephasim

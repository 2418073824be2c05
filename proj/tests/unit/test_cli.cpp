// test_cli.cpp — Argument parsing, config files, exit codes and output determinism

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dephasim/cli.hpp"

using namespace dephasim;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dephasim");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("dephasim_cli_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string header_line(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') return line;
    }
    return {};
}

RunConfig parse(std::vector<std::string> args) {
    args.insert(args.begin(), "dephasim");
    return parse_args(args).config;
}

} // namespace

TEST(Cli, DefaultsAreFilled) {
    const RunConfig c = parse({"timeseries", "--n", "4", "--kappa-c", "0.05", "--p", "0.5", "--v", "0.48"});
    EXPECT_EQ(c.command, "timeseries");
    EXPECT_EQ(c.n, 4);
    EXPECT_EQ(c.epsilon, 1.0);
    EXPECT_EQ(c.theta, 1.0);
    EXPECT_EQ(c.kappa_l, 0.0);
    EXPECT_EQ(c.format, "csv");
    EXPECT_EQ(c.out, "-");
}

TEST(Cli, SweepNConfiguration) {
    const RunConfig c = parse({"sweep-n", "--n-min", "2", "--n-max", "200", "--kappa-c", "0.05"});
    EXPECT_EQ(c.command, "sweep-n");
    EXPECT_EQ(n_range(c).size(), 199u);
    EXPECT_EQ(c.p, 0.5);
    EXPECT_EQ(c.v, 0.48);
    EXPECT_EQ(c.kappa_c, 0.05);
}

TEST(Cli, InvariantViolationExitsWithUsageCode) {
    const CliRun r = run_cli({"timeseries", "--p", "1.2"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("population p must lie in [0, 1]"), std::string::npos);
    EXPECT_EQ(run_cli({"timeseries", "--v", "0.6"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"timeseries", "--n", "1"}).code, kExitUsage);
}

TEST(Cli, UnknownFlagsAndSubcommands) {
    EXPECT_EQ(run_cli({"timeseries", "--bogus", "1"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"dance"}).code, kExitUsage);
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"timeseries", "--format", "xml"}).code, kExitUsage);
}

TEST(Cli, HelpAndVersion) {
    const CliRun help = run_cli({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("sweep-n"), std::string::npos);
    const CliRun version = run_cli({"--version"});
    EXPECT_EQ(version.code, kExitOk);
    EXPECT_EQ(version.out, std::string(kVersion) + "\n");
}

TEST(Cli, ConfigFileMergedWithFlagsWinning) {
    const std::string path = temp_path("merge.cfg");
    write_file(path, "# run settings\nkappa_c = 0.2\nn = 7   # spins\n\neta=0.3\n");
    const RunConfig c = parse({"timeseries", "--config", path, "--n", "9"});
    EXPECT_EQ(c.kappa_c, 0.2);
    EXPECT_EQ(c.eta, 0.3);
    EXPECT_EQ(c.n, 9);
    std::remove(path.c_str());
}

TEST(Cli, ConfigFileRejectsUnknownKeys) {
    const std::string path = temp_path("unknown.cfg");
    write_file(path, "kappa-c = 0.2\nflux = 3\n");
    EXPECT_EQ(run_cli({"timeseries", "--config", path}).code, kExitUsage);
    write_file(path, "just words\n");
    EXPECT_EQ(run_cli({"timeseries", "--config", path}).code, kExitUsage);
    std::remove(path.c_str());
    EXPECT_EQ(run_cli({"timeseries", "--config", temp_path("missing.cfg")}).code, kExitIo);
}

TEST(Cli, EchoedConfigRoundTrips) {
    const RunConfig original = parse({"grid-pv", "--mode", "p-equals-v", "--kappa-c", "0.123456789012345678",
                                      "--ns", "3,5,8", "--x-min", "10", "--epsilon", "1.5", "--abstract", "true"});
    const std::string path = temp_path("roundtrip.cfg");
    write_file(path, config_text(original));
    const RunConfig back = parse({"grid-pv", "--config", path});
    EXPECT_EQ(back, original);
    std::remove(path.c_str());

    const RunConfig defaults = parse({"fit", "--input", "table.csv"});
    write_file(path, config_text(defaults));
    EXPECT_EQ(parse({"fit", "--config", path}), defaults);
    std::remove(path.c_str());
}

TEST(Cli, TimeseriesColumns) {
    const CliRun r = run_cli({"timeseries", "--n", "4", "--kappa-c", "0.2", "--t-max", "10", "--steps", "11"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(header_line(r.out), "t,tau,concurrence,abs_p_n,s,gamma_l,gamma_c");
    EXPECT_NE(r.out.find("# command = timeseries\n"), std::string::npos);
    EXPECT_NE(r.out.find("# tool = dephasim "), std::string::npos);
}

TEST(Cli, SweepAndGridColumns) {
    const CliRun sweep = run_cli({"sweep-n", "--n-min", "2", "--n-max", "3", "--kappa-c", "0.4"});
    ASSERT_EQ(sweep.code, kExitOk) << sweep.err;
    EXPECT_EQ(header_line(sweep.out), "eta,kappa_c,n,kappa_eff,c_max,t_peak,tau_peak,t_c,tau_c,collapse,steps");
    const CliRun grid = run_cli({"grid-pv", "--abstract", "true", "--grid-points", "5"});
    ASSERT_EQ(grid.code, kExitOk) << grid.err;
    EXPECT_EQ(header_line(grid.out), "p,v,feasible,c_max,tau_peak");
    EXPECT_NE(grid.out.find("# argmax-axis1 = 0.5\n"), std::string::npos);
    const CliRun limits = run_cli({"limits", "--ns", "10,100", "--eta", "0.5", "--kappa-c", "0.3"});
    ASSERT_EQ(limits.code, kExitOk) << limits.err;
    EXPECT_EQ(header_line(limits.out), "n,eta,t,distance,limit_concurrence");
}

TEST(Cli, JsonOutput) {
    const CliRun r = run_cli({"grid-pv", "--abstract", "true", "--grid-points", "3", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["meta"]["command"], "grid-pv");
    EXPECT_EQ(doc["rows"].size(), 9u);
    EXPECT_TRUE(doc["rows"][0].contains("c_max"));
}

TEST(Cli, RerunsAreByteIdentical) {
    const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
    const std::vector<std::string> args{"sweep-kappa", "--ns", "2,4", "--kappas", "0.1,0.3"};
    auto with_out = [&](const std::string& path) {
        auto v = args;
        v.insert(v.end(), {"--out", path});
        return v;
    };
    ::setenv("DEPHASIM_THREADS", "1", 1);
    ASSERT_EQ(run_cli(with_out(a)).code, kExitOk);
    ::setenv("DEPHASIM_THREADS", "8", 1);
    ASSERT_EQ(run_cli(with_out(b)).code, kExitOk);
    ::unsetenv("DEPHASIM_THREADS");
    const std::string first = read_file(a);
    // The echoed config names the output path; compare everything else byte for byte.
    auto strip_out = [](std::string s) {
        const auto pos = s.find("# out = ");
        return s.erase(pos, s.find('\n', pos) - pos);
    };
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(strip_out(first), strip_out(read_file(b)));
    ASSERT_EQ(run_cli(with_out(a)).code, kExitOk);
    EXPECT_EQ(read_file(a), first);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST(Cli, UnwritableOutputExitsWithIoCode) {
    const CliRun r = run_cli({"grid-pv", "--abstract", "true", "--grid-points", "2", "--out", "/nonexistent-dir/x.csv"});
    EXPECT_EQ(r.code, kExitIo);
}

TEST(Cli, FitSubcommandRefitsATable) {
    const std::string path = temp_path("fit_input.csv");
    std::string text = "# comment\nn,c_max\n";
    for (int n = 1; n <= 12; ++n) text += std::to_string(n) + "," + format_double(2.0 * std::exp(-0.3 * n)) + "\n";
    text += "13,0\n";
    write_file(path, text);
    const CliRun r = run_cli({"fit", "--input", path, "--x-min", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(header_line(r.out), "slope,intercept,std_error,r_squared,x_min,x_max,used,excluded");
    std::istringstream in(r.out);
    std::string line, row;
    while (std::getline(in, line)) row = line;
    EXPECT_NEAR(std::stod(row), -0.3, 1e-12);
    EXPECT_NE(row.find(",11,1"), std::string::npos);
    EXPECT_NE(r.err.find("excluded"), std::string::npos);

    write_file(path, "n,c_max\n1,0\n2,0\n");
    EXPECT_EQ(run_cli({"fit", "--input", path}).code, kExitNumerical);
    EXPECT_EQ(run_cli({"fit", "--input", path, "--y-column", "zzz"}).code, kExitUsage);
    std::remove(path.c_str());
    EXPECT_EQ(run_cli({"fit", "--input", temp_path("nope.csv")}).code, kExitIo);
    EXPECT_EQ(run_cli({"fit"}).code, kExitUsage);
}

#ifdef DEPHASIM_CLI_PATH
TEST(Cli, ExecutableExitCodes) {
    const std::string exe = DEPHASIM_CLI_PATH;
    EXPECT_EQ(std::system((exe + " timeseries --p 1.2 > /dev/null 2>&1").c_str()) >> 8, 2);
    EXPECT_EQ(std::system((exe + " grid-pv --abstract true --grid-points 3 > /dev/null 2>&1").c_str()) >> 8, 0);
}
#endif

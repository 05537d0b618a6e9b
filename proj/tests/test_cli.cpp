// Run configuration (key=value files, dotted keys, dB conversion, sweeps,
// serialization round-trip) plus end-to-end runs of the command-line binary.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fadenet/runconfig.hpp"

using namespace fadenet;
using cli::RunConfig;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

struct CliRun {
    int exit_code;
    std::string output;  // contents of --output file
};

CliRun run_cli(const std::string& args, bool with_output_file = true) {
    static int counter = 0;
    std::string out_path = "/tmp/fadenet_cli_test_" + std::to_string(counter++) + ".out";
    std::string cmd = std::string(FADENET_CLI_PATH) + " " + args;
    if (with_output_file) cmd += " --output " + out_path;
    cmd += " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    r.output = with_output_file ? slurp(out_path) : std::string();
    std::remove(out_path.c_str());
    return r;
}

std::string write_config(const std::string& text) {
    static int counter = 0;
    std::string path = "/tmp/fadenet_cli_cfg_" + std::to_string(counter++) + ".cfg";
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("apply_key: aliases, dB conversion, per-side and symmetric fading keys") {
    RunConfig cfg;
    cli::apply_key(cfg, "lambda", "0.001");
    cli::apply_key(cfg, "alpha", "4");
    cli::apply_key(cfg, "noise", "1e-9");
    CHECK(cfg.network.lambda_bs == 0.001);
    CHECK(cfg.network.alpha == 4.0);
    CHECK(cfg.network.noise == 1e-9);

    cli::apply_key(cfg, "T_dB", "3");
    CHECK(std::fabs(cfg.coverage_T - std::pow(10.0, 0.3)) < 1e-12);

    cli::apply_key(cfg, "kappa", "2.5");  // bare fading key: both ends
    CHECK(cfg.desired.kappa == 2.5);
    CHECK(cfg.interferer.kappa == 2.5);
    cli::apply_key(cfg, "desired.mu", "3");
    CHECK(cfg.desired.mu == 3.0);
    CHECK(cfg.interferer.mu == 1.0);

    cli::apply_key(cfg, "desired.model", "shadowed_kappa_mu");
    cli::apply_key(cfg, "desired.m", "2");
    auto model = cfg.desired.build();
    auto* p = std::get_if<fading::ShadowedKappaMuParams>(&model);
    REQUIRE(p != nullptr);
    CHECK(p->kappa == 2.5);
    CHECK(p->mu == 3.0);
    CHECK(p->m == 2.0);

    cli::apply_key(cfg, "sim.snapshots", "5000");
    CHECK(cfg.sim.snapshots == 5000);

    CHECK_THROWS_WITH_AS(cli::apply_key(cfg, "bogus.key", "1"),
                         doctest::Contains("bogus.key"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cli::apply_key(cfg, "alpha", "fast"),
                         doctest::Contains("alpha"), std::invalid_argument);
    CHECK_THROWS_AS(cli::apply_key(cfg, "desired.model", "weibull"),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli::apply_key(cfg, "sim.snapshots", "2.5"), std::invalid_argument);
}

TEST_CASE("config text parsing: comments, whitespace, line errors") {
    auto cfg = cli::parse_config_text(
        "# experiment\n"
        "alpha = 3.5   # inline comment\n"
        "\n"
        "desired.model = nakagami\n"
        "desired.m = 2\n");
    CHECK(cfg.network.alpha == 3.5);
    CHECK(cfg.desired.model == "nakagami");
    CHECK_THROWS_WITH_AS(cli::parse_config_text("alpha 3.5\n", "cfg"),
                         doctest::Contains("cfg:1"), std::invalid_argument);
}

TEST_CASE("serialize round-trip reproduces the configuration") {
    RunConfig cfg;
    cli::apply_key(cfg, "lambda", "0.002");
    cli::apply_key(cfg, "alpha", "3.7");
    cli::apply_key(cfg, "desired.model", "kappa_mu");
    cli::apply_key(cfg, "desired.kappa", "4.25");
    cli::apply_key(cfg, "interferer.model", "eta_mu");
    cli::apply_key(cfg, "interferer.eta", "0.3");
    cli::apply_key(cfg, "modulation.name", "mqam");
    cli::apply_key(cfg, "modulation.M", "16");
    cli::apply_key(cfg, "sim.seed", "99");
    cli::apply_key(cfg, "T", "2.5");
    auto back = cli::parse_config_text(cli::serialize(cfg));
    CHECK(cli::serialize(back) == cli::serialize(cfg));
    CHECK(back.network.lambda_bs == 0.002);
    CHECK(back.desired.kappa == 4.25);
    CHECK(back.modulation().name == "16-QAM");
    CHECK(back.sim.seed == 99);
    CHECK(back.coverage_T == 2.5);
}

TEST_CASE("sweep parsing: linear, log, explicit list") {
    auto lin = cli::parse_sweep("alpha=3:4:5");
    CHECK(lin.key == "alpha");
    REQUIRE(lin.values.size() == 5);
    CHECK(lin.values[0] == 3.0);
    CHECK(std::fabs(lin.values[2] - 3.5) < 1e-15);
    CHECK(lin.values[4] == 4.0);

    auto lg = cli::parse_sweep("lambda=1e-6:1e-2:3(log)");
    REQUIRE(lg.values.size() == 3);
    CHECK(std::fabs(lg.values[1] - 1e-4) < 1e-18);

    auto list = cli::parse_sweep("kappa=0.5,2,20");
    REQUIRE(list.values.size() == 3);
    CHECK(list.values[1] == 2.0);

    CHECK_THROWS_AS(cli::parse_sweep("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_sweep("alpha=3:4:0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_sweep("x=-1:1:3(log)"), std::invalid_argument);
}

TEST_CASE("binary: coverage CSV with a sweep") {
    auto r = run_cli("coverage --sweep T=0.5,1,2");
    REQUIRE(r.exit_code == 0);
    auto lines = split(r.output, '\n');
    REQUIRE(lines.size() >= 4);
    CHECK(lines[0] == "metric,T,value,error_estimate,method,wall_time_ms,status");
    double prev = 1.1;
    for (int i = 1; i <= 3; ++i) {
        auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 7);
        CHECK(cells[0] == "coverage");
        CHECK(cells[6] == "ok");
        double v = std::stod(cells[2]);
        CHECK((v > 0.0 && v < 1.0));
        CHECK(v < prev);  // coverage falls with the threshold
        prev = v;
    }
}

TEST_CASE("binary: plotdata format and mgf subcommand") {
    auto r = run_cli("mgf --format plotdata");
    REQUIRE(r.exit_code == 0);
    auto lines = split(r.output, '\n');
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0].rfind("# fadenet", 0) == 0);
    CHECK(lines[1].rfind("# columns:", 0) == 0);
    auto cells = split(lines[2], ' ');
    REQUIRE(cells.size() == 6);
    CHECK(cells[0] == "mgf");
    double v = std::stod(cells[1]);
    CHECK((v > 0.0 && v < 1.0));
}

TEST_CASE("binary: simulate is seed-reproducible and emits three metrics") {
    std::string cfg = write_config("desired.model = nakagami\ndesired.m = 2\n");
    std::string args = "simulate --config " + cfg + " --snapshots 2000 --seed 11";
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    // drop the wall_time_ms column before comparing runs
    auto stable = [](const std::string& csv) {
        std::string out;
        for (auto& line : split(csv, '\n')) {
            auto cells = split(line, ',');
            if (cells.size() >= 6) cells.erase(cells.end() - 2);
            for (std::size_t i = 0; i < cells.size(); ++i)
                out += (i ? "," : "") + cells[i];
            out += "\n";
        }
        return out;
    };
    CHECK(stable(a.output) == stable(b.output));
    auto lines = split(a.output, '\n');
    REQUIRE(lines.size() >= 4);
    CHECK(split(lines[1], ',')[0] == "coverage");
    CHECK(split(lines[2], ',')[0] == "rate");
    CHECK(split(lines[3], ',')[0] == "bep");
    auto c = run_cli("simulate --config " + cfg + " --snapshots 2000 --seed 12");
    CHECK(stable(a.output) != stable(c.output));
    std::remove(cfg.c_str());
}

TEST_CASE("binary: bad inputs exit nonzero") {
    std::string cfg = write_config("nonsense.key = 1\n");
    CHECK(run_cli("coverage --config " + cfg).exit_code == 1);
    std::remove(cfg.c_str());
    CHECK(run_cli("coverage --config /no/such/file.cfg").exit_code == 1);
    CHECK(run_cli("frobnicate", false).exit_code != 0);
    CHECK(run_cli("coverage --sweep a=1:2:3 --sweep b=1:2:3 --sweep c=1:2:3").exit_code ==
          1);
}

TEST_CASE("binary: two-axis sweep emits the full grid in row-major order") {
    auto r = run_cli("rate --sweep alpha=3,4 --sweep kappa=1,2,4");
    REQUIRE(r.exit_code == 0);
    auto lines = split(r.output, '\n');
    REQUIRE(lines.size() >= 7);
    CHECK(lines[0] == "metric,alpha,kappa,value,error_estimate,method,wall_time_ms,status");
    const double want[6][2] = {{3, 1}, {3, 2}, {3, 4}, {4, 1}, {4, 2}, {4, 4}};
    for (int i = 0; i < 6; ++i) {
        auto cells = split(lines[1 + i], ',');
        REQUIRE(cells.size() == 8);
        CHECK(std::stod(cells[1]) == want[i][0]);
        CHECK(std::stod(cells[2]) == want[i][1]);
        CHECK(cells[7] == "ok");
    }
}

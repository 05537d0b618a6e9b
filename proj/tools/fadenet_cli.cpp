// fadenet: batch front end for the coverage / rate / BEP analysis library.
//
// Subcommands: coverage, rate, bep, mgf, simulate, validate.  Each runs over
// an optional 1-D or 2-D parameter sweep and emits one row per grid point
// (CSV or gnuplot-style plot data).  Grid points are dispatched to a worker
// pool (FADENET_WORKERS); rows are emitted in grid order regardless of
// completion order, and per-snapshot random streams make simulation results
// independent of the worker count.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fadenet/metrics.hpp"
#include "fadenet/runconfig.hpp"
#include "fadenet/simulator.hpp"
#include "fadenet/validation.hpp"

namespace {

using fadenet::cli::RunConfig;
using fadenet::cli::SweepSpec;
using fadenet::metrics::MetricResult;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct Row {
    std::vector<std::string> cells;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

void write_table(const Table& t, const std::string& format, const std::string& title,
                 std::ostream& out) {
    if (format == "plotdata") {
        out << "# fadenet " << title << "\n# columns:";
        for (const auto& h : t.header) out << " " << h;
        out << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.cells.size(); ++i)
                out << (i ? " " : "") << r.cells[i];
            out << "\n";
        }
    } else {
        for (std::size_t i = 0; i < t.header.size(); ++i)
            out << (i ? "," : "") << t.header[i];
        out << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.cells.size(); ++i)
                out << (i ? "," : "") << r.cells[i];
            out << "\n";
        }
    }
}

int worker_count() {
    if (const char* w = std::getenv("FADENET_WORKERS")) {
        int n = std::atoi(w);
        if (n >= 1) return n;
    }
    return 1;
}

// One metric evaluation = (name, result); a grid point may yield several.
struct Evaluated {
    std::string metric;
    MetricResult res;
    bool ok = true;
    std::string error;
};

std::vector<Evaluated> evaluate(const std::string& sub, const RunConfig& cfg) {
    std::vector<Evaluated> out;
    auto link = cfg.link();
    if (sub == "coverage") {
        out.push_back({"coverage", fadenet::metrics::coverage(link, cfg.coverage_T, cfg.aw)});
    } else if (sub == "rate") {
        out.push_back({"rate", fadenet::metrics::ergodic_rate(link)});
    } else if (sub == "bep") {
        out.push_back({"bep", fadenet::metrics::bep(link, cfg.modulation())});
    } else if (sub == "mgf") {
        auto m = fadenet::sinrmgf::mgf_sinr(link, cfg.mgf_s);
        out.push_back({"mgf", {m.real(), 0.0, fadenet::metrics::Method::quadrature}});
    } else if (sub == "simulate") {
        auto est = fadenet::simulator::estimate_all(link, {cfg.coverage_T},
                                                    cfg.modulation(), cfg.sim);
        out.push_back({"coverage", est.coverage[0]});
        out.push_back({"rate", est.rate});
        out.push_back({"bep", est.bep});
    } else {
        throw std::logic_error("unknown subcommand " + sub);
    }
    return out;
}

int run_metric(const std::string& sub, const RunConfig& base,
               const std::vector<SweepSpec>& sweeps, const std::string& format,
               std::ostream& out) {
    // Grid: outer sweep 0, inner sweep 1 (row-major, deterministic order).
    std::size_t n0 = sweeps.size() > 0 ? sweeps[0].values.size() : 1;
    std::size_t n1 = sweeps.size() > 1 ? sweeps[1].values.size() : 1;
    std::size_t npoints = n0 * n1;

    std::vector<std::vector<Row>> results(npoints);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= npoints) break;
            RunConfig cfg = base;
            std::vector<double> svals;
            if (!sweeps.empty()) {
                std::size_t i0 = i / n1, i1 = i % n1;
                svals.push_back(sweeps[0].values[i0]);
                fadenet::cli::apply_key(cfg, sweeps[0].key, fmt(sweeps[0].values[i0]));
                if (sweeps.size() > 1) {
                    svals.push_back(sweeps[1].values[i1]);
                    fadenet::cli::apply_key(cfg, sweeps[1].key, fmt(sweeps[1].values[i1]));
                }
            }
            auto t0 = std::chrono::steady_clock::now();
            std::vector<Evaluated> evals;
            try {
                evals = evaluate(sub, cfg);
            } catch (const std::exception& e) {
                evals.push_back({sub, {}, false, e.what()});
            }
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count() /
                        (double)evals.size();
            for (const auto& ev : evals) {
                Row r;
                r.cells.push_back(ev.metric);
                for (double sv : svals) r.cells.push_back(fmt(sv));
                if (ev.ok) {
                    r.cells.push_back(fmt(ev.res.value));
                    r.cells.push_back(fmt(ev.res.error_estimate));
                    r.cells.push_back(fadenet::metrics::method_name(ev.res.method));
                } else {
                    r.cells.push_back("nan");
                    r.cells.push_back("nan");
                    r.cells.push_back("none");
                }
                r.cells.push_back(fmt(ms));
                r.cells.push_back(ev.ok ? "ok" : "failed");
                if (!ev.ok) std::cerr << "fadenet: grid point failed: " << ev.error << "\n";
                results[i].push_back(std::move(r));
            }
        }
    };

    int nworkers = std::min<std::size_t>(worker_count(), npoints);
    if (nworkers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    Table tab;
    tab.header.push_back("metric");
    for (const auto& sw : sweeps) tab.header.push_back(sw.key);
    tab.header.insert(tab.header.end(),
                      {"value", "error_estimate", "method", "wall_time_ms", "status"});
    for (auto& rs : results)
        for (auto& r : rs) tab.rows.push_back(std::move(r));
    write_table(tab, format, sub, out);
    return 0;
}

int run_validate(const RunConfig& base, const std::string& format, std::ostream& out) {
    auto rows = fadenet::validation::run_matrix(base.sim.snapshots, base.sim.seed);
    Table tab;
    tab.header = {"config", "metric", "analytic", "mc", "se", "status"};
    bool all_pass = true;
    for (const auto& r : rows) {
        tab.rows.push_back(
            {{r.config, r.metric, fmt(r.analytic), fmt(r.mc), fmt(r.se),
              r.pass ? "pass" : "FAIL"}});
        all_pass = all_pass && r.pass;
    }
    write_table(tab, format, "validate", out);
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fadenet: downlink cellular coverage / rate / BEP analysis"};
    app.require_subcommand(1);

    std::string config_path, output_path, format = "csv";
    std::vector<std::string> sweep_texts;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t snapshots = 0;

    for (const char* name :
         {"coverage", "rate", "bep", "mgf", "simulate", "validate"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file (key = value)");
        sub->add_option("--sweep", sweep_texts,
                        "sweep axis key=start:stop:count[(log)] or key=v1,v2,... (max 2)");
        sub->add_option("--output", output_path, "output file (default stdout)");
        sub->add_option("--seed", seed, "simulation seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--snapshots", snapshots, "Monte Carlo snapshot count");
        sub->add_option("--format", format, "csv or plotdata")
            ->check(CLI::IsMember({"csv", "plotdata"}));
    }

    CLI11_PARSE(app, argc, argv);
    std::string sub = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{}
                                            : fadenet::cli::parse_config_file(config_path);
        if (seed_set) cfg.sim.seed = seed;
        if (snapshots > 0) cfg.sim.snapshots = snapshots;
        if (sweep_texts.size() > 2)
            throw std::invalid_argument("at most 2 sweep axes are supported");
        std::vector<SweepSpec> sweeps;
        for (const auto& t : sweep_texts) sweeps.push_back(fadenet::cli::parse_sweep(t));

        std::ofstream file;
        if (!output_path.empty()) {
            file.open(output_path);
            if (!file) throw std::invalid_argument("cannot open output file: " + output_path);
        }
        std::ostream& out = output_path.empty() ? std::cout : file;

        if (sub == "validate") return run_validate(cfg, format, out);
        return run_metric(sub, cfg, sweeps, format, out);
    } catch (const std::exception& e) {
        std::cerr << "fadenet: error: " << e.what() << "\n";
        return 1;
    }
}

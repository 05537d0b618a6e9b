#include "fadenet/validation.hpp"

#include <cmath>

#include "fadenet/metrics.hpp"
#include "fadenet/simulator.hpp"

namespace fadenet::validation {

namespace {

using fading::FadingModel;
using interference::NetworkConfig;

constexpr double kLambda = 1e-4;
// mild noise level: xi sigma^2 r^alpha / P of order 1e-3 at the typical
// serving distance
constexpr double kNoise = 1.6e-8;

Case mk(const std::string& name, FadingModel d, FadingModel i, double alpha,
        double noise = 0.0) {
    return {name, {std::move(d), std::move(i), NetworkConfig{kLambda, alpha, 1.0, noise}}};
}

}  // namespace

std::vector<Case> validation_matrix() {
    using namespace fading;
    std::vector<Case> v;
    v.push_back(mk("rayleigh_a4", rayleigh(1.0), rayleigh(1.0), 4.0));
    v.push_back(mk("rayleigh_a3_noise", rayleigh(1.0), rayleigh(1.0), 3.0, kNoise));
    v.push_back(mk("nakagami_asym_a3", nakagami(2.5, 1.0), nakagami(2.0, 1.0), 3.0));
    v.push_back(mk("nakagami_asym_a4_noise", nakagami(1.0, 1.0), nakagami(3.0, 1.0), 4.0,
                   kNoise));
    v.push_back(mk("kappa_mu_a3", kappa_mu(1.0, 1.5, 2.0), kappa_mu(1.0, 1.5, 2.0), 3.0));
    v.push_back(mk("rice_vs_rayleigh_a3", rice(5.0, 1.0), nakagami(1.0, 1.0), 3.0));
    v.push_back(mk("skm_a3", shadowed_kappa_mu(1.0, 1.0, 2.0, 2.0),
                   shadowed_kappa_mu(1.0, 1.0, 2.0, 2.0), 3.0));
    v.push_back(mk("skm_vs_nakagami_a4", shadowed_kappa_mu(1.0, 5.0, 2.0, 2.0),
                   nakagami(2.0, 1.0), 4.0));
    v.push_back(mk("skm_vs_km_a3", shadowed_kappa_mu(1.0, 2.0, 1.0, 3.0),
                   kappa_mu(1.0, 1.0, 1.0), 3.0));
    v.push_back(mk("eta_mu_a4", eta_mu(1.0, 0.5, 1.0), eta_mu(1.0, 0.5, 1.0), 4.0));
    v.push_back(mk("eta_mu_vs_nakagami_a3", eta_mu(1.0, 2.0, 2.0), nakagami(2.0, 1.0), 3.0));
    v.push_back(mk("skm_heavy_los_a3", shadowed_kappa_mu(1.0, 10.0, 3.0, 1.0),
                   shadowed_kappa_mu(1.0, 10.0, 3.0, 1.0), 3.0));
    return v;
}

std::vector<RowResult> run_matrix(std::int64_t snapshots, std::uint64_t seed,
                                  const std::vector<double>& thresholds_db) {
    auto mod = metrics::modulation_constants("qpsk");
    std::vector<double> thresholds;
    for (double tdb : thresholds_db) thresholds.push_back(std::pow(10.0, tdb / 10.0));
    std::vector<RowResult> rows;
    for (const auto& c : validation_matrix()) {
        simulator::SimConfig sim;
        sim.snapshots = snapshots;
        sim.seed = seed;
        auto est = simulator::estimate_all(c.link, thresholds, mod, sim);
        auto push = [&](const std::string& metric, const metrics::MetricResult& analytic,
                        const metrics::MetricResult& mc) {
            double tol = 3.0 * mc.error_estimate + analytic.error_estimate;
            rows.push_back({c.name, metric, analytic.value, mc.value,
                            mc.error_estimate,
                            std::abs(analytic.value - mc.value) <= tol});
        };
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "coverage@%gdB", thresholds_db[t]);
            push(buf, metrics::coverage(c.link, thresholds[t]), est.coverage[t]);
        }
        push("rate", metrics::ergodic_rate(c.link), est.rate);
        push("bep_qpsk", metrics::bep(c.link, mod), est.bep);
    }
    return rows;
}

}  // namespace fadenet::validation

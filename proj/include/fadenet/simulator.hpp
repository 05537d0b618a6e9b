#pragma once
// Monte Carlo PPP snapshot engine: the independent oracle for the analytic
// metrics.  Each snapshot draws a Poisson number of BSs uniformly in a disk
// around the typical user at the origin, associates with the nearest BS, and
// realizes the SINR with independent fading draws.  Interference excluded by
// the finite window is compensated by its analytic mean.  Snapshots are
// reproducible: snapshot i uses a dedicated stream derived from (seed, i),
// so estimates are identical regardless of execution order or worker count.

#include <cstdint>

#include "fadenet/metrics.hpp"

namespace fadenet::simulator {

using metrics::LinkSpec;
using metrics::MetricResult;
using metrics::ModulationScheme;

struct SimConfig {
    double window_radius = 0.0;  // 0 -> default 15/sqrt(pi lambda)
    std::int64_t snapshots = 100000;
    std::uint64_t seed = 1;
    // Max allowed fluctuation (one standard deviation) of the interference
    // excluded by the window, relative to the mean interference seen from the
    // typical serving distance; the excluded mean itself is compensated
    // exactly, so only its fluctuation is lost.
    double tail_epsilon = 1e-2;
};

struct SnapshotResult {
    double sinr;
    double serving_distance;
    int num_interferers;
};

double default_window_radius(double lambda_bs);

// Mean interference from BSs beyond R (absolute; the tail compensation term).
double excluded_tail_mean(const LinkSpec& link, double window_radius);

// One standard deviation of the excluded interference relative to the mean
// interference from the typical serving distance outward; the window
// sufficiency criterion compared against SimConfig::tail_epsilon.
double excluded_tail_fluctuation(const LinkSpec& link, double window_radius);

SnapshotResult simulate_snapshot(const LinkSpec& link, const SimConfig& sim,
                                 std::mt19937_64& rng);

MetricResult estimate_coverage(const LinkSpec& link, double T, const SimConfig& sim);
MetricResult estimate_rate(const LinkSpec& link, const SimConfig& sim);
MetricResult estimate_bep(const LinkSpec& link, const ModulationScheme& mod,
                          const SimConfig& sim);

// One pass over the snapshots producing coverage at several thresholds plus
// rate and BEP; identical estimates to the single-metric entry points.
struct BatchEstimates {
    std::vector<MetricResult> coverage;  // one per threshold
    MetricResult rate;
    MetricResult bep;
};
BatchEstimates estimate_all(const LinkSpec& link, const std::vector<double>& thresholds,
                            const ModulationScheme& mod, const SimConfig& sim);

}  // namespace fadenet::simulator

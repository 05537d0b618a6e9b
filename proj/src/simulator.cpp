#include "fadenet/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "fadenet/special.hpp"

namespace fadenet::simulator {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 snapshot_rng(std::uint64_t seed, std::int64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64((std::uint64_t)index)));
}

double window_radius_of(const LinkSpec& link, const SimConfig& sim) {
    double R = (sim.window_radius > 0.0) ? sim.window_radius
                                         : default_window_radius(link.network.lambda_bs);
    double frac = excluded_tail_fluctuation(link, R);
    if (frac > sim.tail_epsilon)
        throw std::invalid_argument(
            "simulator: window too small, excluded-interference fluctuation " +
            std::to_string(frac) + " of the reference mean");
    return R;
}

}  // namespace

double default_window_radius(double lambda_bs) {
    return 15.0 / std::sqrt(kPi * lambda_bs);
}

double excluded_tail_mean(const LinkSpec& link, double window_radius) {
    const auto& net = link.network;
    return 2.0 * kPi * net.lambda_bs * fading::mean_power(link.interferer) *
           std::pow(window_radius, 2.0 - net.alpha) / (net.alpha - 2.0);
}

double excluded_tail_fluctuation(const LinkSpec& link, double window_radius) {
    const auto& net = link.network;
    // Campbell variance of sum h r^{-alpha} over r > R:
    // 2 pi lambda E[h^2] R^{2-2alpha} / (2alpha - 2)
    double var = 2.0 * kPi * net.lambda_bs * fading::second_moment(link.interferer) *
                 std::pow(window_radius, 2.0 - 2.0 * net.alpha) / (2.0 * net.alpha - 2.0);
    // reference scale: mean interference from the typical serving distance out
    double r0 = 0.5 / std::sqrt(net.lambda_bs);
    double mean_ref = 2.0 * kPi * net.lambda_bs * fading::mean_power(link.interferer) *
                      std::pow(r0, 2.0 - net.alpha) / (net.alpha - 2.0);
    return std::sqrt(var) / mean_ref;
}

SnapshotResult simulate_snapshot(const LinkSpec& link, const SimConfig& sim,
                                 std::mt19937_64& rng) {
    const auto& net = link.network;
    const double R = window_radius_of(link, sim);
    // mean interference from outside the window, added deterministically
    const double tail = excluded_tail_mean(link, R);
    std::poisson_distribution<int> num_bs(net.lambda_bs * kPi * R * R);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int n = 0;
    while (n == 0) n = num_bs(rng);
    // only radial distances matter; r = R sqrt(U) is uniform in the disk
    double r_serve = R;
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = R * std::sqrt(unif(rng));
        r_serve = std::min(r_serve, r[i]);
    }
    double interference = tail;
    for (int i = 0; i < n; ++i) {
        if (r[i] == r_serve) continue;
        interference += fading::sample(link.interferer, rng) * std::pow(r[i], -net.alpha);
    }
    double signal =
        fading::sample(link.desired, rng) * std::pow(r_serve, -net.alpha);
    double sinr = signal / (net.noise / net.power + interference);
    return {sinr, r_serve, n - 1};
}

BatchEstimates estimate_all(const LinkSpec& link, const std::vector<double>& thresholds,
                            const ModulationScheme& mod, const SimConfig& sim) {
    sinrmgf::validate(link);
    if (sim.snapshots < 1) throw std::invalid_argument("simulator: snapshots >= 1");
    window_radius_of(link, sim);  // validate window up front
    const std::int64_t n = sim.snapshots;
    std::vector<std::int64_t> cov_hits(thresholds.size(), 0);
    long double rate_sum = 0.0L, rate_sq = 0.0L, bep_sum = 0.0L, bep_sq = 0.0L;
    for (std::int64_t i = 0; i < n; ++i) {
        auto rng = snapshot_rng(sim.seed, i);
        SnapshotResult snap = simulate_snapshot(link, sim, rng);
        for (std::size_t t = 0; t < thresholds.size(); ++t)
            cov_hits[t] += (snap.sinr > thresholds[t]) ? 1 : 0;
        double lr = std::log1p(snap.sinr);
        rate_sum += lr;
        rate_sq += (long double)lr * lr;
        double b = 0.0;
        double rt = std::sqrt(snap.sinr);
        for (double ap : mod.a) b += special::gaussian_q(ap * rt);
        b *= mod.beta;
        bep_sum += b;
        bep_sq += (long double)b * b;
    }
    BatchEstimates out;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        double p = (double)cov_hits[t] / (double)n;
        double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / (double)n);
        out.coverage.push_back({p, se, metrics::Method::monte_carlo});
    }
    auto moments = [n](long double s, long double sq) {
        double mean = (double)(s / n);
        double var = std::max(0.0, (double)(sq / n) - mean * mean);
        return MetricResult{mean, std::sqrt(var / (double)n), metrics::Method::monte_carlo};
    };
    out.rate = moments(rate_sum, rate_sq);
    out.bep = moments(bep_sum, bep_sq);
    return out;
}

MetricResult estimate_coverage(const LinkSpec& link, double T, const SimConfig& sim) {
    if (!(T > 0.0)) throw std::domain_error("estimate_coverage: T > 0");
    return estimate_all(link, {T}, metrics::modulation_constants("bpsk"), sim).coverage[0];
}

MetricResult estimate_rate(const LinkSpec& link, const SimConfig& sim) {
    return estimate_all(link, {}, metrics::modulation_constants("bpsk"), sim).rate;
}

MetricResult estimate_bep(const LinkSpec& link, const ModulationScheme& mod,
                          const SimConfig& sim) {
    return estimate_all(link, {}, mod, sim).bep;
}

}  // namespace fadenet::simulator

#pragma once
// Flat, typed key=value run configuration with dotted sections, plus sweep
// specifications.  Unknown keys are errors.  Keys ending in `_dB` take the
// value in decibels and store the linear equivalent.

#include <string>
#include <vector>

#include "fadenet/metrics.hpp"
#include "fadenet/simulator.hpp"

namespace fadenet::cli {

struct FadingSpec {
    std::string model = "rayleigh";  // shadowed_kappa_mu|kappa_mu|eta_mu|nakagami|rayleigh|rice
    double omega = 1.0;
    double kappa = 1.0;
    double mu = 1.0;
    double m = 1.0;
    double eta = 0.5;
    double k_factor = 1.0;  // Rice K
    fading::FadingModel build() const;
};

struct RunConfig {
    interference::NetworkConfig network{1e-4, 3.0, 1.0, 0.0};
    FadingSpec desired;
    FadingSpec interferer;
    std::string modulation_name = "qpsk";
    int modulation_M = 0;
    metrics::AbateWhittParams aw;
    simulator::SimConfig sim;
    double coverage_T = 1.0;  // linear threshold
    double mgf_s = 1.0;
    double sir = 1000.0;  // linear omega/omega_i for the high-SIR asymptote

    sinrmgf::LinkSpec link() const;
    metrics::ModulationScheme modulation() const;
};

// Set one key; throws std::invalid_argument naming the key when unknown or
// malformed.  Bare (undotted) fading keys (omega, kappa, mu, m, eta) apply to
// both link ends, matching the symmetric experimental setups; lambda, alpha,
// noise, power alias into network.*; T/T_dB into coverage.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

// Effective-config serialization; re-parsing reproduces the same run.
std::string serialize(const RunConfig& cfg);

struct SweepSpec {
    std::string key;
    std::vector<double> values;
};

// "key=start:stop:count", "key=start:stop:count(log)", or "key=v1,v2,...".
SweepSpec parse_sweep(const std::string& text);

}  // namespace fadenet::cli

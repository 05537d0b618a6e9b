#pragma once
// Analytic-vs-Monte-Carlo cross-validation matrix: twelve link configurations
// spanning every fading family (including asymmetric desired/interferer
// pairs).  For each configuration, coverage at several thresholds, ergodic
// rate, and QPSK BEP are computed analytically and estimated by simulation;
// a row passes when |analytic - MC| <= 3 * (MC standard error) + analytic
// error estimate.

#include <cstdint>
#include <string>
#include <vector>

#include "fadenet/sinr_mgf.hpp"

namespace fadenet::validation {

struct Case {
    std::string name;
    sinrmgf::LinkSpec link;
};

std::vector<Case> validation_matrix();

struct RowResult {
    std::string config;
    std::string metric;
    double analytic;
    double mc;
    double se;
    bool pass;
};

std::vector<RowResult> run_matrix(std::int64_t snapshots, std::uint64_t seed,
                                  const std::vector<double>& thresholds_db = {-5.0, 0.0,
                                                                              5.0, 10.0});

}  // namespace fadenet::validation

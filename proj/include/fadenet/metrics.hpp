#pragma once
// User-facing performance metrics: ergodic rate (nats per channel use),
// coverage probability P(SINR > T), and average bit error probability under
// the Gaussian-signaling approximation, each with an independent
// cross-validation path (Laplace inversion vs direct integral, closed kernel
// vs MGF transform, exact vs high-SIR asymptote).

#include <string>
#include <vector>

#include "fadenet/sinr_mgf.hpp"

namespace fadenet::metrics {

using sinrmgf::LinkSpec;

struct ModulationScheme {
    std::string name;       // e.g. "BPSK", "QPSK", "16-QAM"
    double beta;            // beta_M
    int tau;                // tau_M = number of a_p terms
    std::vector<double> a;  // {a_p}
};

// Convention table (documented in the README): BPSK a=[sqrt(2)]; M-PSK via
// nearest-neighbor a_p = sqrt(2) sin((2p-1)pi/M), tau = max(M/4, 1),
// beta = 2/max(log2 M, 2); square M-QAM via the Gray-coded decomposition.
// name is one of "bpsk", "qpsk", "mpsk", "mqam" (case-insensitive);
// M is required for "mpsk"/"mqam".
ModulationScheme modulation_constants(const std::string& name, int M = 0);

struct AbateWhittParams {
    double A = 18.4;
    int m = 11;
    int n = 15;
    double b = 0.0;  // Euler abscissa for the direct inversion; 0 -> 0.5/T
};

enum class Method { closed_form, quadrature, inversion, monte_carlo };
const char* method_name(Method m);

struct MetricResult {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::quadrature;
};

// ---- ergodic rate -----------------------------------------------------------
// C = E[ln(1 + SINR)] = int_0^inf K(xi) R(xi) dxi with the model-specific
// scalar kernel K (Appell F2 / Psi1 / elementary for Nakagami).
MetricResult ergodic_rate(const LinkSpec& link);
// Independent path: C = int_0^inf (e^{-s}/s)(1 - M(s)) ds over the SINR MGF.
MetricResult ergodic_rate_mgf_oracle(const LinkSpec& link);
// Interference-limited specialization (noise treated as zero); independent
// of the BS density.
MetricResult ergodic_rate_nonoise(const LinkSpec& link);

// Rate kernel K(xi), exposed for tests.
double rate_kernel(const fading::FadingModel& desired, double xi);

// ---- coverage ---------------------------------------------------------------
// Laplace inversion of (1 - M(z))/z by the Euler-accelerated Abate-Whitt sum.
MetricResult coverage(const LinkSpec& link, double T, const AbateWhittParams& aw = {});
// Direct Fourier-type inversion: P = 1 - (2 e^{bT}/pi) int_0^inf
// Re[M(b+iu)/(b+iu)] cos(uT) du, accelerated over half-period panels.
MetricResult coverage_direct(const LinkSpec& link, double T, double b = 0.0);

// ---- bit error probability ----------------------------------------------------
// B = beta tau / 2 - pref * sum_p a_p int_0^inf xi^{-1/2} psi_p(xi) R(xi) dxi.
MetricResult bep(const LinkSpec& link, const ModulationScheme& mod);
// Craig-form cross-check: B = beta * sum_p (1/pi) int_0^{pi/2}
// M(a_p^2/(2 sin^2 theta)) dtheta; used as the in-repo oracle for bep.
MetricResult bep_mgf_oracle(const LinkSpec& link, const ModulationScheme& mod);
// High-SIR interference-limited asymptote; interferer restricted to
// Nakagami-m and independent of m_i; sir is the linear power ratio
// omega/omega_i and delta = (alpha - 2) * sir.
MetricResult bep_high_sir(const fading::FadingModel& desired, double interferer_nakagami_m,
                          double alpha, double sir, const ModulationScheme& mod);

}  // namespace fadenet::metrics

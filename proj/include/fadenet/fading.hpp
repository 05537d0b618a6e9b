#pragma once
// Fading-gain models: parameter sets, densities, per-gain Laplace/MGF
// E[e^{-s h}], and random samplers.  All gains are power gains with mean
// omega.  Rice(K, omega) is stored as kappa-mu(kappa=K, mu=1) and
// Rayleigh(omega) as Nakagami(m=1, omega).

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <variant>

namespace fadenet::fading {

struct ShadowedKappaMuParams {
    double omega;  // mean power
    double kappa;  // dominant-to-scattered power ratio, >= 0
    double mu;     // number of clusters, > 0
    double m;      // shadowing severity, > 0
};

struct KappaMuParams {
    double omega;
    double kappa;  // > 0 (kappa = 0 exactly is rejected; use Nakagami)
    double mu;
};

struct EtaMuParams {
    double omega;
    double eta;  // in-phase/quadrature power ratio, > 0
    double mu;
};

struct NakagamiParams {
    double m;
    double omega;
};

using FadingModel =
    std::variant<ShadowedKappaMuParams, KappaMuParams, EtaMuParams, NakagamiParams>;

FadingModel shadowed_kappa_mu(double omega, double kappa, double mu, double m);
FadingModel kappa_mu(double omega, double kappa, double mu);
FadingModel eta_mu(double omega, double eta, double mu);
FadingModel nakagami(double m, double omega);
FadingModel rayleigh(double omega);
FadingModel rice(double k_factor, double omega);

// Throws std::invalid_argument when a parameter invariant is violated.
void validate(const FadingModel& model);

double mean_power(const FadingModel& model);
// E[h^2], closed form for every family; used for tail-fluctuation bounds.
double second_moment(const FadingModel& model);
std::string describe(const FadingModel& model);

// eta-mu expressed as the equivalent shadowed kappa-mu parameterization
// (m = mu, mu -> 2mu, kappa = (1-eta)/(2eta), with eta > 1 folded to 1/eta).
ShadowedKappaMuParams eta_mu_as_shadowed(const EtaMuParams& p);

// Density of the power gain at y > 0 (computed in log space internally).
double pdf(const FadingModel& model, double y);

// E[e^{-s h}] for s >= 0; equals 1 at s = 0.
double gain_mgf(const FadingModel& model, double s);
// Analytic continuation to Re(s) >= 0 (needed along rotated contours).
std::complex<double> gain_mgf(const FadingModel& model, std::complex<double> s);
// log E[e^{-s h}]; lets callers form 1 - MGF without cancellation near s = 0.
std::complex<double> gain_log_mgf(const FadingModel& model, std::complex<double> s);

// One draw of the power gain.  Construction: shadow power zeta ~ Gamma(m,
// mean 1); conditional on zeta, h ~ Gamma(mu + N, 1) * omega/(mu(1+kappa))
// with N ~ Poisson(mu kappa zeta).  eta-mu samples through its shadowed
// kappa-mu equivalent.
double sample(const FadingModel& model, std::mt19937_64& rng);

}  // namespace fadenet::fading

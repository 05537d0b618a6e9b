#pragma once
// Aggregate-interference Laplace transforms L_I(xi * r^alpha) for a downlink
// PPP network with nearest-BS association, the direct-quadrature reference
// path, and the radial expectation over the serving distance.
//
// Every transform factors as L_I = exp(-pi lambda r^2 * A(xi)) where the
// coefficient A(xi) >= 0 depends only on the interferer fading model, alpha,
// and xi; closed forms and the quadrature path both go through A.

#include <complex>
#include <functional>

#include "fadenet/fading.hpp"
#include "fadenet/special.hpp"

namespace fadenet::interference {

struct NetworkConfig {
    double lambda_bs;  // BS density, per unit area
    double alpha;      // path-loss exponent, > 2
    double power;      // transmit power P
    double noise;      // noise power sigma^2, >= 0
};

void validate(const NetworkConfig& net);  // throws std::invalid_argument

// ---- exponent coefficients A(xi) ------------------------------------------
// Closed forms (preconditions as the laplace_* ops below):
double coefficient_skm(const fading::ShadowedKappaMuParams& p, double alpha, double xi);
double coefficient_km(const fading::KappaMuParams& p, double alpha, double xi,
                      const special::SeriesControl& ctl = {});
double coefficient_em(const fading::EtaMuParams& p, double alpha, double xi);
double coefficient_nak(double m_i, double omega_i, double alpha, double xi);
// Reference path by adaptive quadrature of
//   (2/alpha) * int_0^1 x^{-2/alpha - 1} (1 - gain_mgf(xi x)) dx
// with a power-law substitution removing the endpoint singularity:
double coefficient_numeric(const fading::FadingModel& model_i, double alpha, double xi);
// Dispatch: closed form when available for the model, numeric otherwise.
double interference_coefficient(const fading::FadingModel& model_i,
                                const NetworkConfig& net, double xi);

// Analytic continuation to complex xi with Re(xi) >= 0, used when the SINR
// MGF is evaluated along a rotated integration contour.  A(conj(xi)) =
// conj(A(xi)) and Re A(xi) > 0 throughout the half-plane.
std::complex<double> coefficient_numeric(const fading::FadingModel& model_i, double alpha,
                                         std::complex<double> xi);
std::complex<double> interference_coefficient(const fading::FadingModel& model_i,
                                              const NetworkConfig& net,
                                              std::complex<double> xi);

// ---- Laplace transforms -----------------------------------------------------
double laplace_skm(const fading::ShadowedKappaMuParams& p_i, const NetworkConfig& net,
                   double xi, double r);  // integer mu, m required
double laplace_km(const fading::KappaMuParams& p_i, const NetworkConfig& net, double xi,
                  double r, const special::SeriesControl& ctl = {});
double laplace_em(const fading::EtaMuParams& p_i, const NetworkConfig& net, double xi,
                  double r);  // integer mu required
double laplace_nak(double m_i, double omega_i, const NetworkConfig& net, double xi,
                   double r);
double laplace_numeric(const fading::FadingModel& model_i, const NetworkConfig& net,
                       double xi, double r);

// ---- radial expectation -----------------------------------------------------
// E_r[g(r)] against the serving-distance density 2 pi lambda r e^{-pi lambda r^2},
// by Gauss-Laguerre after u = pi lambda r^2.
double radial_average(const std::function<double(double)>& g, double lambda_bs);

// E_r[exp(-xi sigma^2 r^alpha / P) * exp(-pi lambda r^2 A)].  With noise = 0
// this is 1/(1+A) in closed form.
double radial_laplace_factor(const NetworkConfig& net, double xi, double a_coef);
std::complex<double> radial_laplace_factor(const NetworkConfig& net,
                                           std::complex<double> xi,
                                           std::complex<double> a_coef);

}  // namespace fadenet::interference

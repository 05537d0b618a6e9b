#pragma once
// SINR moment generating function M(s) = E[e^{-s SINR}] for a link with
// independently chosen desired/interferer fading, assembled as
//   M(s) = 1 - s * front * int_0^inf F(s, xi) * R(xi) dxi
// where F is the desired-model kernel (Psi1 / Psi2 / 1F1), and
//   R(xi) = E_r[ exp(-xi sigma^2 r^alpha / P) * L_I(xi r^alpha) ]
// is the noise-weighted radial average of the interference Laplace transform.
// A direct Bessel-transform evaluator (model-agnostic, real s) serves as the
// numerical oracle for the assembled forms.

#include <complex>

#include "fadenet/fading.hpp"
#include "fadenet/interference.hpp"

namespace fadenet::sinrmgf {

using cplx = std::complex<double>;

struct LinkSpec {
    fading::FadingModel desired;
    fading::FadingModel interferer;
    interference::NetworkConfig network;
};

void validate(const LinkSpec& link);

struct MgfQuadrature {
    double adaptive_tol = 1e-10;  // absolute tolerance on the xi-integral
    int max_panels_side = 160;    // log-axis panel budget each direction
};

// R(xi) above; collapses to 1/(1+A(xi)) when noise = 0.  The complex
// overload continues R to Re(xi) >= 0 for rotated integration contours.
double radial_factor(const LinkSpec& link, double xi);
cplx radial_factor(const LinkSpec& link, cplx xi);

// Desired-model front constant and kernel F(s, xi) of the assembled MGF.
double mgf_front(const fading::FadingModel& desired);
cplx mgf_kernel(const fading::FadingModel& desired, cplx s, cplx xi);

// M(s) for Re(s) >= 0; M(0) = 1 exactly; real s gives M in (0, 1].
// For complex s the xi-contour is rotated by -arg(s) so the kernel argument
// s*xi stays on the positive real axis, where the kernel series are stable;
// the rotation is legitimate because the integrand is analytic in the sector
// (Re A(xi) > 0 keeps 1 + A away from zero) and decays along every ray.
cplx mgf_sinr(const LinkSpec& link, cplx s, const MgfQuadrature& q = {});

// Model-agnostic reference: 1 - 2 sqrt(s) int Sigma(t) R(t^2) dt with
// Sigma(t) = E_h[ sqrt(h) J1(2 sqrt(s h) t) ] integrated against the density.
double mgf_sinr_generic(const LinkSpec& link, double s, const MgfQuadrature& q = {});

}  // namespace fadenet::sinrmgf

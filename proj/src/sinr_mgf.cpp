#include "fadenet/sinr_mgf.hpp"

#include <cmath>
#include <stdexcept>

#include "fadenet/quad.hpp"
#include "fadenet/special.hpp"

namespace fadenet::sinrmgf {

namespace {
using fading::EtaMuParams;
using fading::FadingModel;
using fading::KappaMuParams;
using fading::NakagamiParams;
using fading::ShadowedKappaMuParams;
}  // namespace

void validate(const LinkSpec& link) {
    fading::validate(link.desired);
    fading::validate(link.interferer);
    interference::validate(link.network);
}

double radial_factor(const LinkSpec& link, double xi) {
    double a = interference::interference_coefficient(link.interferer, link.network, xi);
    return interference::radial_laplace_factor(link.network, xi, a);
}

cplx radial_factor(const LinkSpec& link, cplx xi) {
    cplx a = interference::interference_coefficient(link.interferer, link.network, xi);
    return interference::radial_laplace_factor(link.network, xi, a);
}

double mgf_front(const FadingModel& desired) {
    if (const auto* p = std::get_if<ShadowedKappaMuParams>(&desired))
        return p->omega /
               (std::pow(1.0 + p->mu * p->kappa / p->m, p->m) * (1.0 + p->kappa));
    if (const auto* p = std::get_if<KappaMuParams>(&desired))
        return p->omega * std::exp(-p->kappa * p->mu) / (1.0 + p->kappa);
    if (const auto* p = std::get_if<EtaMuParams>(&desired))
        return mgf_front(FadingModel{fading::eta_mu_as_shadowed(*p)});
    return std::get<NakagamiParams>(desired).omega;
}

namespace {

// On the rotated contour s*xi is real up to rounding; drop the spurious
// imaginary part so the kernel series run on their stable real-axis routes.
cplx snap_real(cplx y) {
    if (std::abs(y.imag()) < 1e-13 * std::abs(y.real())) return cplx(y.real());
    return y;
}

}  // namespace

cplx mgf_kernel(const FadingModel& desired, cplx s, cplx xi) {
    if (const auto* p = std::get_if<ShadowedKappaMuParams>(&desired)) {
        double x = p->mu * p->kappa / (p->mu * p->kappa + p->m);
        cplx y = snap_real(-s * xi * p->omega / (p->mu * (1.0 + p->kappa)));
        if (x == 0.0) return special::kummer_1f1(p->mu + 1.0, 2.0, y).value;
        return special::humbert_psi1(p->mu + 1.0, p->m, p->mu, 2.0, x, y).value;
    }
    if (const auto* p = std::get_if<KappaMuParams>(&desired)) {
        cplx y = snap_real(-s * xi * p->omega / (p->mu * (1.0 + p->kappa)));
        return special::humbert_psi2(p->mu + 1.0, p->mu, 2.0, p->kappa * p->mu, y).value;
    }
    if (const auto* p = std::get_if<EtaMuParams>(&desired))
        return mgf_kernel(FadingModel{fading::eta_mu_as_shadowed(*p)}, s, xi);
    const auto& p = std::get<NakagamiParams>(desired);
    return special::kummer_1f1(p.m + 1.0, 2.0, snap_real(-s * xi * p.omega / p.m)).value;
}

cplx mgf_sinr(const LinkSpec& link, cplx s, const MgfQuadrature& q) {
    validate(link);
    if (!(s.real() >= 0.0)) throw std::domain_error("mgf_sinr: Re(s) >= 0 required");
    if (s == cplx(0.0)) return 1.0;
    const double front = mgf_front(link.desired);
    const double scale = std::abs(s) * front;
    const double u0 = -std::log1p(std::abs(s) * fading::mean_power(link.desired));
    // Rotate the contour xi = rho e^{-i arg(s)} so the kernel sees s*xi real.
    const cplx rot = std::conj(s) / std::abs(s);
    double err = 0.0;
    cplx integral = quad::integrate_log_axis(
        [&](double rho) {
            cplx xi = rho * rot;
            return mgf_kernel(link.desired, s, xi) * radial_factor(link, xi);
        },
        u0, q.adaptive_tol / std::max(scale, 1e-3), 1e-9, &err, q.max_panels_side);
    return cplx(1.0) - s * front * rot * integral;
}

double mgf_sinr_generic(const LinkSpec& link, double s, const MgfQuadrature& q) {
    validate(link);
    if (!(s >= 0.0)) throw std::domain_error("mgf_sinr_generic: s >= 0 required");
    if (s == 0.0) return 1.0;
    const double om = fading::mean_power(link.desired);
    // Sigma(t) = E_h[ sqrt(h) J1(2 sqrt(s h) t) ]
    auto sigma = [&](double t) {
        double e = 0.0;
        return quad::integrate_log_axis(
            [&](double h) {
                return std::sqrt(h) *
                       special::bessel_j1(2.0 * std::sqrt(s * h) * t).value.real() *
                       fading::pdf(link.desired, h);
            },
            std::log(om), 1e-12, 1e-10, &e, 80);
    };
    const double u0 = -0.5 * std::log1p(s * om);
    double err = 0.0;
    double integral = quad::integrate_log_axis(
        [&](double t) { return sigma(t) * radial_factor(link, t * t); }, u0,
        q.adaptive_tol, 1e-9, &err, q.max_panels_side);
    return 1.0 - 2.0 * std::sqrt(s) * integral;
}

}  // namespace fadenet::sinrmgf

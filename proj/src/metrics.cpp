#include "fadenet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fadenet/quad.hpp"
#include "fadenet/special.hpp"

namespace fadenet::metrics {

namespace {

constexpr double kPi = 3.14159265358979323846;

using fading::EtaMuParams;
using fading::FadingModel;
using fading::KappaMuParams;
using fading::NakagamiParams;
using fading::ShadowedKappaMuParams;
using sinrmgf::cplx;

std::string lower(std::string s) {
    for (auto& c : s) c = (char)std::tolower((unsigned char)c);
    return s;
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::inversion: return "inversion";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

ModulationScheme modulation_constants(const std::string& name, int M) {
    std::string n = lower(name);
    if (n == "bpsk") return {"BPSK", 1.0, 1, {std::sqrt(2.0)}};
    if (n == "qpsk") M = 4, n = "mpsk";
    if (n == "mpsk") {
        if (M < 2 || (M & (M - 1)) != 0)
            throw std::invalid_argument("mpsk: M must be a power of two >= 2");
        if (M == 2) return modulation_constants("bpsk");
        int tau = std::max(M / 4, 1);
        double beta = 2.0 / std::max(std::log2((double)M), 2.0);
        std::vector<double> a(tau);
        for (int p = 1; p <= tau; ++p) a[p - 1] = std::sqrt(2.0) * std::sin((2.0 * p - 1.0) * kPi / M);
        return {M == 4 ? "QPSK" : std::to_string(M) + "-PSK", beta, tau, a};
    }
    if (n == "mqam") {
        int root = (int)std::lround(std::sqrt((double)M));
        if (M < 4 || root * root != M)
            throw std::invalid_argument("mqam: M must be a perfect square >= 4");
        int tau = root / 2;
        double beta = 4.0 / std::log2((double)M) * (1.0 - 1.0 / root);
        std::vector<double> a(tau);
        for (int p = 1; p <= tau; ++p) a[p - 1] = (2.0 * p - 1.0) * std::sqrt(3.0 / (M - 1.0));
        return {std::to_string(M) + "-QAM", beta, tau, a};
    }
    throw std::invalid_argument("unsupported modulation: " + name);
}

// ---- ergodic rate -----------------------------------------------------------

double rate_kernel(const FadingModel& desired, double xi) {
    if (const auto* p = std::get_if<NakagamiParams>(&desired))
        return -std::expm1(-p->m * std::log1p(p->omega * xi / p->m)) / xi;
    if (const auto* p = std::get_if<EtaMuParams>(&desired))
        return rate_kernel(FadingModel{fading::eta_mu_as_shadowed(*p)}, xi);
    // The kernel equals (1 - E[e^{-xi h}]) / xi.  The closed-form gain MGF is
    // stable at any xi, while the hypergeometric series below degrade for huge
    // arguments; the series is only needed where 1 - MGF would cancel.
    if (double mgf = fading::gain_mgf(desired, xi); mgf <= 0.5)
        return (1.0 - mgf) / xi;
    const double front = sinrmgf::mgf_front(desired);
    if (const auto* p = std::get_if<ShadowedKappaMuParams>(&desired)) {
        double x = p->mu * p->kappa / (p->mu * p->kappa + p->m);
        double y = -xi * p->omega / (p->mu * (1.0 + p->kappa));
        return front *
               special::appell_f2(p->mu + 1.0, p->m, 1.0, p->mu, 2.0, x, y).value.real();
    }
    const auto& p = std::get<KappaMuParams>(desired);
    double x = -xi * p.omega / (p.mu * (1.0 + p.kappa));
    return front *
           special::humbert_psi1(p.mu + 1.0, 1.0, 2.0, p.mu, x, p.kappa * p.mu).value.real();
}

namespace {

MetricResult rate_impl(const LinkSpec& link) {
    sinrmgf::validate(link);
    double err = 0.0;
    double c = quad::integrate_log_axis(
        [&](double xi) { return rate_kernel(link.desired, xi) * sinrmgf::radial_factor(link, xi); },
        -std::log1p(fading::mean_power(link.desired)), 1e-10, 1e-9, &err, 160);
    return {c, err, Method::quadrature};
}

}  // namespace

MetricResult ergodic_rate(const LinkSpec& link) { return rate_impl(link); }

MetricResult ergodic_rate_nonoise(const LinkSpec& link) {
    LinkSpec nl = link;
    nl.network.noise = 0.0;
    return rate_impl(nl);
}

MetricResult ergodic_rate_mgf_oracle(const LinkSpec& link) {
    sinrmgf::validate(link);
    sinrmgf::MgfQuadrature q;
    q.adaptive_tol = 1e-9;
    double err = 0.0;
    double c = quad::integrate_log_axis(
        [&](double s) {
            return std::exp(-s) * (1.0 - sinrmgf::mgf_sinr(link, s, q).real()) / s;
        },
        0.0, 1e-8, 1e-7, &err, 100);
    return {c, err, Method::quadrature};
}

// ---- coverage ---------------------------------------------------------------

MetricResult coverage(const LinkSpec& link, double T, const AbateWhittParams& aw) {
    sinrmgf::validate(link);
    if (!(T > 0.0)) throw std::domain_error("coverage: T > 0 required");
    // Abate-Whitt Euler sum on L(z) = (1 - M(z))/z at t = T
    const int total = aw.n + aw.m;
    std::vector<double> h(total + 1);
    for (int l = 0; l <= total; ++l) {
        cplx z(aw.A / (2.0 * T), l * kPi / T);
        cplx L = (cplx(1.0) - sinrmgf::mgf_sinr(link, z)) / z;
        h[l] = L.real();
    }
    const double pref = std::exp(0.5 * aw.A) / T;
    std::vector<double> s(total + 1);
    s[0] = 0.5 * pref * h[0];
    for (int l = 1; l <= total; ++l) s[l] = s[l - 1] + pref * ((l % 2) ? -h[l] : h[l]);
    double value = 0.0, prev = 0.0;
    for (int k = 0; k <= aw.m; ++k) {
        double w = special::binom(aw.m, k) * std::pow(0.5, aw.m);
        value += w * s[aw.n + k];
        if (k < aw.m) prev += special::binom(aw.m - 1, k) * std::pow(0.5, aw.m - 1) * s[aw.n + k];
    }
    double err = std::abs(value - prev);
    if (value < -1e-6 || value > 1.0 + 1e-6)
        throw std::runtime_error("coverage: inversion instability, raw value " +
                                 std::to_string(value));
    return {std::clamp(value, 0.0, 1.0), err, Method::inversion};
}

MetricResult coverage_direct(const LinkSpec& link, double T, double b) {
    sinrmgf::validate(link);
    if (!(T > 0.0)) throw std::domain_error("coverage_direct: T > 0 required");
    if (b <= 0.0) b = 0.5 / T;
    // P = 1 - (2 e^{bT}/pi) int_0^inf Re[M(b+iu)/(b+iu)] cos(uT) du, integrated
    // over half-periods of cos(uT) with Euler acceleration of the partial sums.
    const auto& rule = quad::gauss_legendre(16);
    auto f = [&](double u) {
        cplx z(b, u);
        return (sinrmgf::mgf_sinr(link, z) / z).real() * std::cos(u * T);
    };
    const int max_panels = 48;
    std::vector<double> partial;
    double sum = 0.0;
    for (int k = 0; k < max_panels; ++k) {
        double ua = (k == 0) ? 0.0 : (k - 0.5) * kPi / T;
        double ub = (k + 0.5) * kPi / T;
        sum += quad::gl_panel(f, ua, ub, rule);
        if (k >= 6) partial.push_back(sum);
    }
    double acc_err = 0.0;
    double integral = quad::euler_accelerate(partial, &acc_err);
    double value = 1.0 - (2.0 * std::exp(b * T) / kPi) * integral;
    double err = (2.0 * std::exp(b * T) / kPi) * acc_err;
    if (value < -1e-6 || value > 1.0 + 1e-6)
        throw std::runtime_error("coverage_direct: inversion instability, raw value " +
                                 std::to_string(value));
    return {std::clamp(value, 0.0, 1.0), err, Method::inversion};
}

// ---- bit error probability -----------------------------------------------------

namespace {

// xi-kernel psi_p and prefactor of the closed BEP form, per desired model.
struct BepForm {
    double pref;  // multiplies a_p * int xi^{-1/2} psi_p(xi) R(xi) dxi
    double theta;
    double x;   // bounded series variable (X for skm, kappa*mu for km)
    double mu;
    double m;   // shadowing order; <= 0 flags the kappa-mu / Nakagami variants
    enum { SKM, KM, NAK } kind;
};

BepForm bep_form(const FadingModel& desired, double beta) {
    if (const auto* p = std::get_if<NakagamiParams>(&desired)) {
        double theta = p->omega / p->m;
        double pref = beta * std::exp(std::lgamma(p->m + 0.5) - std::lgamma(p->m)) *
                      std::sqrt(theta) / (std::sqrt(2.0) * kPi);
        return {pref, theta, 0.0, p->m, 0.0, BepForm::NAK};
    }
    if (const auto* p = std::get_if<EtaMuParams>(&desired))
        return bep_form(FadingModel{fading::eta_mu_as_shadowed(*p)}, beta);
    if (const auto* p = std::get_if<ShadowedKappaMuParams>(&desired)) {
        double theta = p->omega / (p->mu * (1.0 + p->kappa));
        double pref = beta * std::exp(std::lgamma(p->mu + 0.5) - std::lgamma(p->mu)) *
                      std::sqrt(theta) /
                      (std::sqrt(2.0) * kPi * std::pow(1.0 + p->mu * p->kappa / p->m, p->m));
        return {pref, theta, p->mu * p->kappa / (p->mu * p->kappa + p->m), p->mu, p->m,
                BepForm::SKM};
    }
    const auto& p = std::get<KappaMuParams>(desired);
    double theta = p.omega / (p.mu * (1.0 + p.kappa));
    double pref = beta * std::exp(std::lgamma(p.mu + 0.5) - std::lgamma(p.mu)) *
                  std::sqrt(theta) * std::exp(-p.kappa * p.mu) / (std::sqrt(2.0) * kPi);
    return {pref, theta, p.kappa * p.mu, p.mu, 0.0, BepForm::KM};
}

double bep_psi(const BepForm& f, double ap, double xi) {
    double y = -0.5 * ap * ap * xi * f.theta;
    switch (f.kind) {
        case BepForm::NAK:
            return special::kummer_1f1(f.mu + 0.5, 1.5, y).value.real();
        case BepForm::SKM:
            if (f.x == 0.0) return special::kummer_1f1(f.mu + 0.5, 1.5, y).value.real();
            return special::humbert_psi1(f.mu + 0.5, f.m, f.mu, 1.5, f.x, y).value.real();
        case BepForm::KM:
            return special::humbert_psi2(f.mu + 0.5, f.mu, 1.5, f.x, y).value.real();
    }
    return 0.0;
}

}  // namespace

MetricResult bep(const LinkSpec& link, const ModulationScheme& mod) {
    sinrmgf::validate(link);
    BepForm form = bep_form(link.desired, mod.beta);
    double total = 0.5 * mod.beta * mod.tau;
    double err_total = 0.0;
    const double om = fading::mean_power(link.desired);
    for (double ap : mod.a) {
        double err = 0.0;
        // the kernel rolls off past xi ~ 2/(ap^2 omega); center the log-axis
        // walk there so the mass is not missed when omega is large
        double integral = quad::integrate_log_axis(
            [&](double xi) {
                return bep_psi(form, ap, xi) * sinrmgf::radial_factor(link, xi) /
                       std::sqrt(xi);
            },
            -std::log1p(0.5 * ap * ap * om), 1e-11, 1e-9, &err, 160);
        total -= form.pref * ap * integral;
        err_total += form.pref * ap * err;
    }
    if (total < -1e-9 || total > 0.5 * mod.beta * mod.tau + 1e-9)
        throw std::runtime_error("bep: result outside (0, beta*tau/2): " +
                                 std::to_string(total));
    return {std::clamp(total, 0.0, 0.5 * mod.beta * mod.tau), err_total,
            Method::quadrature};
}

MetricResult bep_mgf_oracle(const LinkSpec& link, const ModulationScheme& mod) {
    sinrmgf::validate(link);
    double total = 0.0, err_total = 0.0;
    for (double ap : mod.a) {
        double err = 0.0;
        double v = quad::adaptive(
            [&](double th) {
                double sn = std::sin(th);
                return sinrmgf::mgf_sinr(link, 0.5 * ap * ap / (sn * sn)).real();
            },
            1e-9, 0.5 * kPi, 1e-8, 1e-7, &err, 300);
        total += mod.beta * v / kPi;
        err_total += mod.beta * err / kPi;
    }
    return {total, err_total, Method::quadrature};
}

namespace {

// log of int_0^inf e^{-zt} t^{a-1} (1+t)^{-a-1/2} dt via the substitution
// t = e^v with peak normalization (stable for large a and z).
double log_u_integral(double a, double z) {
    // peak of g(v) = -z e^v + a v - (a+1/2) ln(1+e^v): solve zt + (a+1/2)t/(1+t) = a
    double lo = -60.0, hi = 60.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double t = std::exp(mid);
        ((z * t + (a + 0.5) * t / (1.0 + t) > a) ? hi : lo) = mid;
    }
    double vc = 0.5 * (lo + hi);
    auto g = [&](double v) {
        double t = std::exp(v);
        return -z * t + a * v - (a + 0.5) * ((v > 30.0) ? v : std::log1p(t));
    };
    double gmax = g(vc);
    double wl = 1.0, wr = 1.0;
    while (g(vc - wl) - gmax > -45.0 && wl < 200.0) wl += 2.0;
    while (g(vc + wr) - gmax > -45.0 && wr < 200.0) wr += 2.0;
    double err = 0.0;
    double integral = quad::adaptive([&](double v) { return std::exp(g(v) - gmax); },
                                     vc - wl, vc + wr, 1e-12, 1e-11, &err);
    return gmax + std::log(integral);
}

// G(a, z) = Gamma(a + 1/2) U(a, 1/2, z) / sqrt(pi), always in (0, 1].
double high_sir_g(double a, double z) {
    return std::exp(std::lgamma(a + 0.5) - std::lgamma(a) + log_u_integral(a, z) -
                    0.5 * std::log(kPi));
}

}  // namespace

MetricResult bep_high_sir(const FadingModel& desired, double interferer_nakagami_m,
                          double alpha, double sir, const ModulationScheme& mod) {
    fading::validate(desired);
    if (!(interferer_nakagami_m > 0.0))
        throw std::invalid_argument("bep_high_sir: interferer m > 0 required");
    if (!(alpha > 2.0) || !(sir > 0.0))
        throw std::invalid_argument("bep_high_sir: alpha > 2 and sir > 0 required");
    const double delta = (alpha - 2.0) * sir;  // result is independent of interferer m
    FadingModel d = desired;
    if (const auto* p = std::get_if<EtaMuParams>(&d))
        d = FadingModel{fading::eta_mu_as_shadowed(*p)};
    // Unified series: B = pref * sum_p sum_j c_j G(mu+j, a_p^2 delta/(4 mu (1+kappa)))
    // with c_j = (m)_j X^j / j! (shadowed, X = mu kappa/(mu kappa + m)),
    // c_j = (kappa mu)^j / j! (kappa-mu, the m -> inf limit), or c_0 = 1 only
    // (Nakagami).
    double mu, kappa, pref;
    enum { SKM, KM, NAK } kind;
    double mshape = 0.0, xvar = 0.0;
    if (const auto* p = std::get_if<NakagamiParams>(&d)) {
        mu = p->m;
        kappa = 0.0;
        pref = 0.5 * mod.beta;
        kind = NAK;
    } else if (const auto* p = std::get_if<ShadowedKappaMuParams>(&d)) {
        mu = p->mu;
        kappa = p->kappa;
        mshape = p->m;
        xvar = p->mu * p->kappa / (p->mu * p->kappa + p->m);
        pref = 0.5 * mod.beta / std::pow(1.0 + p->mu * p->kappa / p->m, p->m);
        kind = SKM;
    } else {
        const auto& kp = std::get<KappaMuParams>(d);
        mu = kp.mu;
        kappa = kp.kappa;
        pref = 0.5 * mod.beta * std::exp(-kp.kappa * kp.mu);
        kind = KM;
    }
    double total = 0.0;
    for (double ap : mod.a) {
        const double z = ap * ap * delta / (4.0 * mu * (1.0 + kappa));
        double sum = 0.0, coef = 1.0;
        for (int j = 0; j < 4000; ++j) {
            double term = coef * high_sir_g(mu + j, z);
            sum += term;
            if (kind == NAK) break;
            if (j > 2 && term < 1e-12 * sum) break;
            coef *= (kind == SKM) ? (mshape + j) * xvar / (j + 1.0)
                                  : kappa * mu / (j + 1.0);
        }
        total += pref * sum;
    }
    return {total, 1e-8 * total, Method::closed_form};
}

}  // namespace fadenet::metrics

#include "fadenet/interference.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fadenet/quad.hpp"

namespace fadenet::interference {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

bool is_pos_int(double x) {
    return x >= 0.5 && std::abs(x - std::round(x)) < 1e-9;
}

// log(1+z) and e^w - 1 without cancellation for small arguments; the tail
// integrals below multiply 1 - MGF by Jacobians up to ~1e15, so 1 - MGF must
// carry relative (not absolute) accuracy.
cplx log1p_c(cplx z) {
    cplx u = 1.0 + z;
    if (u == cplx(1.0)) return z;
    return std::log(u) * (z / (u - 1.0));
}

cplx expm1_c(cplx w) {
    double ex = std::expm1(w.real());
    double sy = std::sin(w.imag());
    double h = std::sin(0.5 * w.imag());
    return {ex * std::cos(w.imag()) - 2.0 * h * h, (ex + 1.0) * sy};
}

// delta * int_0^1 x^{-delta-1} one_minus(x) dx, one_minus(x) = 1 - MGF(x)
// evaluated cancellation-free, by adaptive quadrature after the substitution
// x = t^{1/(1-delta)}, which flattens the x -> 0 singularity.
template <class F>
auto tail_integral(double delta, F&& one_minus) {
    const double pw = 1.0 / (1.0 - delta);
    using T = decltype(one_minus(0.5));
    auto g = [&](double t) -> T {
        if (t <= 0.0) return T{};
        double x = std::pow(t, pw);
        double jac = std::pow(x, -delta - 1.0) * pw * std::pow(t, pw - 1.0);
        return jac * one_minus(x);
    };
    double err = 0.0;
    return delta * quad::adaptive(g, 0.0, 1.0, 1e-13, 1e-11, &err);
}

// Same integral for a gain MGF (given by its log) evaluated at xi*x with
// |xi| possibly huge: split at x0 = 1/|xi| so each piece is resolved on its
// natural scale.  On (0, x0] the power-law substitution applies as above; on
// [x0, 1] a log axis is used, with the MGF-free part integrated exactly.
cplx tail_split(double delta, cplx xi, const std::function<cplx(cplx)>& log_mgf) {
    auto one_minus_at = [&](cplx s) { return -expm1_c(log_mgf(s)); };
    const double axi = std::abs(xi);
    if (axi <= 1.0)
        return tail_integral(delta, [&](double x) { return one_minus_at(xi * x); });
    const double x0 = 1.0 / axi;
    const double pw = 1.0 / (1.0 - delta);
    auto g = [&](double t) -> cplx {
        if (t <= 0.0) return cplx{};
        double tp = std::pow(t, pw);
        return (pw * std::pow(t, -pw)) * one_minus_at(xi * (x0 * tp));
    };
    double err = 0.0;
    const double lead = std::pow(axi, delta);  // x0^{-delta}
    cplx i1 = (delta * lead) * quad::adaptive(g, 0.0, 1.0, 1e-13, 1e-11, &err);
    // delta int_{x0}^1 x^{-delta-1} dx = x0^{-delta} - 1 exactly; subtract the
    // MGF part on the log axis u = log x.
    cplx i2m = quad::adaptive(
        [&](double u) { return std::exp(-delta * u + log_mgf(xi * std::exp(u))); },
        std::log(x0), 0.0, 1e-13 * lead, 1e-11, &err);
    return i1 + (lead - 1.0) - delta * i2m;
}

// Building block F0(c, s) = delta int_0^1 x^{-delta-1} (1 - (1+cx)^{-s}) dx
//                         = 2F1(-delta, s; 1-delta; -c) - 1.
// Large-argument form (convergent for |c| > 1, principal branch, Re c >= 0):
//   F0 = c^delta G(1-d)G(s+d)/G(s) - 1
//        + sum_k (-1)^k (s)_k/k! c^{-s-k} delta/(delta+s+k).
// All sum terms are bounded by (|c|-1)^{-s} <= 1 once |c| >= 2, so there is
// no cancellation against the O(|c|^delta) leading term.
cplx f0_large(cplx c, double s, double delta) {
    const cplx lc = std::log(c);
    const cplx lead = std::exp(delta * lc + std::lgamma(1.0 - delta) +
                               std::lgamma(s + delta) - std::lgamma(s));
    cplx sum = 0.0;
    double lp = 0.0;  // log (s)_k / k!
    double sgn = 1.0;
    const double ac = std::abs(c);
    for (int k = 0; k < 4000; ++k) {
        double lmag = lp - (s + k) * lc.real();
        double mag = (lmag < -745.0) ? 0.0 : std::exp(lmag);
        sum += sgn * mag * std::polar(1.0, -(s + k) * lc.imag()) *
               (delta / (delta + s + k));
        bool past_peak = (s + k) < (k + 1.0) * ac;
        if (past_peak && mag < 1e-18 * (1.0 + std::abs(lead))) break;
        sgn = -sgn;
        lp += std::log((s + k) / (k + 1.0));
    }
    return lead - 1.0 + sum;
}

cplx f0_c(cplx c, double shape, double delta) {
    if (c == cplx(0.0)) return 0.0;
    if (std::abs(c) >= 2.0) return f0_large(c, shape, delta);
    if (shape <= 25.0) {  // larger shapes lose precision in the 2F1 series
        try {
            return special::gauss_2f1(-delta, shape, 1.0 - delta, -c).value - 1.0;
        } catch (const special::ConvergenceError&) {
        }
    }
    return tail_integral(delta, [&](double x) {
        return -expm1_c(-shape * log1p_c(c * x));
    });
}

double f0(double c, double shape, double delta) {
    return f0_c(cplx(c), shape, delta).real();
}

cplx coefficient_numeric_c(const fading::FadingModel& model_i, double alpha, cplx xi) {
    return tail_split(2.0 / alpha, xi,
                      [&](cplx s) { return fading::gain_log_mgf(model_i, s); });
}

cplx coefficient_skm_c(const fading::ShadowedKappaMuParams& p, double alpha, cplx xi) {
    const double delta = 2.0 / alpha;
    const double theta = p.omega / (p.mu * (1.0 + p.kappa));
    const double xicf = (p.mu * p.kappa + p.m) * p.omega / (p.m * p.mu * (1.0 + p.kappa));
    if (p.kappa == 0.0) return f0_c(theta * xi, p.mu, delta);  // theta == xicf
    const int mu_i = (int)std::lround(p.mu), m_i = (int)std::lround(p.m);
    if (mu_i <= m_i) {
        // Gain MGF (1+theta t)^{m-mu} (1+xicf t)^{-m} is a positive-weight
        // mixture of (1+xicf t)^{-j}, j = mu..m, with weights summing to 1:
        //   B_j = (theta/xicf)^{m-mu} C(m-mu, m-j) (xicf/theta - 1)^{j-mu}.
        const double ratio = theta / xicf;  // = m/(mu kappa + m)
        const double w0 = p.mu * p.kappa / p.m;
        // B_j is the Binomial(m-mu, w0/(1+w0)) pmf in n = j-mu, so the mass
        // concentrates near n ~ mu*kappa; walk the weights by recurrence and
        // stop once the (superexponentially decaying) tail is negligible.
        const int n_max = m_i - mu_i;
        double bj = std::exp(n_max * std::log(ratio));
        cplx a = 0.0;
        double bj_peak = 0.0;
        int small_run = 0;
        for (int n = 0; n <= n_max; ++n) {
            cplx term = bj * f0_c(xicf * xi, (double)(mu_i + n), delta);
            a += term;
            bj_peak = std::max(bj_peak, bj);
            if (bj < bj_peak && std::abs(term) < 1e-17 * std::abs(a))
                ++small_run;
            else
                small_run = 0;
            if (small_run >= 3) break;
            bj *= w0 * (double)(n_max - n) / (double)(n + 1);
        }
        return a;
    }
    // mu > m: full partial fractions of (1+theta t)^{-pp} (1+xicf t)^{-qq}
    // over both pole families; weights alternate in sign and blow up as
    // u0 -> 0 (kappa -> 0), so fall back to quadrature when ill-conditioned.
    const int pp = mu_i - m_i, qq = m_i;
    const double u0 = p.mu * p.kappa / (p.mu * p.kappa + p.m);  // 1 - theta/xicf
    const double ratio = theta / xicf;
    std::vector<double> wa(pp + 1, 0.0), wb(qq + 1, 0.0);
    double maxw = 0.0;
    for (int i = 1; i <= pp; ++i) {
        wa[i] = std::pow(ratio, qq) * ((qq % 2) ? -1.0 : 1.0) *
                special::binom(qq + pp - i - 1, pp - i) * std::pow(u0, i - pp - qq);
        maxw = std::max(maxw, std::abs(wa[i]));
    }
    for (int j = 1; j <= qq; ++j) {
        int e = qq - j;
        wb[j] = std::pow(ratio, e) * ((e % 2) ? -1.0 : 1.0) *
                special::binom(pp + qq - j - 1, qq - j) * std::pow(u0, j - pp - qq);
        maxw = std::max(maxw, std::abs(wb[j]));
    }
    if (maxw > 1e7) return coefficient_numeric_c(fading::FadingModel{p}, alpha, xi);
    cplx a = 0.0;
    for (int i = 1; i <= pp; ++i) a += wa[i] * f0_c(theta * xi, (double)i, delta);
    for (int j = 1; j <= qq; ++j) a += wb[j] * f0_c(xicf * xi, (double)j, delta);
    return a;
}

cplx coefficient_km_c(const fading::KappaMuParams& p, double alpha, cplx xi,
                      const special::SeriesControl& ctl) {
    // Gain MGF decomposes as a Poisson(kappa mu) mixture of Gamma(mu+k) MGFs,
    // so A is the Poisson-weighted sum of the Nakagami-form coefficients.
    const double delta = 2.0 / alpha;
    const cplx c = xi * p.omega / (p.mu * (1.0 + p.kappa));
    const double rate = p.kappa * p.mu;
    cplx a = 0.0;
    for (int k = 0; k < std::max(500, ctl.max_terms); ++k) {
        double w = std::exp(k * std::log(rate) - rate - std::lgamma(k + 1.0));
        cplx term = w * f0_c(c, p.mu + k, delta);
        a += term;
        if (k > rate &&
            std::abs(term) < std::max(ctl.abs_tol, ctl.rel_tol * std::abs(a)) * 1e-2)
            return a;
    }
    // extreme kappa*mu: term budget exhausted, defer to quadrature
    return coefficient_numeric_c(fading::FadingModel{p}, alpha, xi);
}

}  // namespace

void validate(const NetworkConfig& net) {
    if (!(net.lambda_bs > 0.0)) throw std::invalid_argument("network: lambda_bs > 0 required");
    if (!(net.alpha > 2.0)) throw std::invalid_argument("network: alpha > 2 required");
    if (!(net.power > 0.0)) throw std::invalid_argument("network: power > 0 required");
    if (!(net.noise >= 0.0)) throw std::invalid_argument("network: noise >= 0 required");
}

double coefficient_nak(double m_i, double omega_i, double alpha, double xi) {
    if (!(m_i > 0.0 && omega_i > 0.0)) throw std::invalid_argument("nakagami coefficient: m, omega > 0");
    return f0(omega_i * xi / m_i, m_i, 2.0 / alpha);
}

double coefficient_skm(const fading::ShadowedKappaMuParams& p, double alpha, double xi) {
    fading::validate(fading::FadingModel{p});
    if (!is_pos_int(p.mu) || !is_pos_int(p.m))
        throw std::invalid_argument("shadowed kappa-mu closed form: integer mu and m required "
                                    "(use the numeric path otherwise)");
    if (xi == 0.0) return 0.0;
    return coefficient_skm_c(p, alpha, cplx(xi)).real();
}

double coefficient_km(const fading::KappaMuParams& p, double alpha, double xi,
                      const special::SeriesControl& ctl) {
    fading::validate(fading::FadingModel{p});
    if (xi == 0.0) return 0.0;
    return coefficient_km_c(p, alpha, cplx(xi), ctl).real();
}

double coefficient_em(const fading::EtaMuParams& p, double alpha, double xi) {
    fading::validate(fading::FadingModel{p});
    if (!is_pos_int(p.mu))
        throw std::invalid_argument("eta-mu closed form: integer mu required");
    return coefficient_skm(fading::eta_mu_as_shadowed(p), alpha, xi);
}

double coefficient_numeric(const fading::FadingModel& model_i, double alpha, double xi) {
    if (!(alpha > 2.0)) throw std::invalid_argument("coefficient_numeric: alpha > 2");
    if (xi == 0.0) return 0.0;
    return coefficient_numeric_c(model_i, alpha, cplx(xi)).real();
}

std::complex<double> coefficient_numeric(const fading::FadingModel& model_i, double alpha,
                                         std::complex<double> xi) {
    if (!(alpha > 2.0)) throw std::invalid_argument("coefficient_numeric: alpha > 2");
    if (!(xi.real() >= 0.0))
        throw std::invalid_argument("coefficient_numeric: Re(xi) >= 0 required");
    if (xi == cplx(0.0)) return 0.0;
    return coefficient_numeric_c(model_i, alpha, xi);
}

std::complex<double> interference_coefficient(const fading::FadingModel& model_i,
                                              const NetworkConfig& net,
                                              std::complex<double> xi) {
    validate(net);
    fading::validate(model_i);
    if (!(xi.real() >= 0.0))
        throw std::invalid_argument("interference_coefficient: Re(xi) >= 0 required");
    if (xi == cplx(0.0)) return 0.0;
    using namespace fading;
    if (const auto* p = std::get_if<ShadowedKappaMuParams>(&model_i)) {
        if (is_pos_int(p->mu) && is_pos_int(p->m))
            return coefficient_skm_c(*p, net.alpha, xi);
        return coefficient_numeric_c(model_i, net.alpha, xi);
    }
    if (const auto* p = std::get_if<KappaMuParams>(&model_i))
        return coefficient_km_c(*p, net.alpha, xi, {});
    if (const auto* p = std::get_if<EtaMuParams>(&model_i)) {
        auto q = eta_mu_as_shadowed(*p);
        if (is_pos_int(p->mu)) return coefficient_skm_c(q, net.alpha, xi);
        return coefficient_numeric_c(model_i, net.alpha, xi);
    }
    const auto& p = std::get<NakagamiParams>(model_i);
    return f0_c(xi * p.omega / p.m, p.m, 2.0 / net.alpha);
}

double interference_coefficient(const fading::FadingModel& model_i,
                                const NetworkConfig& net, double xi) {
    if (!(xi >= 0.0)) throw std::invalid_argument("interference_coefficient: xi >= 0");
    return interference_coefficient(model_i, net, cplx(xi)).real();
}

namespace {

double to_laplace(const NetworkConfig& net, double r, double a_coef) {
    if (!(r > 0.0)) throw std::invalid_argument("laplace transform: r > 0 required");
    return std::exp(-kPi * net.lambda_bs * r * r * a_coef);
}

}  // namespace

double laplace_skm(const fading::ShadowedKappaMuParams& p_i, const NetworkConfig& net,
                   double xi, double r) {
    validate(net);
    return to_laplace(net, r, coefficient_skm(p_i, net.alpha, xi));
}

double laplace_km(const fading::KappaMuParams& p_i, const NetworkConfig& net, double xi,
                  double r, const special::SeriesControl& ctl) {
    validate(net);
    return to_laplace(net, r, coefficient_km(p_i, net.alpha, xi, ctl));
}

double laplace_em(const fading::EtaMuParams& p_i, const NetworkConfig& net, double xi,
                  double r) {
    validate(net);
    return to_laplace(net, r, coefficient_em(p_i, net.alpha, xi));
}

double laplace_nak(double m_i, double omega_i, const NetworkConfig& net, double xi,
                   double r) {
    validate(net);
    return to_laplace(net, r, coefficient_nak(m_i, omega_i, net.alpha, xi));
}

double laplace_numeric(const fading::FadingModel& model_i, const NetworkConfig& net,
                       double xi, double r) {
    validate(net);
    return to_laplace(net, r, coefficient_numeric(model_i, net.alpha, xi));
}

double radial_average(const std::function<double(double)>& g, double lambda_bs) {
    if (!(lambda_bs > 0.0)) throw std::invalid_argument("radial_average: lambda_bs > 0");
    const auto& gl = quad::gauss_laguerre(64);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i)
        s += gl.w[i] * g(std::sqrt(gl.x[i] / (kPi * lambda_bs)));
    return s;
}

std::complex<double> radial_laplace_factor(const NetworkConfig& net,
                                           std::complex<double> xi,
                                           std::complex<double> a_coef) {
    validate(net);
    if (net.noise == 0.0) return 1.0 / (1.0 + a_coef);
    const cplx c =
        xi * net.noise / (net.power * std::pow(kPi * net.lambda_bs, 0.5 * net.alpha));
    // Substitute v = u (1 + A) so the Gauss-Laguerre weight absorbs the dominant
    // exponential decay; the remaining noise factor is smooth and bounded by 1.
    // (Plain GL on exp(-u A - c u^{alpha/2}) loses accuracy once A >> 1.)
    const cplx b = 1.0 + a_coef;
    const auto& gl = quad::gauss_laguerre(64);
    cplx s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        cplx u = gl.x[i] / b;
        s += gl.w[i] * std::exp(-c * std::pow(u, 0.5 * net.alpha));
    }
    return s / b;
}

double radial_laplace_factor(const NetworkConfig& net, double xi, double a_coef) {
    return radial_laplace_factor(net, cplx(xi), cplx(a_coef)).real();
}

}  // namespace fadenet::interference

#include "fadenet/fading.hpp"

#include <cmath>
#include <stdexcept>

#include "fadenet/special.hpp"

namespace fadenet::fading {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

double skm_pdf_log(const ShadowedKappaMuParams& p, double y) {
    // pref * y^{mu-1} e^{-B y} 1F1(m; mu; C y)
    const double B = p.mu * (1.0 + p.kappa) / p.omega;
    const double C = p.mu * p.mu * p.kappa * (1.0 + p.kappa) /
                     (p.omega * (p.mu * p.kappa + p.m));
    double logpref = p.mu * std::log(p.mu) + p.m * std::log(p.m) +
                     p.mu * std::log1p(p.kappa) - std::lgamma(p.mu) -
                     p.mu * std::log(p.omega) - p.m * std::log(p.mu * p.kappa + p.m);
    double log1f1 = (C * y > 0.0) ? special::log_kummer_pos(p.m, p.mu, C * y) : 0.0;
    return logpref + (p.mu - 1.0) * std::log(y) - B * y + log1f1;
}

double km_pdf_log(const KappaMuParams& p, double y) {
    const double B = p.mu * (1.0 + p.kappa) / p.omega;
    const double z = 2.0 * p.mu * std::sqrt(p.kappa * (1.0 + p.kappa) * y / p.omega);
    double logpref = std::log(p.mu) + 0.5 * (p.mu + 1.0) * std::log1p(p.kappa) -
                     0.5 * (p.mu - 1.0) * std::log(p.kappa) - p.mu * p.kappa -
                     std::log(p.omega);
    return logpref + 0.5 * (p.mu - 1.0) * std::log(y / p.omega) - B * y +
           special::bessel_i_scaled_log(p.mu - 1.0, z) + z;
}

}  // namespace

FadingModel shadowed_kappa_mu(double omega, double kappa, double mu, double m) {
    FadingModel v = ShadowedKappaMuParams{omega, kappa, mu, m};
    validate(v);
    return v;
}
FadingModel kappa_mu(double omega, double kappa, double mu) {
    FadingModel v = KappaMuParams{omega, kappa, mu};
    validate(v);
    return v;
}
FadingModel eta_mu(double omega, double eta, double mu) {
    FadingModel v = EtaMuParams{omega, eta, mu};
    validate(v);
    return v;
}
FadingModel nakagami(double m, double omega) {
    FadingModel v = NakagamiParams{m, omega};
    validate(v);
    return v;
}
FadingModel rayleigh(double omega) { return nakagami(1.0, omega); }
FadingModel rice(double k_factor, double omega) { return kappa_mu(omega, k_factor, 1.0); }

void validate(const FadingModel& model) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>) {
                if (!(p.omega > 0.0)) bad("shadowed kappa-mu: omega > 0 required");
                if (!(p.kappa >= 0.0)) bad("shadowed kappa-mu: kappa >= 0 required");
                if (!(p.mu > 0.0)) bad("shadowed kappa-mu: mu > 0 required");
                if (!(p.m > 0.0)) bad("shadowed kappa-mu: m > 0 required");
            } else if constexpr (std::is_same_v<T, KappaMuParams>) {
                if (!(p.omega > 0.0)) bad("kappa-mu: omega > 0 required");
                if (!(p.kappa > 0.0)) bad("kappa-mu: kappa > 0 required (use Nakagami for kappa = 0)");
                if (!(p.mu > 0.0)) bad("kappa-mu: mu > 0 required");
            } else if constexpr (std::is_same_v<T, EtaMuParams>) {
                if (!(p.omega > 0.0)) bad("eta-mu: omega > 0 required");
                if (!(p.eta > 0.0)) bad("eta-mu: eta > 0 required");
                if (!(p.mu > 0.0)) bad("eta-mu: mu > 0 required");
            } else {
                if (!(p.omega > 0.0)) bad("nakagami: omega > 0 required");
                if (!(p.m > 0.0)) bad("nakagami: m > 0 required");
            }
        },
        model);
}

double mean_power(const FadingModel& model) {
    return std::visit([](const auto& p) { return p.omega; }, model);
}

double second_moment(const FadingModel& model) {
    // From the mixture construction h = Theta G, G | zeta ~ Gamma(mu + N),
    // N ~ Poisson(mu kappa zeta), zeta ~ Gamma(m, mean 1):
    // E[G^2] = (mu(1+kappa))^2 + mu^2 kappa^2 / m + 2 mu kappa + mu.
    auto skm_like = [](double omega, double kappa, double mu, double inv_m) {
        double theta = omega / (mu * (1.0 + kappa));
        double mk = mu * kappa;
        double g2 = mu * (1.0 + kappa) * mu * (1.0 + kappa) + mk * mk * inv_m +
                    2.0 * mk + mu;
        return theta * theta * g2;
    };
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>)
                return skm_like(p.omega, p.kappa, p.mu, 1.0 / p.m);
            else if constexpr (std::is_same_v<T, KappaMuParams>)
                return skm_like(p.omega, p.kappa, p.mu, 0.0);
            else if constexpr (std::is_same_v<T, EtaMuParams>) {
                auto s = eta_mu_as_shadowed(p);
                return skm_like(s.omega, s.kappa, s.mu, 1.0 / s.m);
            } else {
                return p.omega * p.omega * (1.0 + 1.0 / p.m);
            }
        },
        model);
}

std::string describe(const FadingModel& model) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>)
                return "shadowed_kappa_mu(omega=" + std::to_string(p.omega) +
                       ",kappa=" + std::to_string(p.kappa) + ",mu=" + std::to_string(p.mu) +
                       ",m=" + std::to_string(p.m) + ")";
            else if constexpr (std::is_same_v<T, KappaMuParams>)
                return "kappa_mu(omega=" + std::to_string(p.omega) +
                       ",kappa=" + std::to_string(p.kappa) + ",mu=" + std::to_string(p.mu) + ")";
            else if constexpr (std::is_same_v<T, EtaMuParams>)
                return "eta_mu(omega=" + std::to_string(p.omega) +
                       ",eta=" + std::to_string(p.eta) + ",mu=" + std::to_string(p.mu) + ")";
            else
                return "nakagami(m=" + std::to_string(p.m) +
                       ",omega=" + std::to_string(p.omega) + ")";
        },
        model);
}

ShadowedKappaMuParams eta_mu_as_shadowed(const EtaMuParams& p) {
    const double eta = (p.eta > 1.0) ? 1.0 / p.eta : p.eta;  // density symmetric in eta <-> 1/eta
    return ShadowedKappaMuParams{p.omega, (1.0 - eta) / (2.0 * eta), 2.0 * p.mu, p.mu};
}

double pdf(const FadingModel& model, double y) {
    if (!(y > 0.0)) throw std::domain_error("pdf: y > 0 required");
    validate(model);
    return std::visit(
        [y](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>)
                return std::exp(skm_pdf_log(p, y));
            else if constexpr (std::is_same_v<T, KappaMuParams>)
                return std::exp(km_pdf_log(p, y));
            else if constexpr (std::is_same_v<T, EtaMuParams>)
                return std::exp(skm_pdf_log(eta_mu_as_shadowed(p), y));
            else
                return std::exp(p.m * std::log(p.m / p.omega) - std::lgamma(p.m) +
                                (p.m - 1.0) * std::log(y) - p.m * y / p.omega);
        },
        model);
}

namespace {

// log(1+z) without cancellation for small |z| (Kahan's u/(u-1) correction).
std::complex<double> log1p_c(std::complex<double> z) {
    std::complex<double> u = 1.0 + z;
    if (u == std::complex<double>(1.0)) return z;
    return std::log(u) * (z / (u - 1.0));
}

}  // namespace

std::complex<double> gain_log_mgf(const FadingModel& model, std::complex<double> s) {
    using cplx = std::complex<double>;
    if (!(s.real() >= 0.0)) throw std::domain_error("gain_log_mgf: Re(s) >= 0 required");
    validate(model);
    return std::visit(
        [s](const auto& p) -> cplx {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>) {
                const double B = p.mu * (1.0 + p.kappa) / p.omega;
                const double D = B * p.m / (p.mu * p.kappa + p.m);
                return (p.m - p.mu) * log1p_c(s / B) - p.m * log1p_c(s / D);
            } else if constexpr (std::is_same_v<T, KappaMuParams>) {
                const double B = p.mu * (1.0 + p.kappa) / p.omega;
                return -p.mu * log1p_c(s / B) - p.kappa * p.mu * s / (B + s);
            } else if constexpr (std::is_same_v<T, EtaMuParams>) {
                return gain_log_mgf(FadingModel{eta_mu_as_shadowed(p)}, s);
            } else {
                return -p.m * log1p_c(s * p.omega / p.m);
            }
        },
        model);
}

std::complex<double> gain_mgf(const FadingModel& model, std::complex<double> s) {
    return std::exp(gain_log_mgf(model, s));
}

double gain_mgf(const FadingModel& model, double s) {
    if (!(s >= 0.0)) throw std::domain_error("gain_mgf: s >= 0 required");
    validate(model);
    return std::visit(
        [s](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>) {
                const double B = p.mu * (1.0 + p.kappa) / p.omega;
                const double D = B * p.m / (p.mu * p.kappa + p.m);
                // log space: the two factors overflow/underflow separately
                // for large m even though the product is in (0, 1]
                return std::exp((p.m - p.mu) * std::log1p(s / B) -
                                p.m * std::log1p(s / D));
            } else if constexpr (std::is_same_v<T, KappaMuParams>) {
                const double B = p.mu * (1.0 + p.kappa) / p.omega;
                return std::pow(B / (B + s), p.mu) *
                       std::exp(-p.kappa * p.mu * s / (B + s));
            } else if constexpr (std::is_same_v<T, EtaMuParams>) {
                return gain_mgf(FadingModel{eta_mu_as_shadowed(p)}, s);
            } else {
                return std::pow(1.0 + s * p.omega / p.m, -p.m);
            }
        },
        model);
}

namespace {

double sample_skm_like(double omega, double kappa, double mu, double m_or_zero,
                       std::mt19937_64& rng) {
    double noncentral = mu * kappa;
    if (m_or_zero > 0.0) {  // shadowed dominant component
        std::gamma_distribution<double> shadow(m_or_zero, 1.0 / m_or_zero);
        noncentral *= shadow(rng);
    }
    double shape = mu;
    if (noncentral > 0.0) {
        std::poisson_distribution<long> pois(noncentral);
        shape += (double)pois(rng);
    }
    std::gamma_distribution<double> g(shape, 1.0);
    return g(rng) * omega / (mu * (1.0 + kappa));
}

}  // namespace

double sample(const FadingModel& model, std::mt19937_64& rng) {
    validate(model);
    return std::visit(
        [&rng](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ShadowedKappaMuParams>)
                return sample_skm_like(p.omega, p.kappa, p.mu, p.m, rng);
            else if constexpr (std::is_same_v<T, KappaMuParams>)
                return sample_skm_like(p.omega, p.kappa, p.mu, 0.0, rng);
            else if constexpr (std::is_same_v<T, EtaMuParams>) {
                auto q = eta_mu_as_shadowed(p);
                return sample_skm_like(q.omega, q.kappa, q.mu, q.m, rng);
            } else {
                std::gamma_distribution<double> g(p.m, p.omega / p.m);
                return g(rng);
            }
        },
        model);
}

}  // namespace fadenet::fading

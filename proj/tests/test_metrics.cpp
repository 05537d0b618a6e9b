// Performance metrics: modulation constant table, frozen Rayleigh baselines,
// cross-validation between independent evaluation paths (inversion vs direct,
// closed kernel vs MGF transform, exact vs high-SIR asymptote), and the
// structural properties each metric must satisfy.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fadenet/metrics.hpp"

using namespace fadenet;
using metrics::LinkSpec;

namespace {

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

LinkSpec rayleigh_link(double alpha, double lambda = 1e-4, double noise = 0.0) {
    return {fading::rayleigh(1.0), fading::rayleigh(1.0), {lambda, alpha, 1.0, noise}};
}

double db(double x) { return std::pow(10.0, x / 10.0); }

}  // namespace

TEST_CASE("modulation constant table") {
    auto bpsk = metrics::modulation_constants("bpsk");
    CHECK(bpsk.name == "BPSK");
    CHECK(bpsk.beta == 1.0);
    CHECK(bpsk.tau == 1);
    REQUIRE(bpsk.a.size() == 1);
    CHECK(rel_err(bpsk.a[0], std::sqrt(2.0)) < 1e-15);

    auto qpsk = metrics::modulation_constants("qpsk");
    CHECK(qpsk.name == "QPSK");
    CHECK(qpsk.beta == 1.0);
    CHECK(qpsk.tau == 1);
    REQUIRE(qpsk.a.size() == 1);
    CHECK(rel_err(qpsk.a[0], 1.0) < 1e-14);

    auto psk8 = metrics::modulation_constants("MPSK", 8);
    CHECK(psk8.beta == 2.0 / 3.0);
    CHECK(psk8.tau == 2);
    REQUIRE(psk8.a.size() == 2);
    CHECK(rel_err(psk8.a[0], std::sqrt(2.0) * std::sin(M_PI / 8.0)) < 1e-14);
    CHECK(rel_err(psk8.a[1], std::sqrt(2.0) * std::sin(3.0 * M_PI / 8.0)) < 1e-14);

    auto qam16 = metrics::modulation_constants("mqam", 16);
    CHECK(qam16.name == "16-QAM");
    CHECK(rel_err(qam16.beta, 0.75) < 1e-15);
    CHECK(qam16.tau == 2);
    REQUIRE(qam16.a.size() == 2);
    CHECK(rel_err(qam16.a[0], std::sqrt(3.0 / 15.0)) < 1e-14);
    CHECK(rel_err(qam16.a[1], 3.0 * std::sqrt(3.0 / 15.0)) < 1e-14);

    CHECK_THROWS_AS(metrics::modulation_constants("nosuch"), std::invalid_argument);
    CHECK_THROWS_AS(metrics::modulation_constants("mqam", 24), std::invalid_argument);
    CHECK_THROWS_AS(metrics::modulation_constants("mpsk"), std::invalid_argument);
}

TEST_CASE("frozen Rayleigh interference-limited baselines (alpha = 4)") {
    auto link = rayleigh_link(4.0);
    const double t_db[4] = {-5.0, 0.0, 5.0, 10.0};
    const double cov[4] = {0.7763553337822836, 0.5600991535115574, 0.3469382267859512,
                           0.2000496102805415};
    for (int i = 0; i < 4; ++i) {
        CHECK_MESSAGE(rel_err(metrics::coverage(link, db(t_db[i])).value, cov[i]) < 1e-5,
                      "AW T=", t_db[i], " dB");
        CHECK_MESSAGE(
            rel_err(metrics::coverage_direct(link, db(t_db[i])).value, cov[i]) < 2e-4,
            "direct T=", t_db[i], " dB");
    }
    // closed form 1/(1 + sqrt(T) atan(sqrt(T))) at T = 1
    CHECK(rel_err(metrics::coverage(link, 1.0).value, 1.0 / (1.0 + M_PI / 4.0)) < 1e-5);
    CHECK(rel_err(metrics::ergodic_rate(link).value, 1.48898762466583) < 1e-8);
    CHECK(rel_err(metrics::ergodic_rate(rayleigh_link(3.0)).value, 0.8712597932203787) <
          1e-8);
}

TEST_CASE("coverage: inversion paths agree and are monotone in the threshold") {
    const LinkSpec links[] = {
        {fading::shadowed_kappa_mu(1.0, 2.0, 2.0, 3.0), fading::kappa_mu(1.0, 1.5, 2.0),
         {1e-4, 3.5, 1.0, 0.0}},
        {fading::kappa_mu(1.0, 4.0, 1.0), fading::nakagami(2.0, 1.0),
         {1e-4, 3.0, 1.0, 1e-9}},
        {fading::eta_mu(1.0, 0.4, 1.0), fading::eta_mu(1.0, 0.4, 1.0),
         {1e-4, 4.0, 1.0, 0.0}},
    };
    for (const auto& link : links) {
        double prev = 1.1;
        for (double t_db = -10.0; t_db <= 20.0 + 1e-9; t_db += 6.0) {
            double aw = metrics::coverage(link, db(t_db)).value;
            double direct = metrics::coverage_direct(link, db(t_db)).value;
            CHECK((aw > 0.0 && aw < 1.0));
            CHECK_MESSAGE(std::fabs(aw - direct) < 1e-4, "T=", t_db, " dB: ", aw, " vs ",
                          direct);
            CHECK(aw < prev + 1e-9);
            prev = aw;
        }
    }
}

TEST_CASE("ergodic rate: closed kernels vs the MGF-transform oracle") {
    const LinkSpec links[] = {
        {fading::shadowed_kappa_mu(1.0, 2.0, 1.5, 2.0),
         fading::shadowed_kappa_mu(1.0, 2.0, 1.5, 2.0), {1e-4, 3.5, 1.0, 0.0}},
        {fading::kappa_mu(1.0, 1.5, 2.0), fading::kappa_mu(1.0, 1.5, 2.0),
         {1e-4, 3.0, 1.0, 0.0}},
        {fading::nakagami(2.5, 1.0), fading::nakagami(2.5, 1.0), {1e-4, 4.0, 1.0, 1e-9}},
        {fading::eta_mu(1.0, 0.4, 1.5), fading::rayleigh(1.0), {1e-4, 3.5, 1.0, 0.0}},
    };
    for (const auto& link : links) {
        double a = metrics::ergodic_rate(link).value;
        double b = metrics::ergodic_rate_mgf_oracle(link).value;
        CHECK_MESSAGE(rel_err(a, b) < 1e-6, fading::describe(link.desired), ": ", a,
                      " vs ", b);
    }
}

TEST_CASE("rate kernel: shadowed kappa-mu with m = mu collapses to Nakagami") {
    for (double xi : {0.05, 0.7, 3.0, 25.0}) {
        double a = metrics::rate_kernel(fading::shadowed_kappa_mu(1.0, 2.0, 2.0, 2.0), xi);
        double b = metrics::rate_kernel(fading::nakagami(2.0, 1.0), xi);
        CHECK_MESSAGE(rel_err(a, b) < 1e-8, "xi=", xi);
    }
}

TEST_CASE("interference-limited rate is density-invariant; noise breaks it monotonely") {
    auto model = fading::shadowed_kappa_mu(1.0, 2.0, 2.0, 3.0);
    double base = 0.0;
    for (double lambda : {1e-6, 1e-4, 1e-2}) {
        LinkSpec link{model, model, {lambda, 3.5, 1.0, 0.0}};
        double r = metrics::ergodic_rate_nonoise(link).value;
        CHECK(rel_err(r, metrics::ergodic_rate(link).value) < 1e-6);
        if (base == 0.0)
            base = r;
        else
            CHECK(rel_err(r, base) < 1e-6);
    }
    // with noise, densification only helps: rate nondecreasing in lambda
    double prev = 0.0;
    for (double lambda : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        LinkSpec link{model, model, {lambda, 3.5, 1.0, 1e-8}};
        double r = metrics::ergodic_rate(link).value;
        CHECK(r >= prev - 1e-12);
        prev = r;
    }
}

TEST_CASE("bit error probability: kernel form vs Craig-form oracle") {
    const auto qpsk = metrics::modulation_constants("qpsk");
    const auto qam16 = metrics::modulation_constants("mqam", 16);
    const LinkSpec links[] = {
        {fading::shadowed_kappa_mu(10.0, 2.0, 2.0, 3.0), fading::nakagami(2.0, 1.0),
         {1e-4, 3.5, 1.0, 0.0}},
        {fading::kappa_mu(10.0, 1.5, 2.0), fading::rayleigh(1.0), {1e-4, 3.0, 1.0, 0.0}},
        {fading::nakagami(2.0, 5.0), fading::nakagami(1.0, 1.0), {1e-4, 4.0, 1.0, 1e-9}},
    };
    for (const auto& link : links) {
        for (const auto& mod : {qpsk, qam16}) {
            double a = metrics::bep(link, mod).value;
            double b = metrics::bep_mgf_oracle(link, mod).value;
            CHECK((a > 0.0 && a < 0.5));
            CHECK_MESSAGE(rel_err(a, b) < 1e-6, mod.name, " ", a, " vs ", b);
        }
    }
}

TEST_CASE("bit error probability decreases with the mean power ratio") {
    const auto qpsk = metrics::modulation_constants("qpsk");
    double prev = 1.0;
    for (int i = 0; i < 20; ++i) {
        double sir_db = -5.0 + 2.0 * i;
        LinkSpec link{fading::shadowed_kappa_mu(db(sir_db), 2.0, 1.0, 1.0),
                      fading::nakagami(1.5, 1.0), {1e-4, 3.5, 1.0, 0.0}};
        double b = metrics::bep(link, qpsk).value;
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("high-SIR asymptote: accuracy and shadowing-independence of the interferer") {
    const auto qpsk = metrics::modulation_constants("qpsk");
    auto desired = [&](double sir) { return fading::shadowed_kappa_mu(sir, 2.0, 1.0, 2.0); };
    for (double alpha : {3.0, 4.0}) {
        for (double m_i : {1.0, 2.5}) {
            double s30 = db(30.0), s40 = db(40.0);
            LinkSpec l30{desired(s30), fading::nakagami(m_i, 1.0), {1e-4, alpha, 1.0, 0.0}};
            LinkSpec l40{desired(s40), fading::nakagami(m_i, 1.0), {1e-4, alpha, 1.0, 0.0}};
            double exact30 = metrics::bep(l30, qpsk).value;
            double exact40 = metrics::bep(l40, qpsk).value;
            double asym30 =
                metrics::bep_high_sir(desired(s30), m_i, alpha, s30, qpsk).value;
            double asym40 =
                metrics::bep_high_sir(desired(s40), m_i, alpha, s40, qpsk).value;
            CHECK_MESSAGE(rel_err(asym30, exact30) < 0.05, "alpha=", alpha, " m_i=", m_i,
                          " 30dB: ", asym30, " vs ", exact30);
            CHECK_MESSAGE(rel_err(asym40, exact40) < 0.01, "alpha=", alpha, " m_i=", m_i,
                          " 40dB: ", asym40, " vs ", exact40);
        }
        // the asymptote does not depend on the interferer fading figure
        double s = db(35.0);
        double a1 = metrics::bep_high_sir(desired(s), 0.6, alpha, s, qpsk).value;
        double a2 = metrics::bep_high_sir(desired(s), 8.0, alpha, s, qpsk).value;
        CHECK(rel_err(a1, a2) < 1e-10);
    }
}

TEST_CASE("in-phase/quadrature ratio symmetry of the error probability") {
    const auto qpsk = metrics::modulation_constants("qpsk");
    for (double eta : {0.2, 0.7}) {
        for (double mu : {1.0, 1.5}) {
            LinkSpec a{fading::eta_mu(10.0, eta, mu), fading::nakagami(2.0, 1.0),
                       {1e-4, 3.5, 1.0, 0.0}};
            LinkSpec b{fading::eta_mu(10.0, 1.0 / eta, mu), fading::nakagami(2.0, 1.0),
                       {1e-4, 3.5, 1.0, 0.0}};
            CHECK(rel_err(metrics::bep(a, qpsk).value, metrics::bep(b, qpsk).value) <
                  1e-6);
        }
    }
}

TEST_CASE("method tags") {
    CHECK(std::string(metrics::method_name(metrics::Method::inversion)) == "inversion");
    auto link = rayleigh_link(4.0);
    CHECK(metrics::coverage(link, 1.0).method == metrics::Method::inversion);
    CHECK(metrics::ergodic_rate(link).method == metrics::Method::quadrature);
}

// SINR moment generating function: normalization, shape on the real axis,
// cross-family reduction chains, generic Bessel-transform oracle agreement,
// and the complex continuation used by inversion formulas.
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fadenet/sinr_mgf.hpp"

using namespace fadenet;
using sinrmgf::LinkSpec;
using cplx = std::complex<double>;

namespace {

const interference::NetworkConfig kNet{1e-4, 3.5, 1.0, 0.0};
const interference::NetworkConfig kNoisyNet{1e-4, 3.5, 1.0, 1e-9};

LinkSpec symmetric_link(const fading::FadingModel& m,
                        const interference::NetworkConfig& net = kNet) {
    return {m, m, net};
}

std::vector<fading::FadingModel> family_grid() {
    std::vector<fading::FadingModel> out;
    for (double kappa : {0.2, 2.0, 15.0})
        for (double mu : {1.0, 2.0, 4.0})
            for (double m : {0.7, 2.0, 20.0})
                out.push_back(fading::shadowed_kappa_mu(1.0, kappa, mu, m));
    out.push_back(fading::kappa_mu(1.0, 1.5, 2.0));
    out.push_back(fading::kappa_mu(1.0, 8.0, 1.0));
    out.push_back(fading::eta_mu(1.0, 0.3, 1.5));
    out.push_back(fading::eta_mu(1.0, 4.0, 1.0));
    out.push_back(fading::nakagami(0.6, 1.0));
    out.push_back(fading::nakagami(3.0, 1.0));
    out.push_back(fading::rayleigh(1.0));
    out.push_back(fading::rice(5.0, 1.0));
    return out;
}

}  // namespace

TEST_CASE("M(0) = 1 across the family grid") {
    for (const auto& m : family_grid()) {
        cplx v = sinrmgf::mgf_sinr(symmetric_link(m), cplx(0.0));
        CHECK_MESSAGE(std::abs(v - 1.0) < 1e-8, fading::describe(m));
    }
}

TEST_CASE("real-axis shape: in (0,1], decreasing, convex") {
    const fading::FadingModel models[] = {
        fading::shadowed_kappa_mu(1.0, 2.0, 1.5, 2.0), fading::kappa_mu(1.0, 1.5, 2.0),
        fading::eta_mu(1.0, 0.4, 1.0), fading::nakagami(2.0, 1.0)};
    for (const auto& m : models) {
        auto link = symmetric_link(m);
        std::vector<double> vals;
        for (double s = 0.0; s <= 6.0 + 1e-9; s += 0.5)
            vals.push_back(sinrmgf::mgf_sinr(link, cplx(s)).real());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            CHECK(vals[i] > 0.0);
            CHECK(vals[i] <= 1.0 + 1e-12);
            if (i >= 1) CHECK(vals[i] < vals[i - 1] + 1e-12);
            if (i >= 2) CHECK(vals[i] - 2.0 * vals[i - 1] + vals[i - 2] > -1e-9);
        }
    }
}

TEST_CASE("reduction chains match across families") {
    for (double s : {0.1, 1.0, 10.0}) {
        // shadowed kappa-mu with m = mu collapses to Nakagami-mu
        for (double kappa : {0.5, 3.0}) {
            double mu = 2.0;
            double om = 1.0;
            auto a = sinrmgf::mgf_sinr(
                symmetric_link(fading::shadowed_kappa_mu(om, kappa, mu, mu)), cplx(s));
            auto b =
                sinrmgf::mgf_sinr(symmetric_link(fading::nakagami(mu, om)), cplx(s));
            CHECK_MESSAGE(std::abs(a - b) < 1e-6, "skm->nak s=", s, " kappa=", kappa);
        }
        // shadowing -> infinity recovers kappa-mu
        {
            auto a = sinrmgf::mgf_sinr(
                symmetric_link(fading::shadowed_kappa_mu(1.0, 1.5, 2.0, 1e4)), cplx(s));
            auto b =
                sinrmgf::mgf_sinr(symmetric_link(fading::kappa_mu(1.0, 1.5, 2.0)), cplx(s));
            CHECK_MESSAGE(std::abs(a - b) < 1e-3, "skm->km s=", s);
        }
        // eta-mu equals its substituted shadowed kappa-mu form
        {
            fading::EtaMuParams em{1.0, 0.4, 1.5};
            auto a = sinrmgf::mgf_sinr(symmetric_link(fading::FadingModel{em}), cplx(s));
            auto b = sinrmgf::mgf_sinr(
                symmetric_link(fading::FadingModel{fading::eta_mu_as_shadowed(em)}),
                cplx(s));
            CHECK_MESSAGE(std::abs(a - b) < 1e-8, "em->skm s=", s);
        }
        // Nakagami(1) is Rayleigh
        {
            auto a = sinrmgf::mgf_sinr(symmetric_link(fading::nakagami(1.0, 1.0)), cplx(s));
            auto b = sinrmgf::mgf_sinr(symmetric_link(fading::rayleigh(1.0)), cplx(s));
            CHECK(std::abs(a - b) < 1e-12);
        }
    }
}

TEST_CASE("assembled MGF matches the Bessel-transform oracle") {
    const fading::FadingModel models[] = {
        fading::shadowed_kappa_mu(1.0, 2.0, 1.5, 2.0),
        fading::kappa_mu(1.0, 1.5, 2.0),
        fading::nakagami(2.5, 1.0),
        fading::eta_mu(1.0, 0.4, 1.0),
    };
    for (const auto& m : models) {
        auto link = symmetric_link(m, kNoisyNet);
        for (double s : {0.3, 2.0}) {
            double a = sinrmgf::mgf_sinr(link, cplx(s)).real();
            double b = sinrmgf::mgf_sinr_generic(link, s);
            CHECK_MESSAGE(std::fabs(a - b) < 1e-4,
                          fading::describe(m), " s=", s, " got ", a, " vs ", b);
        }
    }
    // mixed desired/interferer models
    LinkSpec mixed{fading::shadowed_kappa_mu(1.0, 3.0, 2.0, 1.0),
                   fading::nakagami(0.8, 1.0), kNet};
    for (double s : {0.5, 4.0}) {
        CHECK(std::fabs(sinrmgf::mgf_sinr(mixed, cplx(s)).real() -
                        sinrmgf::mgf_sinr_generic(mixed, s)) < 1e-4);
    }
}

TEST_CASE("complex continuation: conjugate symmetry and modulus bound") {
    auto link = symmetric_link(fading::shadowed_kappa_mu(1.0, 2.0, 2.0, 3.0), kNoisyNet);
    for (double sr : {0.5, 2.0, 8.0}) {
        for (double si : {0.3, 2.0, 12.0}) {
            cplx s(sr, si);
            cplx a = sinrmgf::mgf_sinr(link, s);
            cplx ac = sinrmgf::mgf_sinr(link, std::conj(s));
            CHECK(std::abs(ac - std::conj(a)) < 1e-9);
            CHECK(std::abs(a) <= sinrmgf::mgf_sinr(link, cplx(sr)).real() + 1e-9);
        }
        // vanishing imaginary part converges to the real-axis value
        cplx near_real = sinrmgf::mgf_sinr(link, cplx(sr, 1e-7));
        CHECK(std::abs(near_real - sinrmgf::mgf_sinr(link, cplx(sr))) < 1e-6);
    }
    CHECK_THROWS_AS(sinrmgf::mgf_sinr(link, cplx(-0.5, 1.0)), std::domain_error);
}

TEST_CASE("noise lowers SINR and raises the MGF") {
    auto m = fading::kappa_mu(1.0, 1.5, 2.0);
    auto quiet = symmetric_link(m, kNet);
    auto noisy = symmetric_link(m, {1e-4, 3.5, 1.0, 1e-7});
    for (double s : {0.5, 2.0}) {
        CHECK(sinrmgf::mgf_sinr(noisy, cplx(s)).real() >
              sinrmgf::mgf_sinr(quiet, cplx(s)).real());
    }
}

TEST_CASE("radial factor: closed no-noise form and complex consistency") {
    auto link = symmetric_link(fading::nakagami(2.0, 1.0));
    for (double xi : {0.3, 2.0, 40.0}) {
        double a = interference::interference_coefficient(link.interferer, link.network, xi);
        CHECK(std::fabs(sinrmgf::radial_factor(link, xi) - 1.0 / (1.0 + a)) < 1e-10);
        cplx fc = sinrmgf::radial_factor(link, cplx(xi));
        CHECK(std::abs(fc - sinrmgf::radial_factor(link, xi)) < 1e-10);
    }
}

TEST_CASE("link validation") {
    LinkSpec bad{fading::nakagami(2.0, 1.0), fading::nakagami(2.0, 1.0),
                 {1e-4, 1.5, 1.0, 0.0}};
    CHECK_THROWS_AS(sinrmgf::validate(bad), std::invalid_argument);
    LinkSpec bad2{fading::FadingModel{fading::NakagamiParams{-1.0, 1.0}},
                  fading::nakagami(2.0, 1.0), kNet};
    CHECK_THROWS_AS(sinrmgf::validate(bad2), std::invalid_argument);
    CHECK_NOTHROW(sinrmgf::validate(symmetric_link(fading::rayleigh(1.0))));
}

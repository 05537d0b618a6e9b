// Python bindings for the core analysis operations: fading models, the SINR
// MGF, analytic metrics, the Monte Carlo estimator, and the validation matrix.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fadenet/metrics.hpp"
#include "fadenet/runconfig.hpp"
#include "fadenet/simulator.hpp"
#include "fadenet/validation.hpp"

namespace py = pybind11;
using namespace fadenet;

namespace {

metrics::ModulationScheme make_mod(const std::string& name, int M) {
    return metrics::modulation_constants(name, M);
}

py::dict result_dict(const metrics::MetricResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["error_estimate"] = r.error_estimate;
    d["method"] = metrics::method_name(r.method);
    return d;
}

}  // namespace

PYBIND11_MODULE(fadenet, m) {
    m.doc() = "Downlink cellular coverage / rate / BEP analysis over generalized fading";

    py::class_<fading::FadingModel>(m, "FadingModel")
        .def("__repr__",
             [](const fading::FadingModel& f) { return fading::describe(f); })
        .def_property_readonly("mean_power", &fading::mean_power)
        .def_property_readonly("second_moment", &fading::second_moment);

    m.def("shadowed_kappa_mu", &fading::shadowed_kappa_mu, py::arg("omega"),
          py::arg("kappa"), py::arg("mu"), py::arg("m"));
    m.def("kappa_mu", &fading::kappa_mu, py::arg("omega"), py::arg("kappa"),
          py::arg("mu"));
    m.def("eta_mu", &fading::eta_mu, py::arg("omega"), py::arg("eta"), py::arg("mu"));
    m.def("nakagami", &fading::nakagami, py::arg("m"), py::arg("omega"));
    m.def("rayleigh", &fading::rayleigh, py::arg("omega"));
    m.def("rice", &fading::rice, py::arg("k_factor"), py::arg("omega"));

    m.def("pdf", &fading::pdf, py::arg("model"), py::arg("y"),
          "Density of the power gain at y > 0");
    m.def(
        "gain_mgf",
        [](const fading::FadingModel& f, double s) { return fading::gain_mgf(f, s); },
        py::arg("model"), py::arg("s"), "E[exp(-s h)] of the power gain");

    py::class_<interference::NetworkConfig>(m, "NetworkConfig")
        .def(py::init([](double lambda_bs, double alpha, double power, double noise) {
                 interference::NetworkConfig net{lambda_bs, alpha, power, noise};
                 interference::validate(net);
                 return net;
             }),
             py::arg("lambda_bs") = 1e-4, py::arg("alpha") = 3.0, py::arg("power") = 1.0,
             py::arg("noise") = 0.0)
        .def_readwrite("lambda_bs", &interference::NetworkConfig::lambda_bs)
        .def_readwrite("alpha", &interference::NetworkConfig::alpha)
        .def_readwrite("power", &interference::NetworkConfig::power)
        .def_readwrite("noise", &interference::NetworkConfig::noise);

    py::class_<sinrmgf::LinkSpec>(m, "LinkSpec")
        .def(py::init([](const fading::FadingModel& desired,
                         const fading::FadingModel& interferer,
                         const interference::NetworkConfig& network) {
                 sinrmgf::LinkSpec link{desired, interferer, network};
                 sinrmgf::validate(link);
                 return link;
             }),
             py::arg("desired"), py::arg("interferer"), py::arg("network"))
        .def_readwrite("desired", &sinrmgf::LinkSpec::desired)
        .def_readwrite("interferer", &sinrmgf::LinkSpec::interferer)
        .def_readwrite("network", &sinrmgf::LinkSpec::network);

    m.def(
        "interference_coefficient",
        [](const fading::FadingModel& f, const interference::NetworkConfig& net,
           double xi) { return interference::interference_coefficient(f, net, xi); },
        py::arg("interferer"), py::arg("network"), py::arg("xi"),
        "Exponent coefficient A(xi) of the interference Laplace transform");

    m.def(
        "mgf_sinr",
        [](const sinrmgf::LinkSpec& link, std::complex<double> s) {
            return sinrmgf::mgf_sinr(link, s);
        },
        py::arg("link"), py::arg("s"), "SINR moment generating function E[exp(-s SINR)]");

    m.def(
        "coverage",
        [](const sinrmgf::LinkSpec& link, double T) {
            return result_dict(metrics::coverage(link, T));
        },
        py::arg("link"), py::arg("threshold"), "P(SINR > threshold)");
    m.def(
        "ergodic_rate",
        [](const sinrmgf::LinkSpec& link) {
            return result_dict(metrics::ergodic_rate(link));
        },
        py::arg("link"), "E[ln(1 + SINR)] in nats per channel use");
    m.def(
        "bep",
        [](const sinrmgf::LinkSpec& link, const std::string& modulation, int M) {
            return result_dict(metrics::bep(link, make_mod(modulation, M)));
        },
        py::arg("link"), py::arg("modulation") = "qpsk", py::arg("M") = 0,
        "Average bit error probability");
    m.def(
        "bep_high_sir",
        [](const fading::FadingModel& desired, double interferer_m, double alpha,
           double sir, const std::string& modulation, int M) {
            return result_dict(metrics::bep_high_sir(desired, interferer_m, alpha, sir,
                                                     make_mod(modulation, M)));
        },
        py::arg("desired"), py::arg("interferer_m"), py::arg("alpha"), py::arg("sir"),
        py::arg("modulation") = "qpsk", py::arg("M") = 0,
        "High-SIR interference-limited asymptote of the bit error probability");

    m.def(
        "simulate",
        [](const sinrmgf::LinkSpec& link, const std::vector<double>& thresholds,
           const std::string& modulation, int M, std::int64_t snapshots,
           std::uint64_t seed) {
            simulator::SimConfig sim;
            sim.snapshots = snapshots;
            sim.seed = seed;
            auto est =
                simulator::estimate_all(link, thresholds, make_mod(modulation, M), sim);
            py::dict d;
            py::list cov;
            for (const auto& c : est.coverage) cov.append(result_dict(c));
            d["coverage"] = cov;
            d["rate"] = result_dict(est.rate);
            d["bep"] = result_dict(est.bep);
            return d;
        },
        py::arg("link"), py::arg("thresholds"), py::arg("modulation") = "qpsk",
        py::arg("M") = 0, py::arg("snapshots") = 100000, py::arg("seed") = 1,
        "Monte Carlo estimates of coverage, rate, and BEP in one snapshot pass");

    m.def(
        "validate_matrix",
        [](std::int64_t snapshots, std::uint64_t seed) {
            py::list rows;
            for (const auto& r : validation::run_matrix(snapshots, seed)) {
                py::dict d;
                d["config"] = r.config;
                d["metric"] = r.metric;
                d["analytic"] = r.analytic;
                d["mc"] = r.mc;
                d["se"] = r.se;
                d["pass"] = r.pass;
                rows.append(d);
            }
            return rows;
        },
        py::arg("snapshots") = 20000, py::arg("seed") = 1,
        "Analytic-vs-Monte-Carlo cross-validation matrix");

    m.def(
        "modulation_constants",
        [](const std::string& name, int M) {
            auto mod = make_mod(name, M);
            py::dict d;
            d["name"] = mod.name;
            d["beta"] = mod.beta;
            d["tau"] = mod.tau;
            d["a"] = mod.a;
            return d;
        },
        py::arg("name"), py::arg("M") = 0);
}

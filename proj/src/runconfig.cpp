#include "fadenet/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fadenet::cli {

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) bad_key(key, "trailing characters in number '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        bad_key(key, "not a number: '" + v + "'");
    } catch (const std::out_of_range&) {
        bad_key(key, "number out of range: '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    if (d != std::floor(d)) bad_key(key, "integer required, got '" + v + "'");
    return (long long)d;
}

bool set_fading_key(FadingSpec& f, const std::string& field, const std::string& key,
                    const std::string& value) {
    if (field == "model") {
        const char* names[] = {"shadowed_kappa_mu", "kappa_mu", "eta_mu",
                               "nakagami",          "rayleigh", "rice"};
        for (const char* n : names)
            if (value == n) {
                f.model = value;
                return true;
            }
        bad_key(key, "unknown fading model '" + value + "'");
    }
    if (field == "omega") f.omega = to_double(key, value);
    else if (field == "kappa") f.kappa = to_double(key, value);
    else if (field == "mu") f.mu = to_double(key, value);
    else if (field == "m") f.m = to_double(key, value);
    else if (field == "eta") f.eta = to_double(key, value);
    else if (field == "K") f.k_factor = to_double(key, value);
    else return false;
    return true;
}

}  // namespace

fading::FadingModel FadingSpec::build() const {
    if (model == "shadowed_kappa_mu") return fading::shadowed_kappa_mu(omega, kappa, mu, m);
    if (model == "kappa_mu") return fading::kappa_mu(omega, kappa, mu);
    if (model == "eta_mu") return fading::eta_mu(omega, eta, mu);
    if (model == "nakagami") return fading::nakagami(m, omega);
    if (model == "rayleigh") return fading::rayleigh(omega);
    if (model == "rice") return fading::rice(k_factor, omega);
    throw std::invalid_argument("unknown fading model '" + model + "'");
}

sinrmgf::LinkSpec RunConfig::link() const {
    return {desired.build(), interferer.build(), network};
}

metrics::ModulationScheme RunConfig::modulation() const {
    return metrics::modulation_constants(modulation_name, modulation_M);
}

void apply_key(RunConfig& cfg, const std::string& key_in, const std::string& value) {
    std::string key = key_in;
    std::string val = value;
    if (key.size() > 3 && key.compare(key.size() - 3, 3, "_dB") == 0) {
        key = key.substr(0, key.size() - 3);
        std::ostringstream os;
        os.precision(17);
        os << std::pow(10.0, to_double(key_in, value) / 10.0);
        val = os.str();
    }
    auto dot = key.find('.');
    std::string section = (dot == std::string::npos) ? "" : key.substr(0, dot);
    std::string field = (dot == std::string::npos) ? key : key.substr(dot + 1);

    if (section == "network" || (section.empty() && (field == "lambda" || field == "alpha" ||
                                                     field == "noise" || field == "power"))) {
        if (field == "lambda") cfg.network.lambda_bs = to_double(key_in, val);
        else if (field == "alpha") cfg.network.alpha = to_double(key_in, val);
        else if (field == "power") cfg.network.power = to_double(key_in, val);
        else if (field == "noise") cfg.network.noise = to_double(key_in, val);
        else bad_key(key_in, "unknown network field");
        return;
    }
    if (section == "desired") {
        if (!set_fading_key(cfg.desired, field, key_in, val)) bad_key(key_in, "unknown fading field");
        return;
    }
    if (section == "interferer") {
        if (!set_fading_key(cfg.interferer, field, key_in, val)) bad_key(key_in, "unknown fading field");
        return;
    }
    if (section.empty() && (field == "omega" || field == "kappa" || field == "mu" ||
                            field == "m" || field == "eta" || field == "K")) {
        set_fading_key(cfg.desired, field, key_in, val);
        set_fading_key(cfg.interferer, field, key_in, val);
        return;
    }
    if (section == "modulation") {
        if (field == "name") cfg.modulation_name = val;
        else if (field == "M") cfg.modulation_M = (int)to_int(key_in, val);
        else bad_key(key_in, "unknown modulation field");
        return;
    }
    if (section == "aw") {
        if (field == "A") cfg.aw.A = to_double(key_in, val);
        else if (field == "m") cfg.aw.m = (int)to_int(key_in, val);
        else if (field == "n") cfg.aw.n = (int)to_int(key_in, val);
        else if (field == "b") cfg.aw.b = to_double(key_in, val);
        else bad_key(key_in, "unknown aw field");
        return;
    }
    if (section == "sim") {
        if (field == "snapshots") cfg.sim.snapshots = to_int(key_in, val);
        else if (field == "seed") cfg.sim.seed = (std::uint64_t)to_int(key_in, val);
        else if (field == "window_radius") cfg.sim.window_radius = to_double(key_in, val);
        else if (field == "tail_epsilon") cfg.sim.tail_epsilon = to_double(key_in, val);
        else bad_key(key_in, "unknown sim field");
        return;
    }
    if (section == "coverage" || (section.empty() && field == "T")) {
        if (field == "T") cfg.coverage_T = to_double(key_in, val);
        else bad_key(key_in, "unknown coverage field");
        return;
    }
    if (section == "mgf") {
        if (field == "s") cfg.mgf_s = to_double(key_in, val);
        else bad_key(key_in, "unknown mgf field");
        return;
    }
    if (section.empty() && field == "sir") {
        cfg.sir = to_double(key_in, val);
        return;
    }
    bad_key(key_in, "unknown key");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        apply_key(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string serialize(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "network.lambda = " << cfg.network.lambda_bs << "\n"
       << "network.alpha = " << cfg.network.alpha << "\n"
       << "network.power = " << cfg.network.power << "\n"
       << "network.noise = " << cfg.network.noise << "\n";
    auto dump = [&](const char* side, const FadingSpec& f) {
        os << side << ".model = " << f.model << "\n"
           << side << ".omega = " << f.omega << "\n"
           << side << ".kappa = " << f.kappa << "\n"
           << side << ".mu = " << f.mu << "\n"
           << side << ".m = " << f.m << "\n"
           << side << ".eta = " << f.eta << "\n"
           << side << ".K = " << f.k_factor << "\n";
    };
    dump("desired", cfg.desired);
    dump("interferer", cfg.interferer);
    os << "modulation.name = " << cfg.modulation_name << "\n";
    if (cfg.modulation_M > 0) os << "modulation.M = " << cfg.modulation_M << "\n";
    os << "aw.A = " << cfg.aw.A << "\naw.m = " << cfg.aw.m << "\naw.n = " << cfg.aw.n
       << "\naw.b = " << cfg.aw.b << "\n"
       << "sim.snapshots = " << cfg.sim.snapshots << "\nsim.seed = " << cfg.sim.seed
       << "\nsim.window_radius = " << cfg.sim.window_radius
       << "\nsim.tail_epsilon = " << cfg.sim.tail_epsilon << "\n"
       << "coverage.T = " << cfg.coverage_T << "\nmgf.s = " << cfg.mgf_s
       << "\nsir = " << cfg.sir << "\n";
    return os.str();
}

SweepSpec parse_sweep(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep: expected key=values, got '" + text + "'");
    SweepSpec sw;
    sw.key = text.substr(0, eq);
    std::string spec = text.substr(eq + 1);
    bool logscale = false;
    auto paren = spec.find("(log)");
    if (paren != std::string::npos && paren + 5 == spec.size()) {
        logscale = true;
        spec = spec.substr(0, paren);
    }
    if (spec.find(',') != std::string::npos || spec.find(':') == std::string::npos) {
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ','))
            sw.values.push_back(to_double(sw.key, tok));
    } else {
        std::istringstream ss(spec);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
            throw std::invalid_argument("sweep: expected start:stop:count in '" + text + "'");
        double start = to_double(sw.key, a), stop = to_double(sw.key, b);
        long long count = to_int(sw.key, c);
        if (count < 1) throw std::invalid_argument("sweep: count >= 1 required");
        if (logscale && (start <= 0.0 || stop <= 0.0))
            throw std::invalid_argument("sweep: log scale requires positive endpoints");
        for (long long i = 0; i < count; ++i) {
            double f = (count == 1) ? 0.0 : (double)i / (double)(count - 1);
            sw.values.push_back(logscale
                                    ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                    : start + f * (stop - start));
        }
    }
    if (sw.values.empty()) throw std::invalid_argument("sweep: no values in '" + text + "'");
    return sw;
}

}  // namespace fadenet::cli

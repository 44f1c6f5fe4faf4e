#include <cmath>
#include <fstream>
#include <set>

#include "ugap/cli.hpp"
#include "ugap/errors.hpp"

namespace ugap::cli {

void SweepConfig::validate() const {
    if (eta_min < 1 || eta_max < eta_min || eta_max > 60) throw ValidationError("eta range must satisfy 1 <= eta_min <= eta_max <= 60");
    if (samples_per_interval < 1) throw ValidationError("samples_per_interval must be positive");
    if (s_max < 2) throw ValidationError("s_max must be at least 2");
    params.validate();
}

SweepConfig sweep_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    static const std::set<std::string> known{"schema", "eta_min", "eta_max", "samples_per_interval", "include_outside",
                                             "s_max", "balance", "out", "format"};
    if (!j.is_object()) throw ValidationError("sweep config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ValidationError("unknown sweep config field '" + key + "'");
    if (j.value("schema", std::string{}) != "ugap.sweep/1") throw ValidationError("sweep config needs schema \"ugap.sweep/1\"");
    SweepConfig c;
    try {
        c.eta_min = j.value("eta_min", c.eta_min);
        c.eta_max = j.value("eta_max", c.eta_max);
        c.samples_per_interval = j.value("samples_per_interval", c.samples_per_interval);
        c.include_outside = j.value("include_outside", c.include_outside);
        c.s_max = j.value("s_max", c.s_max);
        if (j.contains("balance")) {
            const auto& b = j.at("balance");
            if (b.is_string()) {
                auto path = base_dir / b.get<std::string>();
                std::ifstream is(path);
                if (!is) throw ValidationError("cannot read balance parameters from '" + path.string() + "'");
                c.params = balance::params_from_json(nlohmann::json::parse(is));
            } else {
                c.params = balance::params_from_json(b);
            }
        }
        if (j.contains("out")) c.out = base_dir / j.at("out").get<std::string>();
        if (j.contains("format")) c.format = io::parse_format(j.at("format").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed sweep config: ") + e.what());
    }
    c.validate();
    return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read config '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return sweep_config_from_json(j, path.parent_path());
}

io::Table phase_diagram(const SweepConfig& cfg) {
    cfg.validate();
    io::Table t({"phi_prime", "eta", "interval_lo", "interval_hi", "certified", "verdict", "witness_w", "edge_log2",
                 "pen_log2"});
    auto row = [&](double phi) {
        auto v = balance::classify_phase(phi, cfg.params, cfg.s_max);
        bool certified = v.classification != balance::Phase::OutsideCertifiedInterval;
        t.add_row({phi, static_cast<std::int64_t>(v.eta), v.interval_lo, v.interval_hi, certified,
                   balance::to_string(v.classification), v.witness_w ? *v.witness_w : std::int64_t{0}, v.edge_log2,
                   v.pen_log2});
    };
    for (int eta = cfg.eta_min; eta <= cfg.eta_max; ++eta) {
        const double lo = std::ldexp(1.0, -eta);
        const double width = std::ldexp(1.0, -eta - static_cast<int>(balance::certified_ell(eta, cfg.params)));
        for (int i = 0; i < cfg.samples_per_interval; ++i) row(lo + width * i / cfg.samples_per_interval);
        // Midpoint of the uncertified remainder of [2^-eta, 2^(1-eta)).
        if (cfg.include_outside) row(0.5 * (lo + width + 2 * lo));
    }
    return t;
}

}  // namespace ugap::cli

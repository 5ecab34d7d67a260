#include "psh/config.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "psh/errors.hpp"

namespace psh {

namespace {

using Field = std::pair<const char*, double SchemeConfig::*>;

constexpr Field kFields[] = {
    {"min_head_m", &SchemeConfig::min_head_m},
    {"max_separation_m", &SchemeConfig::max_separation_m},
    {"search_radius_m", &SchemeConfig::search_radius_m},
    {"min_area_m2", &SchemeConfig::min_area_m2},
    {"usable_depth_m", &SchemeConfig::usable_depth_m},
    {"slope_threshold_pct", &SchemeConfig::slope_threshold_pct},
    {"elevation_cap_m", &SchemeConfig::elevation_cap_m},
    {"max_l_over_h", &SchemeConfig::max_l_over_h},
    {"eta_theoretical", &SchemeConfig::eta_theoretical},
    {"eta_technical", &SchemeConfig::eta_technical},
    {"energy_threshold_gwh", &SchemeConfig::energy_threshold_gwh},
    {"river_interval_m", &SchemeConfig::river_interval_m},
    {"infra_buffer_m", &SchemeConfig::infra_buffer_m},
    {"water_density", &SchemeConfig::water_density},
    {"gravity", &SchemeConfig::gravity},
};

}  // namespace

std::vector<std::string> SchemeConfig::overrides() const {
    const SchemeConfig defaults;
    std::vector<std::string> names;
    for (const auto& [name, member] : kFields)
        if (this->*member != defaults.*member) names.emplace_back(name);
    return names;
}

void validate(const SchemeConfig& cfg) {
    for (const auto& [name, member] : kFields) {
        double v = cfg.*member;
        if (!std::isfinite(v) || v <= 0.0) throw ConfigError(std::string("config field ") + name + " must be positive");
    }
    if (cfg.eta_theoretical > 1.0) throw ConfigError("config field eta_theoretical must lie in (0, 1]");
    if (cfg.eta_technical > 1.0) throw ConfigError("config field eta_technical must lie in (0, 1]");
}

SchemeConfig scheme_config_from_json(const nlohmann::json& doc, const std::vector<std::string>& extra_keys) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    SchemeConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (std::find(extra_keys.begin(), extra_keys.end(), key) != extra_keys.end()) continue;
        auto it = std::find_if(std::begin(kFields), std::end(kFields),
                               [&](const Field& f) { return key == f.first; });
        if (it == std::end(kFields)) throw ConfigError("unknown config key '" + key + "'");
        if (!value.is_number()) throw ConfigError("config field " + key + " must be a number");
        cfg.*(it->second) = value.get<double>();
    }
    validate(cfg);
    return cfg;
}

nlohmann::json to_json(const SchemeConfig& cfg) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, member] : kFields) out[name] = cfg.*member;
    out["overrides"] = cfg.overrides();
    return out;
}

}  // namespace psh

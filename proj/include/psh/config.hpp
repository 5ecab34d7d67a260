#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace psh {

/// Screening and pairing constants. Defaults are the published values; every
/// field can be overridden from the run configuration.
struct SchemeConfig {
    double min_head_m = 50.0;
    double max_separation_m = 5000.0;
    double search_radius_m = 10000.0;
    double min_area_m2 = 50000.0;
    double usable_depth_m = 2.0;
    double slope_threshold_pct = 5.0;
    double elevation_cap_m = 5000.0;
    double max_l_over_h = 10.0;
    double eta_theoretical = 1.0;
    double eta_technical = 0.8;
    double energy_threshold_gwh = 0.01;
    double river_interval_m = 1000.0;
    double infra_buffer_m = 20000.0;
    double water_density = 1000.0;
    double gravity = 9.8;

    /// Names of fields that differ from the defaults, in declaration order.
    std::vector<std::string> overrides() const;

    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Throws ConfigError when a distance, area, depth or density is not strictly
/// positive or an efficiency lies outside (0, 1].
void validate(const SchemeConfig& cfg);

/// Reads SchemeConfig fields from the top level of `doc`. Keys listed in
/// `extra_keys` are skipped; any other unknown key is a ConfigError.
SchemeConfig scheme_config_from_json(const nlohmann::json& doc, const std::vector<std::string>& extra_keys = {});

nlohmann::json to_json(const SchemeConfig& cfg);

}  // namespace psh

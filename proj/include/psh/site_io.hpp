#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psh/hydroclimate.hpp"
#include "psh/siting.hpp"

namespace psh {

/// Column order of sites.csv.
inline constexpr const char* kSiteCsvHeader =
    "site_id,scheme,tier,upper_id,lower_id,head_m,separation_m,l_over_h,volume_m3,energy_theoretical_gwh,"
    "energy_technical_gwh,band,precip_mm,temp_c,q10,q50,q90,qavg";

/// Site inventory as CSV, rows ascending by site_id, reals at six significant
/// digits. `profiles` is either empty or aligned with `sites`; missing values
/// are written as empty fields.
std::string write_sites_csv(const std::vector<PshSite>& sites,
                            const std::vector<std::optional<HydroclimateProfile>>& profiles);

/// FeatureCollection with one Point feature per site at its reference point.
nlohmann::json write_sites_geojson(const std::vector<PshSite>& sites,
                                   const std::vector<std::optional<HydroclimateProfile>>& profiles);

}  // namespace psh

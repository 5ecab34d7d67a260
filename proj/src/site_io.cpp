#include "psh/site_io.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "psh/geodata.hpp"

namespace psh {

namespace {

std::vector<std::size_t> order_by_id(const std::vector<PshSite>& sites) {
    std::vector<std::size_t> idx(sites.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sites[a].site_id < sites[b].site_id; });
    return idx;
}

const HydroclimateProfile* profile_at(const std::vector<std::optional<HydroclimateProfile>>& profiles, std::size_t i) {
    if (i >= profiles.size() || !profiles[i]) return nullptr;
    return &*profiles[i];
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

nlohmann::json pair_json(const Pairing& p) {
    return {{"upper_id", p.upper_id},
            {"lower_id", p.lower_id},
            {"second_id", p.second_id},
            {"head_m", p.head_m},
            {"separation_m", p.separation_m},
            {"l_over_h", p.l_over_h},
            {"volume_m3", p.usable_volume_m3},
            {"upper_xy", {p.upper_centroid.x(), p.upper_centroid.y()}},
            {"lower_xy", {p.lower_centroid.x(), p.lower_centroid.y()}}};
}

}  // namespace

std::string write_sites_csv(const std::vector<PshSite>& sites,
                            const std::vector<std::optional<HydroclimateProfile>>& profiles) {
    std::ostringstream out;
    out << kSiteCsvHeader << '\n';
    for (std::size_t i : order_by_id(sites)) {
        const auto& s = sites[i];
        const auto* pr = profile_at(profiles, i);
        out << s.site_id << ',' << to_string(s.scheme) << ',' << to_string(s.tier) << ',' << s.pair.upper_id << ','
            << s.pair.lower_id << ',' << format_number(s.pair.head_m) << ',' << format_number(s.pair.separation_m) << ','
            << format_number(s.pair.l_over_h) << ',' << format_number(s.pair.usable_volume_m3) << ','
            << format_number(s.energy_theoretical_gwh) << ',' << opt(s.energy_technical_gwh) << ',';
        if (pr) {
            out << to_string(pr->band) << ',' << opt(pr->mean_annual_precip_mm) << ',' << opt(pr->mean_annual_temp_c);
            if (pr->flow)
                out << ',' << format_number(pr->flow->q10) << ',' << format_number(pr->flow->q50) << ','
                    << format_number(pr->flow->q90) << ',' << format_number(pr->flow->qavg);
            else
                out << ",,,,";
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json write_sites_geojson(const std::vector<PshSite>& sites,
                                   const std::vector<std::optional<HydroclimateProfile>>& profiles) {
    nlohmann::json features = nlohmann::json::array();
    for (std::size_t i : order_by_id(sites)) {
        const auto& s = sites[i];
        const Point ref = s.reference_point();
        nlohmann::json props = {{"id", s.site_id},
                                {"scheme", to_string(s.scheme)},
                                {"tier", to_string(s.tier)},
                                {"prospective_id", s.prospective_id()},
                                {"theoretical", pair_json(s.pair)},
                                {"energy_theoretical_gwh", s.energy_theoretical_gwh}};
        if (s.technical_pair) {
            props["technical"] = pair_json(*s.technical_pair);
            props["energy_technical_gwh"] = *s.energy_technical_gwh;
        }
        if (const auto* pr = profile_at(profiles, i)) {
            props["band"] = to_string(pr->band);
            if (pr->mean_annual_precip_mm) props["precip_mm"] = *pr->mean_annual_precip_mm;
            if (pr->mean_annual_temp_c) props["temp_c"] = *pr->mean_annual_temp_c;
            if (pr->flow)
                props["flow"] = {{"q10", pr->flow->q10}, {"q50", pr->flow->q50}, {"q90", pr->flow->q90}, {"qavg", pr->flow->qavg}};
        }
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "Point"}, {"coordinates", {ref.x(), ref.y()}}}},
                            {"properties", std::move(props)}});
    }
    return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace psh

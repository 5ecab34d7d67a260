#include "psh/hydroclimate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

#include "psh/geodata.hpp"

namespace psh {

std::string_view to_string(Band band) {
    switch (band) {
        case Band::EB1: return "EB1";
        case Band::EB2: return "EB2";
        case Band::EB3: return "EB3";
        case Band::EB4: return "EB4";
        case Band::EB5: return "EB5";
    }
    return "?";
}

Band elevation_band(double elevation_m) {
    if (!(elevation_m >= 0.0 && elevation_m <= 5000.0))
        throw DomainError("elevation " + format_number(elevation_m) + " m outside band range [0, 5000]");
    if (elevation_m < 500.0) return Band::EB1;
    if (elevation_m < 1000.0) return Band::EB2;
    if (elevation_m < 2000.0) return Band::EB3;
    if (elevation_m < 3000.0) return Band::EB4;
    return Band::EB5;
}

double interpolated_percentile(std::span<const double> sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

FlowStatistics flow_statistics(std::span<const double> series) {
    if (series.empty()) throw DomainError("empty streamflow series");
    std::vector<double> sorted(series.begin(), series.end());
    for (double v : sorted)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("streamflow values must be finite and non-negative");
    std::sort(sorted.begin(), sorted.end());
    FlowStatistics s;
    s.q10 = interpolated_percentile(sorted, 0.10);
    s.q50 = interpolated_percentile(sorted, 0.50);
    s.q90 = interpolated_percentile(sorted, 0.90);
    s.qavg = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    return s;
}

ClimateStack ClimateStack::load(const std::filesystem::path& dir, const std::string& var) {
    if (!std::filesystem::is_directory(dir)) throw LayerError("climate directory " + dir.string() + " not found");
    const std::regex pattern(var + R"(_(\d{4})_(\d{2})\.asc)");
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), pattern))
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());

    ClimateStack stack;
    std::map<int, int> per_year;
    for (const auto& path : paths) {
        std::smatch m;
        const std::string name = path.filename().string();
        std::regex_match(name, m, pattern);
        const int year = std::stoi(m[1]);
        const int month = std::stoi(m[2]);
        if (month < 1 || month > 12) throw LayerError(path.string() + ": month out of range");
        stack.months.emplace(std::pair{year, month}, read_ascii_grid(path));
        stack.files.push_back(path);
        ++per_year[year];
    }
    if (stack.months.empty()) throw LayerError("no " + var + "_YYYY_MM.asc grids in " + dir.string());
    for (const auto& [year, count] : per_year)
        if (count != 12) throw LayerError(var + " year " + std::to_string(year) + " has " + std::to_string(count) + " of 12 months");
    return stack;
}

namespace {

double value_at(const RasterGrid& grid, const Point& p, int year, int month) {
    auto cell = grid.locate(p);
    if (!cell || grid.is_nodata(cell->row, cell->col))
        throw DomainError("climate grid " + std::to_string(year) + "-" + std::to_string(month) + " has no value at site");
    return grid(cell->row, cell->col);
}

}  // namespace

double mean_annual_total(const ClimateStack& stack, const Point& p) {
    std::map<int, double> totals;
    for (const auto& [key, grid] : stack.months) totals[key.first] += value_at(grid, p, key.first, key.second);
    double sum = 0.0;
    for (const auto& [year, total] : totals) sum += total;
    return sum / static_cast<double>(totals.size());
}

double mean_monthly_value(const ClimateStack& stack, const Point& p) {
    double sum = 0.0;
    for (const auto& [key, grid] : stack.months) sum += value_at(grid, p, key.first, key.second);
    return sum / static_cast<double>(stack.months.size());
}

FlowSeries parse_flow_series(std::istream& in) {
    FlowSeries out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("expected point_id,value", line_no);
        const std::string id_text = line.substr(0, comma);
        const std::string value_text = line.substr(comma + 1);
        if (line_no == 1 && id_text == "point_id") continue;
        try {
            std::size_t used = 0;
            const long id = std::stol(id_text, &used);
            if (used != id_text.size()) throw std::invalid_argument(id_text);
            const double value = std::stod(value_text, &used);
            if (value_text.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(value_text);
            out[id].push_back(value);
        } catch (const std::logic_error&) {
            throw ParseError("non-numeric token in '" + line + "'", line_no);
        }
    }
    return out;
}

FlowSeries read_flow_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LayerError("cannot open flow series " + path.string());
    try {
        return parse_flow_series(in);
    } catch (const ParseError& e) {
        throw LayerError(path.string() + ": " + e.what());
    }
}

HydroclimateProfile attach_profile(const PshSite& site, const ClimateStack* precip, const ClimateStack* temp,
                                   const FlowSeries* flows) {
    HydroclimateProfile profile;
    const Pairing& ref = site.reference_pair();
    profile.band = elevation_band(ref.prospective_elevation_m);
    const Point p = site.reference_point();
    if (precip && !precip->empty()) profile.mean_annual_precip_mm = mean_annual_total(*precip, p);
    if (temp && !temp->empty()) profile.mean_annual_temp_c = mean_monthly_value(*temp, p);
    if (flows && involves_river(site.scheme)) {
        auto it = flows->find(ref.second_id);
        if (it == flows->end() || it->second.empty())
            throw DomainError("no streamflow series for river point " + std::to_string(ref.second_id));
        profile.flow = flow_statistics(it->second);
    }
    return profile;
}

namespace {

VariableSummary summarize(const std::vector<double>& xs) {
    VariableSummary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size()));
    return s;
}

}  // namespace

std::vector<BandSummary> band_summaries(const std::vector<PshSite>& sites,
                                        const std::vector<std::optional<HydroclimateProfile>>& profiles) {
    struct Group {
        std::size_t count = 0;
        std::map<std::string, std::vector<double>> values;
    };
    std::map<std::pair<Scheme, Band>, Group> groups;
    for (std::size_t i = 0; i < sites.size() && i < profiles.size(); ++i) {
        if (!profiles[i]) continue;
        const auto& pr = *profiles[i];
        auto& g = groups[{sites[i].scheme, pr.band}];
        ++g.count;
        if (pr.mean_annual_precip_mm) g.values["precip_mm"].push_back(*pr.mean_annual_precip_mm);
        if (pr.mean_annual_temp_c) g.values["temp_c"].push_back(*pr.mean_annual_temp_c);
        if (pr.flow) {
            g.values["q10"].push_back(pr.flow->q10);
            g.values["q50"].push_back(pr.flow->q50);
            g.values["q90"].push_back(pr.flow->q90);
            g.values["qavg"].push_back(pr.flow->qavg);
        }
    }
    std::vector<BandSummary> out;
    for (const auto& [key, g] : groups) {
        BandSummary s;
        s.scheme = key.first;
        s.band = key.second;
        s.count = g.count;
        for (const auto& [name, xs] : g.values) s.variables[name] = summarize(xs);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace psh

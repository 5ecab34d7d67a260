#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psh/raster.hpp"
#include "psh/siting.hpp"

namespace psh {

enum class Band { EB1 = 1, EB2, EB3, EB4, EB5 };

std::string_view to_string(Band band);

/// Elevation band, lower bound inclusive; EB5 is closed at 5000 m.
/// Throws DomainError outside [0, 5000].
Band elevation_band(double elevation_m);

struct FlowStatistics {
    double q10 = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    double qavg = 0.0;
};

/// Percentile p of an ascending series by linear interpolation between the
/// closest ranks (rank p(n-1)+1).
double interpolated_percentile(std::span<const double> sorted, double p);

/// Q10/Q50/Q90 and mean of a non-empty, non-negative streamflow series.
FlowStatistics flow_statistics(std::span<const double> series);

/// Monthly grids of one climate variable, keyed by (year, month).
struct ClimateStack {
    std::map<std::pair<int, int>, RasterGrid> months;
    std::vector<std::filesystem::path> files;

    /// Loads `<var>_<YYYY>_<MM>.asc` files from `dir`. Every year present must
    /// have all twelve months; throws LayerError otherwise.
    static ClimateStack load(const std::filesystem::path& dir, const std::string& var);

    bool empty() const { return months.empty(); }
};

/// Mean over years of the twelve-month total at the cell containing p.
double mean_annual_total(const ClimateStack& stack, const Point& p);

/// Mean over every monthly value at the cell containing p.
double mean_monthly_value(const ClimateStack& stack, const Point& p);

/// Streamflow samples per river-point id.
using FlowSeries = std::map<long, std::vector<double>>;

/// Reads `point_id,value` rows (optional header line). Throws LayerError.
FlowSeries read_flow_series(const std::filesystem::path& path);
FlowSeries parse_flow_series(std::istream& in);

struct HydroclimateProfile {
    Band band = Band::EB1;
    std::optional<double> mean_annual_precip_mm;
    std::optional<double> mean_annual_temp_c;
    std::optional<FlowStatistics> flow;
};

/// Climate at the site's reference point, flow at its river point (river
/// schemes only) and band from the prospective reservoir's elevation. Null
/// inputs leave the corresponding fields empty. Throws DomainError when a
/// supplied input does not cover the site.
HydroclimateProfile attach_profile(const PshSite& site, const ClimateStack* precip, const ClimateStack* temp,
                                   const FlowSeries* flows);

struct VariableSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // population
};

struct BandSummary {
    Scheme scheme = Scheme::L2L;
    Band band = Band::EB1;
    std::size_t count = 0;
    std::map<std::string, VariableSummary> variables;
};

/// Mean and population standard deviation per (scheme, band) group, ordered
/// by scheme then band; empty groups are omitted. `profiles` is aligned with
/// `sites`; sites without a profile are skipped.
std::vector<BandSummary> band_summaries(const std::vector<PshSite>& sites,
                                        const std::vector<std::optional<HydroclimateProfile>>& profiles);

}  // namespace psh

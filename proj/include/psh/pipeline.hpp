#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psh/config.hpp"
#include "psh/geodata.hpp"
#include "psh/hydroclimate.hpp"
#include "psh/screening.hpp"
#include "psh/siting.hpp"

namespace psh {

/// Input file locations, resolved against the config file's directory.
struct LayerPaths {
    std::filesystem::path dem;
    std::optional<std::filesystem::path> lakes;
    std::optional<std::filesystem::path> rivers;
    std::optional<std::filesystem::path> roads;
    std::optional<std::filesystem::path> planned_substations;
    std::optional<std::filesystem::path> operational_substations;
    std::optional<std::filesystem::path> protected_areas;
    std::optional<std::filesystem::path> precip_dir;
    std::optional<std::filesystem::path> temp_dir;
    std::optional<std::filesystem::path> flow;
};

struct PipelineConfig {
    SchemeConfig scheme;
    LayerPaths layers;
};

/// Reads the run configuration: SchemeConfig fields at top level plus a
/// `layers` object of paths. Throws ConfigError.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
PipelineConfig parse_pipeline_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Parsed layers. Optional layers that were not configured stay empty.
struct PipelineInputs {
    RasterGrid dem;
    std::optional<VectorLayer> lakes;
    std::optional<VectorLayer> rivers;
    std::optional<VectorLayer> roads;
    std::optional<VectorLayer> planned_substations;
    std::optional<VectorLayer> operational_substations;
    std::optional<VectorLayer> protected_areas;
    std::optional<ClimateStack> precip;
    std::optional<ClimateStack> temp;
    std::optional<FlowSeries> flow;
    /// Input file name -> SHA-256 hex digest.
    std::map<std::string, std::string> checksums;
};

/// Loads every configured layer. Throws LayerError naming the failing layer.
PipelineInputs ingest(const PipelineConfig& cfg);

std::string sha256_hex(const std::filesystem::path& path);

struct TierTotals {
    std::size_t count = 0;
    double total_gwh = 0.0;
};

/// Capacity classes on technical energy: [0, 0.1), [0.1, 1.0), [1.0, inf).
using CapacityHistogram = std::array<std::size_t, 3>;

std::size_t capacity_class(double energy_gwh);

struct SchemeSummary {
    std::array<TierTotals, 3> tiers{};  // indexed by Tier, cumulative
    CapacityHistogram histogram{};
    std::optional<double> technical_pct_of_theoretical;
};

struct SummaryReport {
    std::map<Scheme, SchemeSummary> schemes;
    std::array<TierTotals, 3> totals{};
    std::optional<double> technical_pct_of_theoretical;
    double annual_exploitable_gwh = 0.0;
    nlohmann::json config;
    std::map<std::string, std::string> inputs;
    std::vector<BandSummary> band_summaries;
};

/// Per scheme and tier: counts and energy, cumulative over tiers (a Technical
/// site also counts as Theoretical). Theoretical energy sums
/// energy_theoretical_gwh; Technical and Exploitable sum energy_technical_gwh.
SummaryReport summarize(const std::vector<PshSite>& sites, const SchemeConfig& cfg);

nlohmann::json to_json(const SummaryReport& report);

struct PipelineResult {
    std::vector<PshSite> sites;
    std::vector<std::optional<HydroclimateProfile>> profiles;
    SummaryReport report;
    std::vector<std::string> log;
};

/// ingest -> slope/flat lands -> lake and river candidates -> per-scheme
/// pairing -> tiers -> hydroclimate -> report. Output does not depend on
/// `workers`. Throws InvariantError if an emitted site breaks a contract.
PipelineResult run_pipeline(const PipelineInputs& inputs, const SchemeConfig& cfg, unsigned workers = 1);

/// Checks the per-site and tier-nesting contracts; throws InvariantError.
void check_invariants(const std::vector<PshSite>& sites, const SchemeConfig& cfg);

/// Writes sites.csv, sites.geojson, summary.json and run.log into `dir`.
void write_outputs(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace psh

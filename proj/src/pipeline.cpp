#include "psh/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "psh/hydrography.hpp"
#include "psh/site_io.hpp"
#include "psh/terrain.hpp"

namespace psh {

namespace {

constexpr const char* kLayerKeys[] = {"dem",           "lakes",           "rivers",   "roads",
                                      "planned_substations", "operational_substations", "protected_areas",
                                      "precip_dir",    "temp_dir",        "flow"};

std::optional<std::filesystem::path> optional_path(const nlohmann::json& layers, const char* key,
                                                   const std::filesystem::path& base) {
    if (!layers.contains(key) || layers.at(key).is_null()) return std::nullopt;
    if (!layers.at(key).is_string()) throw ConfigError(std::string("layers.") + key + " must be a path string");
    std::filesystem::path p = layers.at(key).get<std::string>();
    return p.is_absolute() ? p : base / p;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

}  // namespace

PipelineConfig parse_pipeline_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    cfg.scheme = scheme_config_from_json(doc, {"layers"});
    if (!doc.contains("layers") || !doc.at("layers").is_object()) throw ConfigError("config needs a \"layers\" object");
    const auto& layers = doc.at("layers");
    for (const auto& [key, value] : layers.items()) {
        if (std::find(std::begin(kLayerKeys), std::end(kLayerKeys), key) == std::end(kLayerKeys))
            throw ConfigError("unknown layer key '" + key + "'");
    }
    auto dem = optional_path(layers, "dem", base_dir);
    if (!dem) throw ConfigError("layers.dem is required");
    cfg.layers.dem = *dem;
    cfg.layers.lakes = optional_path(layers, "lakes", base_dir);
    cfg.layers.rivers = optional_path(layers, "rivers", base_dir);
    cfg.layers.roads = optional_path(layers, "roads", base_dir);
    cfg.layers.planned_substations = optional_path(layers, "planned_substations", base_dir);
    cfg.layers.operational_substations = optional_path(layers, "operational_substations", base_dir);
    cfg.layers.protected_areas = optional_path(layers, "protected_areas", base_dir);
    cfg.layers.precip_dir = optional_path(layers, "precip_dir", base_dir);
    cfg.layers.temp_dir = optional_path(layers, "temp_dir", base_dir);
    cfg.layers.flow = optional_path(layers, "flow", base_dir);
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return parse_pipeline_config(doc, path.parent_path());
}

std::string sha256_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LayerError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
        throw LayerError("sha256 failed for " + path.string());
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

PipelineInputs ingest(const PipelineConfig& cfg) {
    PipelineInputs in;
    auto guarded = [](const char* layer, auto&& load) {
        try {
            return load();
        } catch (const LayerError& e) {
            throw LayerError(std::string("layer ") + layer + ": " + e.what());
        } catch (const DomainError& e) {
            throw LayerError(std::string("layer ") + layer + ": " + e.what());
        }
    };
    const auto& L = cfg.layers;
    in.dem = guarded("dem", [&] {
        auto g = read_ascii_grid(L.dem);
        validate(g, "dem");
        return g;
    });
    in.checksums["dem"] = sha256_hex(L.dem);

    auto vector_layer = [&](const char* name, const std::optional<std::filesystem::path>& path, GeometryKind kind,
                            std::optional<VectorLayer>& slot) {
        if (!path) return;
        slot = guarded(name, [&] { return read_vector_layer(*path, kind); });
        in.checksums[name] = sha256_hex(*path);
    };
    vector_layer("lakes", L.lakes, GeometryKind::Polygon, in.lakes);
    vector_layer("rivers", L.rivers, GeometryKind::Polyline, in.rivers);
    vector_layer("roads", L.roads, GeometryKind::Polyline, in.roads);
    vector_layer("planned_substations", L.planned_substations, GeometryKind::Point, in.planned_substations);
    vector_layer("operational_substations", L.operational_substations, GeometryKind::Point, in.operational_substations);
    vector_layer("protected_areas", L.protected_areas, GeometryKind::Polygon, in.protected_areas);

    auto stack = [&](const char* name, const char* var, const std::optional<std::filesystem::path>& dir,
                     std::optional<ClimateStack>& slot) {
        if (!dir) return;
        slot = guarded(name, [&] { return ClimateStack::load(*dir, var); });
        for (const auto& f : slot->files) in.checksums[std::string(var) + "/" + f.filename().string()] = sha256_hex(f);
    };
    stack("precip_dir", "precip", L.precip_dir, in.precip);
    stack("temp_dir", "temp", L.temp_dir, in.temp);

    if (L.flow) {
        in.flow = guarded("flow", [&] { return read_flow_series(*L.flow); });
        in.checksums["flow"] = sha256_hex(*L.flow);
    }
    return in;
}

std::size_t capacity_class(double energy_gwh) {
    if (energy_gwh < 0.1) return 0;
    if (energy_gwh < 1.0) return 1;
    return 2;
}

SummaryReport summarize(const std::vector<PshSite>& sites, const SchemeConfig& cfg) {
    SummaryReport report;
    for (Scheme s : kAllSchemes) report.schemes[s] = SchemeSummary{};

    std::vector<const PshSite*> ordered;
    for (const auto& s : sites) ordered.push_back(&s);
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) { return a->site_id < b->site_id; });

    for (const PshSite* site : ordered) {
        auto& sum = report.schemes[site->scheme];
        auto add = [&](Tier t, double e) {
            auto i = static_cast<std::size_t>(t);
            ++sum.tiers[i].count;
            sum.tiers[i].total_gwh += e;
            ++report.totals[i].count;
            report.totals[i].total_gwh += e;
        };
        add(Tier::Theoretical, site->energy_theoretical_gwh);
        if (site->tier >= Tier::Technical && site->energy_technical_gwh) {
            add(Tier::Technical, *site->energy_technical_gwh);
            ++sum.histogram[capacity_class(*site->energy_technical_gwh)];
        }
        if (site->tier == Tier::Exploitable && site->energy_technical_gwh) add(Tier::Exploitable, *site->energy_technical_gwh);
    }

    auto pct = [](const std::array<TierTotals, 3>& t) -> std::optional<double> {
        if (!(t[0].total_gwh > 0.0)) return std::nullopt;
        return 100.0 * t[1].total_gwh / t[0].total_gwh;
    };
    for (auto& [scheme, sum] : report.schemes) sum.technical_pct_of_theoretical = pct(sum.tiers);
    report.technical_pct_of_theoretical = pct(report.totals);
    report.annual_exploitable_gwh = annual_energy_gwh(report.totals[2].total_gwh);
    report.config = to_json(cfg);
    return report;
}

nlohmann::json to_json(const SummaryReport& report) {
    auto tiers_json = [](const std::array<TierTotals, 3>& tiers) {
        nlohmann::json j = nlohmann::json::object();
        for (Tier t : {Tier::Theoretical, Tier::Technical, Tier::Exploitable}) {
            const auto& tt = tiers[static_cast<std::size_t>(t)];
            j[std::string(to_string(t))] = {{"count", tt.count}, {"total_gwh", tt.total_gwh}};
        }
        return j;
    };
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };

    nlohmann::json schemes = nlohmann::json::object();
    nlohmann::json histograms = nlohmann::json::object();
    nlohmann::json pct = nlohmann::json::object();
    for (const auto& [scheme, sum] : report.schemes) {
        const std::string key(to_string(scheme));
        schemes[key] = tiers_json(sum.tiers);
        histograms[key] = {{"lt_0.1", sum.histogram[0]}, {"0.1_to_1", sum.histogram[1]}, {"ge_1", sum.histogram[2]}};
        pct[key] = opt(sum.technical_pct_of_theoretical);
    }
    pct["all"] = opt(report.technical_pct_of_theoretical);

    nlohmann::json bands = nlohmann::json::array();
    for (const auto& b : report.band_summaries) {
        nlohmann::json vars = nlohmann::json::object();
        for (const auto& [name, v] : b.variables) vars[name] = {{"n", v.n}, {"mean", v.mean}, {"sd", v.sd}};
        bands.push_back({{"scheme", to_string(b.scheme)}, {"band", to_string(b.band)}, {"count", b.count}, {"variables", vars}});
    }

    return {{"config", report.config},
            {"inputs", report.inputs},
            {"schemes", schemes},
            {"totals", tiers_json(report.totals)},
            {"histograms", histograms},
            {"technical_pct_of_theoretical", pct},
            {"exploitable_gwh", report.totals[2].total_gwh},
            {"annual_exploitable_gwh", report.annual_exploitable_gwh},
            {"band_summaries", bands}};
}

void check_invariants(const std::vector<PshSite>& sites, const SchemeConfig& cfg) {
    auto fail = [](const PshSite& s, const std::string& what) {
        throw InvariantError("site " + std::to_string(s.site_id) + " (" + std::string(to_string(s.scheme)) + "): " + what);
    };
    auto check_pair = [&](const PshSite& s, const Pairing& p) {
        if (p.head_m < cfg.min_head_m) fail(s, "head below minimum");
        if (p.separation_m > cfg.max_separation_m || p.separation_m > cfg.search_radius_m) fail(s, "separation too large");
        if (!(p.upper_elevation_m > p.lower_elevation_m)) fail(s, "upper reservoir not above lower");
        if (std::abs(p.upper_elevation_m - p.lower_elevation_m - p.head_m) > 1e-9 * std::max(1.0, p.head_m))
            fail(s, "head differs from elevation difference");
        if (std::abs(p.l_over_h * p.head_m - p.separation_m) > 1e-9 * std::max(1.0, p.separation_m))
            fail(s, "l/h inconsistent with separation and head");
    };
    for (const auto& s : sites) {
        check_pair(s, s.pair);
        if (s.energy_theoretical_gwh < cfg.energy_threshold_gwh) fail(s, "theoretical energy below threshold");
        if (s.technical_pair) {
            check_pair(s, *s.technical_pair);
            if (!(s.technical_pair->l_over_h < cfg.max_l_over_h)) fail(s, "technical pair l/h not below limit");
            if (!s.energy_technical_gwh || *s.energy_technical_gwh < cfg.energy_threshold_gwh)
                fail(s, "technical energy below threshold");
        }
        if (s.tier >= Tier::Technical && !s.technical_pair) fail(s, "technical tier without technical pairing");
    }
}

PipelineResult run_pipeline(const PipelineInputs& inputs, const SchemeConfig& cfg, unsigned workers) {
    validate(cfg);
    PipelineResult result;
    auto& log = result.log;
    const RasterGrid& dem = inputs.dem;
    validate(dem, "dem");

    std::vector<Discard> discards;
    const RasterGrid slope = compute_slope(dem, workers);
    const auto flats = extract_flatlands(slope, dem, cfg, &discards);
    std::vector<ReservoirCandidate> lakes;
    std::vector<ReservoirCandidate> rivers;
    if (inputs.lakes) lakes = lake_candidates(*inputs.lakes, dem, cfg, &discards);
    if (inputs.rivers) rivers = densify_river_points(*inputs.rivers, dem, cfg, &discards);
    for (const auto& d : discards)
        log.push_back("DISCARD layer=" + d.layer + " id=" + std::to_string(d.id) + " reason=" + d.reason +
                      (d.detail.empty() ? "" : " " + d.detail));
    log.push_back("CANDIDATES flatlands=" + std::to_string(flats.size()) + " lakes=" + std::to_string(lakes.size()) +
                  " river_points=" + std::to_string(rivers.size()));

    auto pool_for = [&](CandidateKind kind) -> const std::vector<ReservoirCandidate>& {
        switch (kind) {
            case CandidateKind::Lake: return lakes;
            case CandidateKind::FlatLand: return flats;
            case CandidateKind::RiverPoint: return rivers;
        }
        return lakes;
    };
    auto available = [&](CandidateKind kind) {
        switch (kind) {
            case CandidateKind::Lake: return inputs.lakes.has_value();
            case CandidateKind::FlatLand: return true;
            case CandidateKind::RiverPoint: return inputs.rivers.has_value();
        }
        return false;
    };

    for (Scheme scheme : kAllSchemes) {
        const std::string name(to_string(scheme));
        std::vector<std::string> missing;
        if (!available(prospective_kind(scheme))) missing.push_back(prospective_kind(scheme) == CandidateKind::Lake ? "lakes" : "rivers");
        if (!available(second_kind(scheme)) && second_kind(scheme) != prospective_kind(scheme))
            missing.push_back(second_kind(scheme) == CandidateKind::Lake ? "lakes" : "rivers");
        if (!missing.empty()) {
            log.push_back("WARN scheme=" + name + " skipped reason=missing_layer layers=" + join(missing));
            continue;
        }
        auto res = evaluate_scheme(scheme, pool_for(prospective_kind(scheme)), pool_for(second_kind(scheme)), cfg, workers);
        for (const auto& a : res.audits) {
            const char* outcome = a.technical ? "technical" : a.theoretical ? "theoretical" : "none";
            log.push_back("PAIRING scheme=" + name + " prospective=" + std::to_string(a.prospective_id) +
                          " in_radius=" + std::to_string(a.in_radius) + " rejected_head=" + std::to_string(a.rejected_head) +
                          " rejected_separation=" + std::to_string(a.rejected_separation) +
                          " rejected_energy=" + std::to_string(a.rejected_energy) +
                          " rejected_l_over_h=" + std::to_string(a.rejected_l_over_h) + " outcome=" + outcome);
        }
        for (auto& s : res.sites) result.sites.push_back(std::move(s));
    }
    assign_site_ids(result.sites);

    const ScreeningContext ctx = ScreeningContext::from_layers(
        inputs.roads ? &*inputs.roads : nullptr, inputs.planned_substations ? &*inputs.planned_substations : nullptr,
        inputs.operational_substations ? &*inputs.operational_substations : nullptr,
        inputs.protected_areas ? &*inputs.protected_areas : nullptr);
    if (ctx.roads.empty()) log.push_back("WARN screening reason=no_roads all sites stay Theoretical");
    for (auto& s : result.sites) s.tier = classify_tier(s, ctx, cfg);

    const ClimateStack* precip = inputs.precip ? &*inputs.precip : nullptr;
    const ClimateStack* temp = inputs.temp ? &*inputs.temp : nullptr;
    const FlowSeries* flow = inputs.flow ? &*inputs.flow : nullptr;
    for (const auto& s : result.sites) {
        try {
            result.profiles.push_back(attach_profile(s, precip, temp, flow));
        } catch (const DomainError& e) {
            result.profiles.push_back(std::nullopt);
            log.push_back("PROFILE site=" + std::to_string(s.site_id) + " reason=unavailable " + e.what());
        }
    }

    check_invariants(result.sites, cfg);

    result.report = summarize(result.sites, cfg);
    result.report.inputs = inputs.checksums;
    std::vector<PshSite> technical_sites;
    std::vector<std::optional<HydroclimateProfile>> technical_profiles;
    for (std::size_t i = 0; i < result.sites.size(); ++i) {
        if (result.sites[i].tier < Tier::Technical) continue;
        technical_sites.push_back(result.sites[i]);
        technical_profiles.push_back(result.profiles[i]);
    }
    result.report.band_summaries = band_summaries(technical_sites, technical_profiles);
    return result;
}

void write_outputs(const PipelineResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw LayerError("cannot create output directory " + dir.string() + ": " + ec.message());
    auto write = [&](const char* name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw LayerError("cannot write " + (dir / name).string());
        out << text;
    };
    write("sites.csv", write_sites_csv(result.sites, result.profiles));
    write("sites.geojson", write_sites_geojson(result.sites, result.profiles).dump(2) + "\n");
    write("summary.json", to_json(result.report).dump(2) + "\n");
    std::string log;
    for (const auto& line : result.log) log += line + '\n';
    write("run.log", log);
}

}  // namespace psh

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "psh/pipeline.hpp"
#include "psh/site_io.hpp"

using namespace psh;

namespace {

const std::filesystem::path kFixture = PSH_FIXTURE_DIR;

const PipelineInputs& fixture_inputs() {
    static const PipelineInputs inputs = ingest(load_pipeline_config(kFixture / "config.json"));
    return inputs;
}

std::size_t count(const std::vector<PshSite>& sites, Tier at_least) {
    return static_cast<std::size_t>(
        std::count_if(sites.begin(), sites.end(), [&](const auto& s) { return s.tier >= at_least; }));
}

PshSite technical_site(long id, double energy) {
    PshSite s;
    s.site_id = id;
    s.scheme = Scheme::L2F;
    s.tier = Tier::Technical;
    s.energy_theoretical_gwh = energy / 0.8;
    s.technical_pair = Pairing{};
    s.energy_technical_gwh = energy;
    return s;
}

bool has_log(const PipelineResult& r, const std::string& needle) {
    return std::any_of(r.log.begin(), r.log.end(), [&](const auto& l) { return l.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Summary, CapacityHistogramAndAnnualLine) {
    EXPECT_EQ(capacity_class(0.0999), 0u);
    EXPECT_EQ(capacity_class(0.1), 1u);
    EXPECT_EQ(capacity_class(1.0), 2u);

    auto sites = std::vector<PshSite>{technical_site(1, 0.05), technical_site(2, 0.5), technical_site(3, 5.0)};
    sites[2].tier = Tier::Exploitable;
    const auto r = summarize(sites, SchemeConfig{});
    EXPECT_EQ(r.schemes.at(Scheme::L2F).histogram, (CapacityHistogram{1, 1, 1}));
    EXPECT_EQ(r.totals[0].count, 3u);
    EXPECT_EQ(r.totals[1].count, 3u);
    EXPECT_EQ(r.totals[2].count, 1u);
    EXPECT_DOUBLE_EQ(r.totals[1].total_gwh, 5.55);
    EXPECT_DOUBLE_EQ(r.annual_exploitable_gwh, 5.0 * 365);
    EXPECT_NEAR(*r.technical_pct_of_theoretical, 80.0, 1e-12);

    const auto j = to_json(r);
    for (const char* key : {"config", "inputs", "schemes", "histograms", "annual_exploitable_gwh"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["schemes"]["L2F"]["Technical"]["count"], 3);
}

TEST(Summary, EmptyInventory) {
    const auto r = summarize({}, SchemeConfig{});
    EXPECT_EQ(r.totals[0].count, 0u);
    EXPECT_FALSE(r.technical_pct_of_theoretical);
    EXPECT_EQ(r.annual_exploitable_gwh, 0.0);
}

TEST(Invariants, RejectsBrokenSite) {
    auto s = technical_site(1, 0.5);
    s.pair.head_m = 10;
    s.pair.upper_elevation_m = 110;
    s.pair.lower_elevation_m = 100;
    EXPECT_THROW(check_invariants({s}, SchemeConfig{}), InvariantError);
}

TEST(Config, LayerKeysAndPaths) {
    const auto cfg = parse_pipeline_config(nlohmann::json::parse(R"({"min_head_m": 80, "layers": {"dem": "a/dem.asc"}})"),
                                           "/data");
    EXPECT_EQ(cfg.scheme.min_head_m, 80.0);
    EXPECT_EQ(cfg.layers.dem, std::filesystem::path("/data/a/dem.asc"));
    EXPECT_FALSE(cfg.layers.lakes);
    EXPECT_THROW(parse_pipeline_config(nlohmann::json::parse(R"({"layers": {}})"), "/"), ConfigError);
    EXPECT_THROW(parse_pipeline_config(nlohmann::json::parse(R"({"layers": {"dem": "x", "dems": "y"}})"), "/"),
                 ConfigError);
    EXPECT_THROW(load_pipeline_config(kFixture / "missing.json"), ConfigError);
}

TEST(Pipeline, MissingLayerNamedInError) {
    auto cfg = load_pipeline_config(kFixture / "config.json");
    cfg.layers.roads = kFixture / "nope.geojson";
    try {
        ingest(cfg);
        FAIL();
    } catch (const LayerError& e) {
        EXPECT_NE(std::string(e.what()).find("roads"), std::string::npos);
    }
}

TEST(Pipeline, WithoutLakesOnlyFlatToRiverRuns) {
    auto inputs = fixture_inputs();
    inputs.lakes.reset();
    const auto r = run_pipeline(inputs, SchemeConfig{});
    ASSERT_FALSE(r.sites.empty());
    for (const auto& s : r.sites) EXPECT_EQ(s.scheme, Scheme::F2R);
    EXPECT_TRUE(has_log(r, "WARN scheme=L2L skipped"));
    EXPECT_TRUE(has_log(r, "WARN scheme=L2R skipped"));
}

TEST(Pipeline, RemovingParksPromotesSitesNearOperationalSubstations) {
    const SchemeConfig cfg;
    const auto base = run_pipeline(fixture_inputs(), cfg);
    auto inputs = fixture_inputs();
    inputs.protected_areas.reset();
    const auto open = run_pipeline(inputs, cfg);
    ASSERT_EQ(base.sites.size(), open.sites.size());
    const auto ops = geometries<Point>(*inputs.operational_substations);
    std::size_t promoted = 0;
    for (std::size_t i = 0; i < open.sites.size(); ++i) {
        const auto& s = open.sites[i];
        EXPECT_GE(s.tier, base.sites[i].tier);
        if (s.tier >= Tier::Technical && distance_to_points(s.reference_point(), ops) <= cfg.infra_buffer_m)
            EXPECT_EQ(s.tier, Tier::Exploitable);
        promoted += s.tier != base.sites[i].tier;
    }
    EXPECT_GT(promoted, 0u);
}

TEST(Pipeline, RemovingRoadsDemotesEverything) {
    const SchemeConfig cfg;
    const auto base = run_pipeline(fixture_inputs(), cfg);
    auto inputs = fixture_inputs();
    inputs.roads.reset();
    const auto bare = run_pipeline(inputs, cfg);
    EXPECT_EQ(count(bare.sites, Tier::Technical), 0u);
    EXPECT_EQ(bare.report.totals[0].count, base.report.totals[0].count);
    EXPECT_DOUBLE_EQ(bare.report.totals[0].total_gwh, base.report.totals[0].total_gwh);
}

TEST(Pipeline, TierNesting) {
    const auto r = run_pipeline(fixture_inputs(), SchemeConfig{});
    for (const auto& [scheme, sum] : r.report.schemes) {
        EXPECT_GE(sum.tiers[0].count, sum.tiers[1].count);
        EXPECT_GE(sum.tiers[1].count, sum.tiers[2].count);
        EXPECT_GE(sum.tiers[0].total_gwh, sum.tiers[1].total_gwh);
        EXPECT_GE(sum.tiers[1].total_gwh, sum.tiers[2].total_gwh);
    }
    for (std::size_t i = 0; i < r.sites.size(); ++i) EXPECT_EQ(r.sites[i].site_id, static_cast<long>(i) + 1);
}

TEST(Pipeline, OutputIndependentOfWorkerCount) {
    const auto one = run_pipeline(fixture_inputs(), SchemeConfig{}, 1);
    const auto four = run_pipeline(fixture_inputs(), SchemeConfig{}, 4);
    EXPECT_EQ(write_sites_csv(one.sites, one.profiles), write_sites_csv(four.sites, four.profiles));
    EXPECT_EQ(to_json(one.report).dump(), to_json(four.report).dump());
    EXPECT_EQ(one.log, four.log);
}

TEST(Pipeline, WritesAllOutputs) {
    const auto dir = std::filesystem::temp_directory_path() / "psh_pipeline_outputs";
    std::filesystem::remove_all(dir);
    write_outputs(run_pipeline(fixture_inputs(), SchemeConfig{}), dir);
    for (const char* name : {"sites.csv", "sites.geojson", "summary.json", "run.log"})
        EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
    std::ifstream in(dir / "summary.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["inputs"].size(), fixture_inputs().checksums.size());
    std::filesystem::remove_all(dir);
}

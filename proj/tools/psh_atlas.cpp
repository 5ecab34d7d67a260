#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "psh/errors.hpp"
#include "psh/geodata.hpp"
#include "psh/pipeline.hpp"
#include "psh/terrain.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kLayerError = 3, kInvariantError = 4 };

int run_command(const std::filesystem::path& config, const std::filesystem::path& out, unsigned workers) {
    const auto cfg = psh::load_pipeline_config(config);
    const auto inputs = psh::ingest(cfg);
    const auto result = psh::run_pipeline(inputs, cfg.scheme, workers);
    psh::write_outputs(result, out);
    for (const auto& line : result.log)
        if (line.starts_with("WARN")) std::cerr << line << '\n';
    const auto& totals = result.report.totals;
    std::cout << "sites: " << result.sites.size() << '\n'
              << "theoretical: " << totals[0].count << " sites, " << psh::format_number(totals[0].total_gwh) << " GWh\n"
              << "technical:   " << totals[1].count << " sites, " << psh::format_number(totals[1].total_gwh) << " GWh\n"
              << "exploitable: " << totals[2].count << " sites, " << psh::format_number(totals[2].total_gwh) << " GWh ("
              << psh::format_number(result.report.annual_exploitable_gwh) << " GWh/year)\n"
              << "outputs written to " << out.string() << '\n';
    return kOk;
}

int validate_command(const std::filesystem::path& config) {
    const auto cfg = psh::load_pipeline_config(config);
    const auto inputs = psh::ingest(cfg);
    std::cout << "dem: " << inputs.dem.ncols() << "x" << inputs.dem.nrows() << " cells, " << inputs.dem.usable_cells()
              << " with data\n";
    auto count = [](const char* name, const auto& layer) {
        if (layer) std::cout << name << ": " << layer->features.size() << " features\n";
        else std::cout << name << ": not configured\n";
    };
    count("lakes", inputs.lakes);
    count("rivers", inputs.rivers);
    count("roads", inputs.roads);
    count("planned_substations", inputs.planned_substations);
    count("operational_substations", inputs.operational_substations);
    count("protected_areas", inputs.protected_areas);
    if (inputs.precip) std::cout << "precip: " << inputs.precip->months.size() << " monthly grids\n";
    if (inputs.temp) std::cout << "temp: " << inputs.temp->months.size() << " monthly grids\n";
    if (inputs.flow) std::cout << "flow: " << inputs.flow->size() << " river points\n";
    const auto overrides = cfg.scheme.overrides();
    for (const auto& name : overrides) std::cout << "override: " << name << '\n';
    std::cout << "ok\n";
    return kOk;
}

int slope_command(const std::filesystem::path& dem_path, const std::filesystem::path& out) {
    const auto dem = psh::read_ascii_grid(dem_path);
    psh::validate(dem, "dem");
    psh::RasterGrid slope;
    try {
        slope = psh::compute_slope(dem, std::max(1u, std::thread::hardware_concurrency()));
    } catch (const psh::DomainError& e) {
        throw psh::LayerError(dem_path.string() + ": " + e.what());
    }
    psh::write_ascii_grid(out, slope);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pumped-storage hydropower site screening"};
    app.require_subcommand(1);

    std::filesystem::path config;
    std::filesystem::path out;
    unsigned workers = 1;
    auto* run = app.add_subcommand("run", "Run the full screening pipeline");
    run->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output directory")->required();
    run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    std::filesystem::path dem_path;
    std::filesystem::path slope_out;
    auto* slope = app.add_subcommand("slope", "Percent slope of an ASCII-grid DEM");
    slope->add_option("dem", dem_path, "Input DEM (.asc)")->required()->check(CLI::ExistingFile);
    slope->add_option("-o,--output", slope_out, "Output slope grid (.asc)")->required();

    std::filesystem::path validate_config;
    auto* validate = app.add_subcommand("validate", "Parse and check every configured input");
    validate->add_option("--config", validate_config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) return run_command(config, out, workers);
        if (*slope) return slope_command(dem_path, slope_out);
        if (*validate) return validate_command(validate_config);
    } catch (const psh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const psh::LayerError& e) {
        std::cerr << "layer error: " << e.what() << '\n';
        return kLayerError;
    } catch (const psh::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInvariantError;
    }
    return kOk;
}

// Command-line front end: run scenarios, compare presets, validate
// configurations and import ephemeris tables.
//
// Exit codes: 0 on success, 2 on configuration errors, 3 on runtime errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entlink/config.hpp"
#include "entlink/ephemeris.hpp"
#include "entlink/output.hpp"
#include "entlink/scenario.hpp"

namespace fs = std::filesystem;
using namespace entlink;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

Scenario load_scenario(const std::string& spec) {
    if (fs::exists(spec)) return parse_config_file(spec);
    if (is_preset_name(spec)) return preset_scenario(spec);
    throw ConfigError("'" + spec + "' is neither a config file nor a preset name (see 'entlink presets')");
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

AttenuationAveraging parse_averaging(const std::string& text) {
    if (text == "db") return AttenuationAveraging::decibel;
    if (text == "linear") return AttenuationAveraging::linear;
    throw ConfigError("--attenuation-averaging: expected 'db' or 'linear'");
}

void write_run_outputs(const fs::path& dir, const Scenario& scenario, const RunResult& result) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "samples.csv", std::ios::binary);
        write_samples_csv(out, result.samples);
    }
    {
        std::ofstream out(dir / "daily.csv", std::ios::binary);
        write_daily_csv(out, result.daily);
    }
    {
        std::ofstream out(dir / "summary.json", std::ios::binary);
        write_summary_json(out, scenario.name, result.summary);
    }
    write_file(dir / "summary.txt", summary_table({{scenario.name, result.summary}}));
    write_file(dir / "resolved_config.json", scenario_to_json(scenario).dump(2) + "\n");
}

int cmd_run(const std::string& spec, const std::string& out_dir, int threads,
            const std::string& averaging, const std::string& export_ephemeris, bool quiet) {
    const Scenario scenario = load_scenario(spec);

    if (!export_ephemeris.empty()) {
        const auto* elements = std::get_if<OrbitElements>(&scenario.orbit);
        if (!elements) throw ConfigError("--export-ephemeris requires an element-based orbit");
        const long long n = scenario.time.step_count();
        if (n < 2) throw ConfigError("--export-ephemeris: scenario shorter than two steps");
        const EphemerisTable table =
            tabulate_orbit(*elements, scenario.time.start, scenario.time.step_s, n);
        std::ofstream out(export_ephemeris, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + export_ephemeris);
        write_ephemeris_csv(out, table);
        if (!quiet) std::cout << "wrote ephemeris: " << export_ephemeris << "\n";
    }

    RunOptions options;
    options.threads = threads;
    options.averaging = parse_averaging(averaging);
    const RunResult result = run_scenario(scenario, options);

    write_run_outputs(out_dir, scenario, result);
    if (!quiet) {
        std::cout << summary_table({{scenario.name, result.summary}});
        std::cout << "outputs: " << out_dir << "/{samples.csv, daily.csv, summary.json, "
                  << "summary.txt, resolved_config.json}\n";
    }
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& specs, const std::string& out_dir, int threads) {
    std::vector<std::pair<std::string, KpiSummary>> columns;
    RunOptions options;
    options.threads = threads;
    for (const std::string& spec : specs) {
        const Scenario scenario = load_scenario(spec);
        const RunResult result = run_scenario(scenario, options);
        columns.emplace_back(scenario.name, result.summary);
        if (!out_dir.empty()) {
            write_run_outputs(fs::path(out_dir) / scenario.name, scenario, result);
        }
    }
    std::cout << summary_table(columns);
    if (!out_dir.empty()) {
        write_file(fs::path(out_dir) / "comparison.txt", summary_table(columns));
    }
    return kExitOk;
}

int cmd_presets(const std::string& name) {
    if (!name.empty()) {
        std::cout << scenario_to_json(preset_scenario(name)).dump(2) << "\n";
        return kExitOk;
    }
    for (const std::string& preset : preset_names()) std::cout << preset << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const Scenario scenario = parse_config_file(path);
    std::cout << scenario_to_json(scenario).dump(2) << "\n";
    std::cerr << "OK: " << scenario.name << "\n";
    return kExitOk;
}

int cmd_import_ephemeris(const std::string& path, const std::string& out_path) {
    const EphemerisTable table = import_ephemeris_file(path);
    std::cout << "rows: " << table.size() << "\n"
              << "frame: " << (table.source_frame == Frame::eci ? "ECI" : "ECEF") << "\n"
              << "span: " << table.first_epoch().to_iso() << " .. " << table.last_epoch().to_iso()
              << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_ephemeris_csv(out, table);
        std::cout << "wrote normalized ECI table: " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-to-ground entanglement distribution mission simulator"};
    app.require_subcommand(1);

    std::string spec, out_dir = "out", averaging = "db", export_ephemeris, preset_name, config_path;
    std::string eph_path, eph_out;
    std::vector<std::string> compare_specs;
    int threads = 0;
    bool quiet = false;

    CLI::App* run = app.add_subcommand("run", "Run one scenario and write result files");
    run->add_option("scenario", spec, "Config file or preset name")->required();
    run->add_option("-o,--out-dir", out_dir, "Output directory (default: out)");
    run->add_option("--threads", threads, "Worker threads (0 = all cores)");
    run->add_option("--attenuation-averaging", averaging, "KPI attenuation averaging: db|linear");
    run->add_option("--export-ephemeris", export_ephemeris, "Also write the trajectory as CSV");
    run->add_flag("--quiet", quiet, "Suppress the summary printout");

    CLI::App* compare = app.add_subcommand("compare", "Run scenarios and print one merged table");
    compare->add_option("scenarios", compare_specs, "Config files or preset names")
        ->required()
        ->expected(-1);
    compare->add_option("-o,--out-dir", out_dir, "Optional directory for per-scenario outputs");
    compare->add_option("--threads", threads, "Worker threads (0 = all cores)");

    CLI::App* presets = app.add_subcommand("presets", "List presets, or print one as JSON");
    presets->add_option("name", preset_name, "Preset to print in full");

    CLI::App* validate = app.add_subcommand("validate", "Parse a config and echo it resolved");
    validate->add_option("config", config_path, "Config file")->required();

    CLI::App* import =
        app.add_subcommand("import-ephemeris", "Validate an ephemeris CSV (optionally re-emit as ECI)");
    import->add_option("file", eph_path, "Ephemeris CSV")->required();
    import->add_option("-o,--out", eph_out, "Write the normalized ECI table here");

    // compare writes per-scenario outputs only when -o was given explicitly
    std::string compare_out;
    compare->callback([&] { compare_out = compare->count("-o") ? out_dir : ""; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(spec, out_dir, threads, averaging, export_ephemeris, quiet);
        }
        if (compare->parsed()) return cmd_compare(compare_specs, compare_out, threads);
        if (presets->parsed()) return cmd_presets(preset_name);
        if (validate->parsed()) return cmd_validate(config_path);
        if (import->parsed()) return cmd_import_ephemeris(eph_path, eph_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

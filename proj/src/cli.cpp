#include "lisl/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lisl/config.hpp"
#include "lisl/errors.hpp"
#include "lisl/output.hpp"
#include "lisl/scenario.hpp"

namespace lisl::cli {

namespace {

struct Overrides {
    std::string config_path;
    std::string ingest;
    std::vector<std::string> pairs;
    std::vector<double> ranges;
    std::vector<double> etas;
    int slots = 0;
    std::string node_delay_mode;
    bool strict = false;
    int threads = 0;
};

void add_common(CLI::App* app, Overrides& o)
{
    app->add_option("--config", o.config_path, "Scenario configuration file (JSON, comments allowed)")->required();
    app->add_option("--pairs", o.pairs, "Station pairs as source:destination, comma separated")->delimiter(',');
    app->add_option("--ranges", o.ranges, "LISL ranges in km, comma separated")->delimiter(',');
    app->add_option("--etas", o.etas, "Setup delays in ms, comma separated")->delimiter(',');
    app->add_option("--slots", o.slots, "Number of one-slot steps to simulate");
    app->add_option("--node-delay-mode", o.node_delay_mode, "per-node or per-path");
    app->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

StationPair parse_pair(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
        throw ConfigError("pair '" + text + "' must be written as source:destination");
    }
    return {text.substr(0, colon), text.substr(colon + 1)};
}

ScenarioConfig resolve_config(const Overrides& o)
{
    if (!std::filesystem::exists(o.config_path)) {
        throw ConfigError("config file '" + o.config_path + "' does not exist");
    }
    ScenarioConfig cfg = load_config(o.config_path);
    if (!o.pairs.empty()) {
        cfg.pairs.clear();
        for (const auto& p : o.pairs) {
            cfg.pairs.push_back(parse_pair(p));
        }
    }
    if (!o.ranges.empty()) {
        cfg.lisl_ranges_km = o.ranges;
    }
    if (!o.etas.empty()) {
        cfg.latency.setup_delays_ms = o.etas;
    }
    if (o.slots != 0) {
        cfg.num_slots = o.slots;
    }
    if (!o.node_delay_mode.empty()) {
        cfg.latency.node_delay_mode = parse_node_delay_mode(o.node_delay_mode);
    }
    if (!o.ingest.empty()) {
        cfg.ingest_path = o.ingest;
    }
    cfg.validate();
    return cfg;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err)
{
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
}

int cmd_run(const Overrides& o, const std::string& out_dir, const std::string& etas_sweep, std::ostream& out,
            std::ostream& err)
{
    const ScenarioConfig cfg = resolve_config(o);
    report::BundleOptions bundle_opts;
    if (!etas_sweep.empty()) {
        bundle_opts.eta_sweep = report::EtaSweep::parse(etas_sweep);
    }
    const auto start = std::chrono::steady_clock::now();
    const ScenarioResult result = run_scenario(cfg, {o.threads, o.strict});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_warnings(result.warnings, err);
    const auto bundle = report::write_bundle(result, out_dir, bundle_opts);
    print_warnings(bundle.warnings, err);

    out << "simulated " << result.cells.size() << " cells x " << cfg.num_slots << " slots in " << secs << " s\n";
    for (const auto& c : result.cells) {
        out << "  " << c.pair.label() << " @ " << report::number(c.range_km)
            << " km: lambda=" << report::number(c.metrics.lambda_pct)
            << "% mean_wo=" << report::number(c.metrics.mean_latency_without_ms)
            << " ms eta_s_max=" << report::format_tolerable(c.metrics.eta_s_max) << '\n';
    }
    out << "wrote " << bundle.files.size() + 1 << " files to " << out_dir << '\n';
    return kOk;
}

int cmd_table1(Overrides o, const std::string& pair_text, double range, int rows, double eta, std::ostream& out,
               std::ostream& err)
{
    if (rows < 0) {
        throw ConfigError("--rows must be >= 0");
    }
    if (!pair_text.empty()) {
        o.pairs = {pair_text};
    }
    if (o.slots == 0) {
        o.slots = std::max(rows, 1);
    }
    ScenarioConfig cfg = resolve_config(o);
    const StationPair pair = cfg.pairs.front();
    const double r = range > 0.0 ? range : cfg.lisl_ranges_km.front();
    cfg.pairs = {pair};
    cfg.lisl_ranges_km = {r};
    cfg.validate();
    const ScenarioResult result = run_scenario(cfg, {o.threads, o.strict});
    print_warnings(result.warnings, err);
    out << report::emit_table1(result, pair, r, rows, eta);
    return kOk;
}

int cmd_export(const Overrides& o, const std::string& out_dir, std::ostream& out)
{
    const ScenarioConfig cfg = resolve_config(o);
    if (cfg.ingest_path) {
        throw ConfigError("export-topology requires the internal topology source");
    }
    std::filesystem::create_directories(out_dir);
    for (double r : cfg.lisl_ranges_km) {
        const auto snaps = generate_snapshots(cfg, r, {o.threads, o.strict});
        const auto path = std::filesystem::path(out_dir) / ("topology_" + report::number(r) + "km.csv");
        std::ofstream file(path);
        if (!file) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        export_snapshots(file, snaps);
        out << "wrote " << path.string() << " (" << snaps.size() << " slots)\n";
    }
    return kOk;
}

int cmd_check(const Overrides& o, std::ostream& out)
{
    const ScenarioConfig cfg = resolve_config(o);
    out << "config OK: " << cfg.constellation.total() << " satellites, " << cfg.stations.size() << " stations, "
        << cfg.pairs.size() << " pairs, " << cfg.lisl_ranges_km.size() << " ranges, "
        << cfg.latency.setup_delays_ms.size() << " setup delays, " << cfg.num_slots << " slots\n";
    for (const auto& p : cfg.pairs) {
        const double d = great_circle_distance(cfg.station(p.source), cfg.station(p.destination));
        out << "  " << p.label() << ": " << report::number(d / 1000.0) << " km great-circle\n";
    }
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"LISL setup-delay simulator for LEO free-space optical networks", "lisl-sim"};
    app.require_subcommand(1);

    Overrides run_o, table_o, export_o, check_o;
    std::string run_out = "results", export_out = "topology", etas_sweep, pair_text;
    double table_range = 0.0, table_eta = 100.0;
    int table_rows = 6;

    auto* run_cmd = app.add_subcommand("run", "Run the full pair x range sweep and write the output bundle");
    add_common(run_cmd, run_o);
    run_cmd->add_option("--out", run_out, "Output directory");
    run_cmd->add_option("--ingest", run_o.ingest, "Read topology snapshots from this CSV instead of propagating");
    run_cmd->add_option("--etas-sweep", etas_sweep, "Setup-delay sweep lo:hi:step for the tolerable-delay chart");
    run_cmd->add_flag("--strict", run_o.strict, "Fail when a pair is unreachable for more than half the slots");

    auto* table_cmd = app.add_subcommand("table1", "Print the per-slot path table for one pair and range");
    add_common(table_cmd, table_o);
    table_cmd->add_option("--ingest", table_o.ingest, "Read topology snapshots from this CSV");
    table_cmd->add_option("--pair", pair_text, "source:destination (default: first configured pair)");
    table_cmd->add_option("--range", table_range, "LISL range in km (default: first configured range)");
    table_cmd->add_option("--rows", table_rows, "Number of slots to list");
    table_cmd->add_option("--eta", table_eta, "Setup delay in ms for the with-delay column");
    table_cmd->add_flag("--strict", table_o.strict);

    auto* export_cmd = app.add_subcommand("export-topology", "Write snapshot CSVs, one file per range");
    add_common(export_cmd, export_o);
    export_cmd->add_option("--out", export_out, "Output directory");

    auto* check_cmd = app.add_subcommand("check", "Validate a configuration file");
    add_common(check_cmd, check_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run_o, run_out, etas_sweep, out, err);
        }
        if (*table_cmd) {
            return cmd_table1(table_o, pair_text, table_range, table_rows, table_eta, out, err);
        }
        if (*export_cmd) {
            return cmd_export(export_o, export_out, out);
        }
        return cmd_check(check_o, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

} // namespace lisl::cli

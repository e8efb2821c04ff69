#pragma once

// Serializers for scenario results: per-slot CSV, aggregate CSV, per-slot path table
// text, the eta_s sweep CSV and the output-bundle manifest.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lisl/scenario.hpp"

namespace lisl::report {

// Shortest round-trip decimal form ("1", "2.5", "0.1").
std::string number(double v);
// Column tag for a setup delay: 1 -> "1", 2.5 -> "2.5".
std::string eta_label(double eta_s_ms);
// "NA" (nonexistent), "INF" (unbounded) or the value.
std::string format_tolerable(const TolerableDelay& t);
// Lowercase file-name fragment: "New York-London" -> "new_york-london".
std::string slug(const std::string& text);

void write_slots_csv(std::ostream& out, const ScenarioResult& result);
void write_metrics_csv(std::ostream& out, const ScenarioResult& result);

struct MetricsRow {
    std::string pair;
    double range_km = 0.0;
    double lambda_pct = 0.0;
    double mean_wo_ms = 0.0;
    std::vector<double> setup_delays_ms;
    std::vector<double> mean_w_ms;
    std::vector<double> beta_pct;
    TolerableDelay eta_s_max;
    double oftn_ms = 0.0;
    double dist_m = 0.0;
    double mean_hops = 0.0;
    int unreachable = 0;
};
// Throws ParseError.
std::vector<MetricsRow> parse_metrics_csv(std::istream& in);

// Setup-delay sweep lo:hi:step (inclusive of hi when it lands on the grid).
struct EtaSweep {
    double lo = 1.0;
    double hi = 100.0;
    double step = 1.0;

    std::vector<double> values() const;
    // Parses "lo:hi:step"; throws ConfigError.
    static EtaSweep parse(const std::string& text);
};

// pair,range_km,eta_s_ms,mean_w_ms,oftn_ms
void write_tolerable_csv(std::ostream& out, const ScenarioResult& result, const EtaSweep& sweep);

// Per-slot path listing of the first `first_n` slots of one cell. Latencies are
// printed with two decimals; the with-delay column is the printed without-delay
// value plus alpha * eta_s. Throws LookupError for an unknown cell.
std::string emit_table1(const ScenarioResult& result, const StationPair& pair, double range_km, int first_n,
                        double eta_s_ms);

struct BundleOptions {
    std::optional<EtaSweep> eta_sweep; // also enables tolerable.csv
    double table1_eta_s_ms = 100.0;
    int table1_rows = 6;
};

struct BundleFile {
    std::string name;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct OutputBundle {
    std::filesystem::path directory;
    std::vector<BundleFile> files; // everything except manifest.json itself
    std::vector<std::string> warnings;
};

// Writes slots.csv, metrics.csv, table1.txt, optional tolerable.csv, SVG plots
// and manifest.json. Plot failures become warnings.
OutputBundle write_bundle(const ScenarioResult& result, const std::filesystem::path& dir,
                          const BundleOptions& options = {});

} // namespace lisl::report

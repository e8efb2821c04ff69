#pragma once

// End-to-end experiment driver: propagation -> snapshots -> routing -> metrics
// for every (station pair, LISL range) cell.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lisl/metrics.hpp"
#include "lisl/orbital.hpp"
#include "lisl/routing.hpp"
#include "lisl/topology.hpp"

namespace lisl {

struct StationPair {
    std::string source;
    std::string destination;

    // "<source>-<destination>", used as the `pair` column in CSV output.
    std::string label() const { return source + "-" + destination; }
    friend bool operator==(const StationPair&, const StationPair&) = default;
};

struct ScenarioConfig {
    ConstellationSpec constellation;
    std::vector<GroundStation> stations;
    std::vector<StationPair> pairs;
    std::vector<double> lisl_ranges_km;
    int num_slots = 3600;
    double slot_duration_s = 1.0;
    LatencyParams latency;
    // When set, topologies come from this snapshot CSV instead of propagation.
    std::optional<std::filesystem::path> ingest_path;

    // Throws ConfigError.
    void validate() const;
    const GroundStation& station(const std::string& name) const;
    // Absolute time of a 1-based slot.
    double slot_time(int slot_index) const
    {
        return constellation.epoch_s + (slot_index - 1) * slot_duration_s;
    }
};

struct RunOptions {
    int threads = 0; // 0 = hardware concurrency
    bool strict = false;
};

struct CellResult {
    StationPair pair;
    double range_km = 0.0;
    std::vector<SlotResult> slots;
    ScenarioMetrics metrics;
};

struct Provenance {
    std::string code_version;
    std::string config_hash; // sha256 of the canonical config JSON
    std::string timestamp;   // UTC, ISO 8601
};

struct ScenarioResult {
    ScenarioConfig config;
    std::vector<CellResult> cells; // pair-major, ranges in configured order
    Provenance provenance;
    std::vector<std::string> warnings;

    // Throws LookupError for an unknown cell.
    const CellResult& cell(const StationPair& pair, double range_km) const;
};

// Runs every (pair, range) cell. Topology for a slot is computed once per range
// and shared by all pairs. Results do not depend on the thread count.
ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

// One single-cell result per (pair, range), each equal to the corresponding cell
// of run_scenario.
std::vector<ScenarioResult> sweep(const ScenarioConfig& config, const RunOptions& options = {});

// Snapshots for one range over the configured slots (internal propagation only).
std::vector<TopologySnapshot> generate_snapshots(const ScenarioConfig& config, double range_km,
                                                 const RunOptions& options = {});

// Rebuilds metrics from a cell's slot sequence.
ScenarioMetrics recompute_metrics(const CellResult& cell, const ScenarioConfig& config);

std::string code_version();

} // namespace lisl

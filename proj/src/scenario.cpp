#include "lisl/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "lisl/config.hpp"
#include "lisl/errors.hpp"

#ifndef LISL_VERSION
#define LISL_VERSION "0.0.0"
#endif

namespace lisl {

std::string code_version() { return LISL_VERSION; }

void ScenarioConfig::validate() const
{
    constellation.validate();
    std::set<std::string> names;
    for (const auto& gs : stations) {
        gs.validate();
        if (!names.insert(gs.name).second) {
            throw ConfigError("stations: duplicate station name '" + gs.name + "'");
        }
    }
    if (pairs.empty()) {
        throw ConfigError("pairs: at least one station pair is required");
    }
    for (const auto& p : pairs) {
        for (const auto* name : {&p.source, &p.destination}) {
            if (!names.contains(*name)) {
                throw ConfigError("pairs: station '" + *name + "' is not declared");
            }
        }
        if (p.source == p.destination) {
            throw ConfigError("pairs: source and destination are both '" + p.source + "'");
        }
    }
    if (lisl_ranges_km.empty()) {
        throw ConfigError("lisl_ranges_km: at least one range is required");
    }
    for (double r : lisl_ranges_km) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw ConfigError("lisl_ranges_km: every range must be > 0");
        }
    }
    if (num_slots < 1) {
        throw ConfigError("num_slots must be >= 1");
    }
    if (!(slot_duration_s > 0.0) || !std::isfinite(slot_duration_s)) {
        throw ConfigError("slot_duration_s must be > 0");
    }
    latency.validate();
}

const GroundStation& ScenarioConfig::station(const std::string& name) const
{
    for (const auto& gs : stations) {
        if (gs.name == name) {
            return gs;
        }
    }
    throw LookupError("unknown station '" + name + "'");
}

const CellResult& ScenarioResult::cell(const StationPair& pair, double range_km) const
{
    for (const auto& c : cells) {
        if (c.pair == pair && c.range_km == range_km) {
            return c;
        }
    }
    throw LookupError("no result for pair " + pair.label() + " at range " + std::to_string(range_km) + " km");
}

namespace {

int resolve_threads(int requested, int work)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, std::max(1, work));
}

// Runs fn(i) for i in [0, n). Each index owns its output, so the schedule does
// not affect results.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn)
{
    threads = resolve_threads(threads, n);
    if (threads == 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

struct SourceGroup {
    std::string source;
    std::vector<std::size_t> pair_indices;
};

std::vector<SourceGroup> group_by_source(const std::vector<StationPair>& pairs)
{
    std::vector<SourceGroup> groups;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const SourceGroup& g) { return g.source == pairs[i].source; });
        if (it == groups.end()) {
            groups.push_back({pairs[i].source, {i}});
        } else {
            it->pair_indices.push_back(i);
        }
    }
    return groups;
}

// Routes every pair on one snapshot. out[p] receives the path of pair p.
void route_pairs(const TopologySnapshot& snap, const std::vector<StationPair>& pairs,
                 const std::vector<SourceGroup>& groups, std::vector<std::optional<RoutePath>*>& out)
{
    const RoutingGraph graph(snap);
    for (const auto& g : groups) {
        const auto src = snap.find(g.source);
        if (!src || snap.nodes[*src].kind != NodeKind::GroundStation) {
            continue;
        }
        const ShortestPathTree tree(graph, *src);
        for (std::size_t p : g.pair_indices) {
            const auto dst = snap.find(pairs[p].destination);
            if (dst && snap.nodes[*dst].kind == NodeKind::GroundStation) {
                *out[p] = tree.path_to(*dst);
            }
        }
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<TopologySnapshot> load_ingested(const ScenarioConfig& config)
{
    std::ifstream in(*config.ingest_path);
    if (!in) {
        throw InputError("cannot open snapshot file '" + config.ingest_path->string() + "'");
    }
    auto snaps = ingest_snapshots(in);
    if (static_cast<int>(snaps.size()) < config.num_slots) {
        throw InputError("snapshot file '" + config.ingest_path->string() + "' covers slots 1.." +
                         std::to_string(snaps.size()) + " but the scenario needs " +
                         std::to_string(config.num_slots) + "; slot " + std::to_string(snaps.size() + 1) +
                         " is missing");
    }
    snaps.resize(static_cast<std::size_t>(config.num_slots));
    return snaps;
}

} // namespace

std::vector<TopologySnapshot> generate_snapshots(const ScenarioConfig& config, double range_km,
                                                 const RunOptions& options)
{
    config.validate();
    const auto elems = build_constellation(config.constellation);
    std::vector<TopologySnapshot> out(static_cast<std::size_t>(config.num_slots));
    const double ranges[] = {range_km};
    parallel_for(config.num_slots, options.threads, [&](int i) {
        const int slot = i + 1;
        const auto field = SatelliteField::from_elements(elems, config.slot_time(slot));
        out[static_cast<std::size_t>(i)] = std::move(build_snapshots(field, config.stations, ranges, slot).front());
    });
    return out;
}

ScenarioMetrics recompute_metrics(const CellResult& cell, const ScenarioConfig& config)
{
    const double distance =
        great_circle_distance(config.station(cell.pair.source), config.station(cell.pair.destination));
    return aggregate_metrics(cell.slots, config.latency, distance);
}

ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    config.validate();

    ScenarioResult result;
    result.config = config;
    result.provenance = {code_version(), config_hash(config), utc_timestamp()};

    const auto& pairs = config.pairs;
    const auto groups = group_by_source(pairs);
    const std::size_t num_slots = static_cast<std::size_t>(config.num_slots);

    std::vector<double> ranges = config.lisl_ranges_km;
    if (config.ingest_path && ranges.size() > 1) {
        result.warnings.push_back("ingested topology is range-agnostic; reporting it under " +
                                  std::to_string(ranges.front()) + " km only");
        ranges.resize(1);
    }

    // paths[range][pair][slot]
    std::vector<std::vector<std::vector<std::optional<RoutePath>>>> paths(
        ranges.size(), std::vector<std::vector<std::optional<RoutePath>>>(
                           pairs.size(), std::vector<std::optional<RoutePath>>(num_slots)));

    auto route_slot = [&](std::size_t r, std::size_t i, const TopologySnapshot& snap) {
        std::vector<std::optional<RoutePath>*> out(pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            out[p] = &paths[r][p][i];
        }
        route_pairs(snap, pairs, groups, out);
    };

    if (config.ingest_path) {
        const auto snaps = load_ingested(config);
        parallel_for(config.num_slots, options.threads,
                     [&](int i) { route_slot(0, static_cast<std::size_t>(i), snaps[static_cast<std::size_t>(i)]); });
    } else {
        const auto elems = build_constellation(config.constellation);
        parallel_for(config.num_slots, options.threads, [&](int i) {
            const int slot = i + 1;
            const auto field = SatelliteField::from_elements(elems, config.slot_time(slot));
            const auto snaps = build_snapshots(field, config.stations, ranges, slot);
            for (std::size_t r = 0; r < ranges.size(); ++r) {
                route_slot(r, static_cast<std::size_t>(i), snaps[r]);
            }
        });
    }

    // Alpha derivation and aggregation: sequential per cell.
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const double distance =
            great_circle_distance(config.station(pairs[p].source), config.station(pairs[p].destination));
        for (std::size_t r = 0; r < ranges.size(); ++r) {
            CellResult cell;
            cell.pair = pairs[p];
            cell.range_km = ranges[r];
            cell.slots = derive_slot_results(paths[r][p], config.latency);
            cell.metrics = aggregate_metrics(cell.slots, config.latency, distance);

            const int unreachable = cell.metrics.unreachable_slots;
            if (unreachable > 0) {
                const std::string msg = pairs[p].label() + " @ " + std::to_string(static_cast<int>(ranges[r])) +
                                        " km: " + std::to_string(unreachable) + " of " +
                                        std::to_string(config.num_slots) + " slots unreachable";
                if (2 * unreachable > config.num_slots) {
                    if (options.strict) {
                        throw InputError(msg + " (more than half; --strict)");
                    }
                    result.warnings.push_back(msg + " (more than half)");
                } else {
                    result.warnings.push_back(msg);
                }
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

std::vector<ScenarioResult> sweep(const ScenarioConfig& config, const RunOptions& options)
{
    ScenarioResult all = run_scenario(config, options);
    std::vector<ScenarioResult> out;
    out.reserve(all.cells.size());
    for (auto& cell : all.cells) {
        ScenarioResult one;
        one.config = config;
        one.config.pairs = {cell.pair};
        one.config.lisl_ranges_km = {cell.range_km};
        one.provenance = {all.provenance.code_version, config_hash(one.config), all.provenance.timestamp};
        const std::string prefix = cell.pair.label() + " @ " + std::to_string(static_cast<int>(cell.range_km)) + " km";
        for (const auto& w : all.warnings) {
            const bool cell_specific = w.find(" km: ") != std::string::npos;
            if (!cell_specific || w.starts_with(prefix)) {
                one.warnings.push_back(w);
            }
        }
        one.cells.push_back(std::move(cell));
        out.push_back(std::move(one));
    }
    return out;
}

} // namespace lisl

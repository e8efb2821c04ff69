#pragma once

// Closed-form latency metrics: per-slot latency, path change rate, mean latency
// with setup delay, setup-delay impact, maximum tolerable setup delay and the
// optical-fiber baseline.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lisl/orbital.hpp"
#include "lisl/routing.hpp"

namespace lisl {

enum class NodeDelayMode { PerNode, PerPath };

std::string_view node_delay_mode_name(NodeDelayMode mode);
// Accepts "per-node" / "per-path"; throws ConfigError otherwise.
NodeDelayMode parse_node_delay_mode(std::string_view text);

struct LatencyParams {
    double node_delay_ms = 1.0;
    std::vector<double> setup_delays_ms{1.0, 10.0, 100.0, 1000.0};
    double light_speed_m_per_s = constants::kLightSpeedMPerS;
    NodeDelayMode node_delay_mode = NodeDelayMode::PerNode;

    void validate() const; // throws ConfigError
};

// Propagation over all links at light_speed plus node delay: one node_delay per
// satellite (PerNode) or one per path (PerPath).
double latency_without_setup(const RoutePath& path, const LatencyParams& params);

// Percentage of slots whose path changed. Throws DomainError when empty.
double path_change_rate(std::span<const int> alphas);

double mean_latency_with_setup(double mean_without_ms, double lambda_pct, double eta_s_ms);

// Share of the mean latency caused by setup delay, in percent.
double impact(double mean_with_ms, double mean_without_ms);

struct TolerableDelay {
    enum class Kind { Finite, Nonexistent, Unbounded };
    Kind kind = Kind::Nonexistent;
    double value_ms = 0.0; // meaningful only for Finite

    static TolerableDelay finite(double v) { return {Kind::Finite, v}; }
    static TolerableDelay nonexistent() { return {Kind::Nonexistent, 0.0}; }
    static TolerableDelay unbounded() { return {Kind::Unbounded, 0.0}; }
    bool exists() const { return kind != Kind::Nonexistent; }

    friend bool operator==(const TolerableDelay&, const TolerableDelay&) = default;
};

// Largest setup delay for which the satellite path still matches the fiber
// baseline on average.
TolerableDelay max_tolerable_setup_delay(double oftn_ms, double mean_without_ms, double lambda_pct);

double oftn_latency(double distance_m);

struct HopStatistics {
    double mean = 0.0;
    int min = 0;
    int max = 0;
};

// Over present paths only; throws DomainError when none is present.
HopStatistics hop_statistics(std::span<const std::optional<RoutePath>> paths);
HopStatistics hop_statistics(std::span<const RoutePath> paths);

struct ScenarioMetrics {
    int num_slots = 0;
    int unreachable_slots = 0;
    double lambda_pct = 0.0;
    double mean_latency_without_ms = 0.0;
    std::vector<double> setup_delays_ms;
    std::vector<double> mean_latency_with_ms; // aligned with setup_delays_ms
    std::vector<double> beta_pct;             // aligned with setup_delays_ms
    TolerableDelay eta_s_max;
    double oftn_latency_ms = 0.0;
    double terrestrial_distance_m = 0.0;
    double mean_hops = 0.0;
    int min_hops = 0;
    int max_hops = 0;

    friend bool operator==(const ScenarioMetrics&, const ScenarioMetrics&) = default;
};

// Sequential pass over per-slot paths: alpha (slot 0 has no predecessor) and
// per-slot latencies with and without each setup delay.
std::vector<SlotResult> derive_slot_results(std::span<const std::optional<RoutePath>> paths,
                                            const LatencyParams& params, int first_slot_index = 1);

// Aggregates a slot sequence. Unreachable slots count in the path change rate
// denominator but are excluded from latency and hop means.
ScenarioMetrics aggregate_metrics(std::span<const SlotResult> slots, const LatencyParams& params,
                                  double terrestrial_distance_m);

struct ReductionRatioReport {
    double eta_s_ms = 0.0;
    std::optional<double> lambda_ratio;  // lambda_a / lambda_b
    std::optional<double> without_ratio; // mean_without_a / mean_without_b
    std::optional<double> with_ratio;    // mean_with_a / mean_with_b at eta_s
    // lambda_a / lambda_b > without_a / without_b
    std::optional<bool> lambda_exceeds_without;
    // with_a / with_b > without_a / without_b
    std::optional<bool> with_exceeds_without;
};

ReductionRatioReport reduction_ratio_report(const ScenarioMetrics& a, const ScenarioMetrics& b, double eta_s_ms);

} // namespace lisl

#include "lisl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lisl/errors.hpp"

namespace lisl {

std::string_view node_delay_mode_name(NodeDelayMode mode)
{
    return mode == NodeDelayMode::PerNode ? "per-node" : "per-path";
}

NodeDelayMode parse_node_delay_mode(std::string_view text)
{
    if (text == "per-node") {
        return NodeDelayMode::PerNode;
    }
    if (text == "per-path") {
        return NodeDelayMode::PerPath;
    }
    throw ConfigError("node delay mode must be 'per-node' or 'per-path', got '" + std::string(text) + "'");
}

void LatencyParams::validate() const
{
    if (!(node_delay_ms >= 0.0) || !std::isfinite(node_delay_ms)) {
        throw ConfigError("latency: node_delay must be >= 0 ms");
    }
    if (setup_delays_ms.empty()) {
        throw ConfigError("latency: setup_delays must be nonempty");
    }
    for (double eta : setup_delays_ms) {
        if (!(eta > 0.0) || !std::isfinite(eta)) {
            throw ConfigError("latency: every setup delay must be > 0 ms");
        }
    }
    if (!(light_speed_m_per_s > 0.0)) {
        throw ConfigError("latency: light_speed must be > 0");
    }
}

double latency_without_setup(const RoutePath& path, const LatencyParams& params)
{
    const double propagation_ms = path.total_length / params.light_speed_m_per_s * 1000.0;
    const double nodes = params.node_delay_mode == NodeDelayMode::PerNode ? path.hop_count() : 1.0;
    return propagation_ms + params.node_delay_ms * nodes;
}

double path_change_rate(std::span<const int> alphas)
{
    if (alphas.empty()) {
        throw DomainError("path_change_rate: empty alpha sequence");
    }
    long changes = 0;
    for (int a : alphas) {
        changes += a;
    }
    return static_cast<double>(changes) / static_cast<double>(alphas.size()) * 100.0;
}

double mean_latency_with_setup(double mean_without_ms, double lambda_pct, double eta_s_ms)
{
    return mean_without_ms + lambda_pct / 100.0 * eta_s_ms;
}

double impact(double mean_with_ms, double mean_without_ms)
{
    if (!(mean_without_ms > 0.0)) {
        throw DomainError("impact: mean latency without setup delay must be > 0");
    }
    if (mean_with_ms < mean_without_ms) {
        throw DomainError("impact: mean latency with setup delay is below the latency without it");
    }
    return (mean_with_ms - mean_without_ms) / mean_with_ms * 100.0;
}

TolerableDelay max_tolerable_setup_delay(double oftn_ms, double mean_without_ms, double lambda_pct)
{
    if (lambda_pct < 0.0) {
        throw DomainError("max_tolerable_setup_delay: negative path change rate");
    }
    const double margin = oftn_ms - mean_without_ms;
    if (!(margin >= 0.0)) {
        return TolerableDelay::nonexistent();
    }
    if (lambda_pct == 0.0) {
        return TolerableDelay::unbounded();
    }
    return TolerableDelay::finite(margin / (lambda_pct / 100.0));
}

double oftn_latency(double distance_m)
{
    if (distance_m < 0.0) {
        throw DomainError("oftn_latency: negative distance");
    }
    return distance_m / constants::kFiberSpeedMPerS * 1000.0;
}

HopStatistics hop_statistics(std::span<const RoutePath> paths)
{
    if (paths.empty()) {
        throw DomainError("hop_statistics: no paths");
    }
    HopStatistics s{0.0, std::numeric_limits<int>::max(), 0};
    double sum = 0.0;
    for (const auto& p : paths) {
        const int h = p.hop_count();
        sum += h;
        s.min = std::min(s.min, h);
        s.max = std::max(s.max, h);
    }
    s.mean = sum / static_cast<double>(paths.size());
    return s;
}

HopStatistics hop_statistics(std::span<const std::optional<RoutePath>> paths)
{
    std::vector<RoutePath> present;
    for (const auto& p : paths) {
        if (p) {
            present.push_back(*p);
        }
    }
    if (present.empty()) {
        throw DomainError("hop_statistics: every slot is unreachable");
    }
    return hop_statistics(std::span<const RoutePath>(present));
}

std::vector<SlotResult> derive_slot_results(std::span<const std::optional<RoutePath>> paths,
                                            const LatencyParams& params, int first_slot_index)
{
    std::vector<SlotResult> out;
    out.reserve(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        SlotResult r;
        r.slot_index = first_slot_index + static_cast<int>(i);
        r.path = paths[i];
        r.alpha = i == 0 ? path_changed(NoPreviousSlot{}, paths[i]) : path_changed(paths[i - 1], paths[i]);
        if (r.path) {
            const double base = latency_without_setup(*r.path, params);
            r.latency_without_ms = base;
            r.latency_with_ms.reserve(params.setup_delays_ms.size());
            for (double eta : params.setup_delays_ms) {
                r.latency_with_ms.push_back(base + r.alpha * eta);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

ScenarioMetrics aggregate_metrics(std::span<const SlotResult> slots, const LatencyParams& params,
                                  double terrestrial_distance_m)
{
    if (slots.empty()) {
        throw DomainError("aggregate_metrics: no slots");
    }
    ScenarioMetrics m;
    m.num_slots = static_cast<int>(slots.size());
    m.setup_delays_ms = params.setup_delays_ms;
    m.terrestrial_distance_m = terrestrial_distance_m;
    m.oftn_latency_ms = oftn_latency(terrestrial_distance_m);

    std::vector<int> alphas;
    alphas.reserve(slots.size());
    double sum = 0.0;
    double hop_sum = 0.0;
    int reachable = 0;
    m.min_hops = std::numeric_limits<int>::max();
    for (const auto& s : slots) {
        alphas.push_back(s.alpha);
        if (s.latency_without_ms) {
            sum += *s.latency_without_ms;
            const int h = s.path->hop_count();
            hop_sum += h;
            m.min_hops = std::min(m.min_hops, h);
            m.max_hops = std::max(m.max_hops, h);
            ++reachable;
        }
    }
    m.lambda_pct = path_change_rate(alphas);
    m.unreachable_slots = m.num_slots - reachable;

    if (reachable == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        m.mean_latency_without_ms = nan;
        m.mean_latency_with_ms.assign(m.setup_delays_ms.size(), nan);
        m.beta_pct.assign(m.setup_delays_ms.size(), nan);
        m.eta_s_max = TolerableDelay::nonexistent();
        m.mean_hops = nan;
        m.min_hops = 0;
        return m;
    }

    m.mean_latency_without_ms = sum / reachable;
    m.mean_hops = hop_sum / reachable;
    for (double eta : m.setup_delays_ms) {
        const double with = mean_latency_with_setup(m.mean_latency_without_ms, m.lambda_pct, eta);
        m.mean_latency_with_ms.push_back(with);
        m.beta_pct.push_back(impact(with, m.mean_latency_without_ms));
    }
    m.eta_s_max = max_tolerable_setup_delay(m.oftn_latency_ms, m.mean_latency_without_ms, m.lambda_pct);
    return m;
}

namespace {

std::optional<double> ratio(double num, double den)
{
    if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) {
        return std::nullopt;
    }
    return num / den;
}

} // namespace

ReductionRatioReport reduction_ratio_report(const ScenarioMetrics& a, const ScenarioMetrics& b, double eta_s_ms)
{
    ReductionRatioReport r;
    r.eta_s_ms = eta_s_ms;
    r.lambda_ratio = ratio(a.lambda_pct, b.lambda_pct);
    r.without_ratio = ratio(a.mean_latency_without_ms, b.mean_latency_without_ms);
    r.with_ratio = ratio(mean_latency_with_setup(a.mean_latency_without_ms, a.lambda_pct, eta_s_ms),
                         mean_latency_with_setup(b.mean_latency_without_ms, b.lambda_pct, eta_s_ms));
    if (r.lambda_ratio && r.without_ratio) {
        r.lambda_exceeds_without = *r.lambda_ratio > *r.without_ratio;
    }
    if (r.with_ratio && r.without_ratio) {
        r.with_exceeds_without = *r.with_ratio > *r.without_ratio;
    }
    return r;
}

} // namespace lisl

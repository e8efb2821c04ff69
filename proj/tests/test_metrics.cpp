#include <cmath>
#include <random>

#include "doctest.h"
#include "lisl/errors.hpp"
#include "lisl/metrics.hpp"

using namespace lisl;

namespace {

RoutePath sat_path(int satellites, double total_m)
{
    RoutePath p;
    p.nodes.push_back(station_node("A"));
    for (int i = 0; i < satellites; ++i) {
        p.nodes.push_back(satellite_node("S" + std::to_string(i)));
    }
    p.nodes.push_back(station_node("B"));
    const double each = total_m / static_cast<double>(p.nodes.size() - 1);
    p.edge_lengths.assign(p.nodes.size() - 1, each);
    p.total_length = total_m;
    return p;
}

ScenarioMetrics metrics(double lambda, double without)
{
    ScenarioMetrics m;
    m.lambda_pct = lambda;
    m.mean_latency_without_ms = without;
    return m;
}

} // namespace

TEST_CASE("oftn_latency: fiber baseline")
{
    CHECK(std::abs(oftn_latency(5593000.0) - 27.38) <= 0.01);
    CHECK(std::abs(oftn_latency(8079000.0) - 39.55) <= 0.01);
    CHECK(std::abs(oftn_latency(13164000.0) - 64.44) <= 0.01);
    CHECK(oftn_latency(0.0) == 0.0);
}

TEST_CASE("max_tolerable_setup_delay: worked cases")
{
    const auto a = max_tolerable_setup_delay(39.55, 37.9, 37.5);
    REQUIRE(a.kind == TolerableDelay::Kind::Finite);
    CHECK(std::abs(a.value_ms - 4.40) <= 0.01);

    const auto b = max_tolerable_setup_delay(39.55, 36.9, 12.3);
    REQUIRE(b.kind == TolerableDelay::Kind::Finite);
    CHECK(std::abs(b.value_ms - 21.54) <= 0.01);

    const auto c = max_tolerable_setup_delay(64.44, 56.7, 9.6);
    REQUIRE(c.kind == TolerableDelay::Kind::Finite);
    CHECK(std::abs(c.value_ms - 80.63) <= 0.01);

    CHECK(max_tolerable_setup_delay(64.44, 66.5, 33.9).kind == TolerableDelay::Kind::Nonexistent);
    CHECK(max_tolerable_setup_delay(64.44, 50.0, 0.0).kind == TolerableDelay::Kind::Unbounded);
    CHECK(max_tolerable_setup_delay(64.44, 70.0, 0.0).kind == TolerableDelay::Kind::Nonexistent);
}

TEST_CASE("latency_without_setup")
{
    LatencyParams params;
    CHECK(latency_without_setup(sat_path(0, 299792458.0), params) == doctest::Approx(1000.0));

    const double len = 9123456.0;
    CHECK(latency_without_setup(sat_path(7, len), params) == doctest::Approx(len / 299792458.0 * 1000.0 + 7.0));

    params.node_delay_mode = NodeDelayMode::PerPath;
    CHECK(latency_without_setup(sat_path(7, len), params) == doctest::Approx(len / 299792458.0 * 1000.0 + 1.0));
}

TEST_CASE("path_change_rate")
{
    CHECK(path_change_rate(std::vector<int>(3600, 0)) == 0.0);
    std::vector<int> a(3600, 0);
    std::fill(a.begin(), a.begin() + 1350, 1);
    CHECK(path_change_rate(a) == doctest::Approx(37.5));
    CHECK(path_change_rate(std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1}) == doctest::Approx(50.0));
    CHECK_THROWS_AS(path_change_rate(std::vector<int>{}), DomainError);
}

TEST_CASE("mean_latency_with_setup")
{
    CHECK(mean_latency_with_setup(37.9, 37.5, 100.0) == doctest::Approx(75.4));
    CHECK(mean_latency_with_setup(42.0, 0.0, 1000.0) == 42.0);
    CHECK(mean_latency_with_setup(38.08, 100.0, 100.0) == doctest::Approx(138.08));
}

TEST_CASE("impact")
{
    CHECK(impact(50.0, 50.0) == 0.0);
    CHECK(impact(92.1, 24.6) == doctest::Approx(73.29).epsilon(1e-4));
    CHECK_THROWS_AS(impact(10.0, 20.0), DomainError);
    CHECK_THROWS_AS(impact(10.0, 0.0), DomainError);
}

TEST_CASE("hop_statistics")
{
    const std::vector<RoutePath> one{sat_path(7, 1.0)};
    CHECK(hop_statistics(std::span<const RoutePath>(one)).mean == 7.0);
    const std::vector<std::optional<RoutePath>> two{sat_path(6, 1.0), std::nullopt, sat_path(8, 1.0)};
    const auto h = hop_statistics(std::span<const std::optional<RoutePath>>(two));
    CHECK(h.mean == 7.0);
    CHECK(h.min == 6);
    CHECK(h.max == 8);
    const std::vector<std::optional<RoutePath>> none(3);
    CHECK_THROWS_AS(hop_statistics(std::span<const std::optional<RoutePath>>(none)), DomainError);
}

TEST_CASE("reduction_ratio_report")
{
    SUBCASE("identical metrics")
    {
        const auto m = metrics(20.0, 30.0);
        const auto r = reduction_ratio_report(m, m, 100.0);
        CHECK(*r.lambda_ratio == 1.0);
        CHECK(*r.without_ratio == 1.0);
        CHECK(*r.with_ratio == 1.0);
        CHECK_FALSE(*r.lambda_exceeds_without);
        CHECK_FALSE(*r.with_exceeds_without);
    }
    SUBCASE("ranges compared for one pair")
    {
        // lambdas chosen so that the with-delay means at 1 s are 123.9 and 92.1 ms.
        const auto a = metrics(9.8, 25.9);
        const auto b = metrics(6.75, 24.6);
        const auto r = reduction_ratio_report(a, b, 1000.0);
        CHECK(*r.without_ratio == doctest::Approx(1.053).epsilon(5e-4));
        CHECK(*r.with_ratio == doctest::Approx(1.345).epsilon(5e-4));
        CHECK(*r.with_exceeds_without);
    }
    SUBCASE("pairs compared at one range")
    {
        const auto r = reduction_ratio_report(metrics(12.3, 36.9), metrics(17.5, 64.4), 100.0);
        CHECK(*r.lambda_ratio == doctest::Approx(0.703).epsilon(5e-4));
        CHECK(*r.without_ratio == doctest::Approx(0.573).epsilon(5e-4));
        CHECK(*r.lambda_exceeds_without);
    }
    SUBCASE("zero denominator is undefined")
    {
        const auto r = reduction_ratio_report(metrics(10.0, 30.0), metrics(0.0, 30.0), 100.0);
        CHECK_FALSE(r.lambda_ratio.has_value());
        CHECK_FALSE(r.lambda_exceeds_without.has_value());
        CHECK(r.without_ratio.has_value());
    }
}

TEST_CASE("closed-form properties on random inputs")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lat(5.0, 200.0), lam(0.0, 100.0), eta(0.0, 2000.0), oftn(5.0, 200.0);
    for (int i = 0; i < 2000; ++i) {
        const double wo = lat(rng), l = lam(rng), e1 = eta(rng), e2 = eta(rng), o = oftn(rng);
        const double w1 = mean_latency_with_setup(wo, l, e1);
        const double w2 = mean_latency_with_setup(wo, l, e2);
        CHECK(w1 >= wo);
        // beta grows with eta_s
        if (e1 < e2) {
            CHECK(impact(w1, wo) <= impact(w2, wo));
        }
        // linearity of the fiber baseline
        CHECK(oftn_latency(1000.0 * o) * 2.0 == doctest::Approx(oftn_latency(2000.0 * o)));

        const auto t = max_tolerable_setup_delay(o, wo, l);
        if (t.kind == TolerableDelay::Kind::Finite) {
            CHECK(std::abs(mean_latency_with_setup(wo, l, t.value_ms) - o) <= 1e-9 * o);
        } else if (t.kind == TolerableDelay::Kind::Nonexistent) {
            CHECK(wo > o);
        }
    }
}

TEST_CASE("derive_slot_results and aggregate_metrics")
{
    LatencyParams params;
    params.setup_delays_ms = {100.0};
    const auto p1 = sat_path(2, 3e6);
    auto p2 = sat_path(3, 3.3e6);
    const std::vector<std::optional<RoutePath>> paths{p1, p1, p2, p2, std::nullopt, p2};
    const auto slots = derive_slot_results(paths, params);
    REQUIRE(slots.size() == 6);
    std::vector<int> alphas;
    for (const auto& s : slots) {
        alphas.push_back(s.alpha);
    }
    CHECK(alphas == std::vector<int>{0, 0, 1, 0, 1, 1});
    CHECK(slots[0].slot_index == 1);
    CHECK_FALSE(slots[4].latency_without_ms.has_value());
    CHECK(slots[2].latency_with_ms[0] == *slots[2].latency_without_ms + 100.0);
    CHECK(slots[1].latency_with_ms[0] == *slots[1].latency_without_ms);

    const auto m = aggregate_metrics(slots, params, 5593000.0);
    CHECK(m.num_slots == 6);
    CHECK(m.unreachable_slots == 1);
    CHECK(m.lambda_pct == doctest::Approx(50.0));
    const double l1 = *slots[0].latency_without_ms, l2 = *slots[2].latency_without_ms;
    CHECK(m.mean_latency_without_ms == doctest::Approx((2 * l1 + 3 * l2) / 5));
    CHECK(m.mean_latency_with_ms[0] == mean_latency_with_setup(m.mean_latency_without_ms, 50.0, 100.0));
    CHECK(m.mean_hops == doctest::Approx(13.0 / 5));
    CHECK(m.min_hops == 2);
    CHECK(m.max_hops == 3);
    CHECK(m.oftn_latency_ms == oftn_latency(5593000.0));
}

TEST_CASE("node delay mode names")
{
    CHECK(parse_node_delay_mode("per-node") == NodeDelayMode::PerNode);
    CHECK(parse_node_delay_mode("per-path") == NodeDelayMode::PerPath);
    CHECK(node_delay_mode_name(NodeDelayMode::PerPath) == "per-path");
    CHECK_THROWS_AS(parse_node_delay_mode("hourly"), ConfigError);
}

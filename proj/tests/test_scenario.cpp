#include <sstream>

#include "doctest.h"
#include "lisl/config.hpp"
#include "lisl/errors.hpp"
#include "lisl/output.hpp"
#include "lisl/scenario.hpp"
#include "test_support.hpp"

using namespace lisl;

namespace {

const char* const kHeader = "slot,node_a,kind_a,node_b,kind_b,length_m\n";

ScenarioConfig two_station_config(const std::filesystem::path& ingest, int slots)
{
    ScenarioConfig cfg;
    cfg.stations = {{"A", 0.0, 0.0, 0.0, 25.0}, {"B", 0.0, 40.0, 0.0, 25.0}};
    cfg.pairs = {{"A", "B"}};
    cfg.lisl_ranges_km = {1500.0};
    cfg.num_slots = slots;
    cfg.ingest_path = ingest;
    return cfg;
}

// Independent aggregate: plain loops over the slot stream.
void check_against_slots(const CellResult& cell, const ScenarioConfig& cfg)
{
    const auto& m = cell.metrics;
    int changes = 0, reachable = 0;
    double sum = 0.0;
    for (const auto& s : cell.slots) {
        changes += s.alpha;
        if (s.path) {
            ++reachable;
            sum += *s.latency_without_ms;
        }
    }
    CHECK(m.num_slots == static_cast<int>(cell.slots.size()));
    CHECK(m.unreachable_slots == m.num_slots - reachable);
    CHECK(m.lambda_pct == doctest::Approx(100.0 * changes / m.num_slots));
    CHECK(m.mean_latency_without_ms == doctest::Approx(sum / reachable));
    CHECK(recompute_metrics(cell, cfg) == m);
}

} // namespace

TEST_CASE("run_scenario: one slot over a two-satellite topology")
{
    test::TempDir dir("one-slot");
    const auto csv = dir.write("snap.csv", std::string(kHeader) + "1,A,GS,S1,SAT,500000\n"
                                                                   "1,S1,SAT,S2,SAT,1000000\n"
                                                                   "1,S2,SAT,B,GS,500000\n");
    const auto result = run_scenario(two_station_config(csv, 1));
    REQUIRE(result.cells.size() == 1);
    const auto& m = result.cells[0].metrics;
    CHECK(m.lambda_pct == 0.0);
    CHECK(m.mean_latency_without_ms == doctest::Approx(2e6 / 299792458.0 * 1000.0 + 2.0));
    CHECK(m.eta_s_max.kind == TolerableDelay::Kind::Unbounded);
    CHECK(m.mean_hops == 2.0);
    CHECK(result.warnings.empty());
}

TEST_CASE("run_scenario: ingest errors and unreachable warnings")
{
    test::TempDir dir("ingest");
    std::string rows = kHeader;
    for (int slot = 1; slot <= 10; ++slot) {
        if (slot == 7) {
            continue;
        }
        rows += std::to_string(slot) + ",A,GS,S1,SAT,500000\n" + std::to_string(slot) + ",S1,SAT,B,GS,500000\n";
    }
    const auto gap = dir.write("gap.csv", rows);
    try {
        run_scenario(two_station_config(gap, 10));
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("slot 7") != std::string::npos);
    }

    const auto shorter = dir.write("short.csv", std::string(kHeader) + "1,A,GS,S1,SAT,5\n2,A,GS,S1,SAT,5\n");
    CHECK_THROWS_AS(run_scenario(two_station_config(shorter, 5)), InputError);

    // B never connects: every slot unreachable.
    const auto lonely = dir.write("lonely.csv", std::string(kHeader) + "1,A,GS,S1,SAT,5\n2,A,GS,S1,SAT,5\n");
    const auto r = run_scenario(two_station_config(lonely, 2));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("more than half") != std::string::npos);
    CHECK(r.cells[0].metrics.unreachable_slots == 2);
    CHECK_THROWS_AS(run_scenario(two_station_config(lonely, 2), {1, true}), InputError);
}

TEST_CASE("run_scenario: metrics equal an independent recomputation from slots")
{
    const auto cfg = test::small_config(30);
    const auto result = run_scenario(cfg, {1, false});
    REQUIRE(result.cells.size() == 4);
    CHECK(result.cells[0].pair == cfg.pairs[0]);
    CHECK(result.cells[1].range_km == 5016.0);
    for (const auto& cell : result.cells) {
        check_against_slots(cell, cfg);
        for (std::size_t i = 0; i < cell.slots.size(); ++i) {
            CHECK(cell.slots[i].slot_index == static_cast<int>(i) + 1);
        }
    }
    CHECK(result.provenance.config_hash == config_hash(cfg));
    CHECK(result.provenance.code_version == code_version());
}

TEST_CASE("run_scenario: results do not depend on the worker count")
{
    const auto cfg = test::small_config(12);
    const auto one = run_scenario(cfg, {1, false});
    const auto many = run_scenario(cfg, {5, false});
    std::ostringstream a, b, c, d;
    report::write_slots_csv(a, one);
    report::write_slots_csv(b, many);
    report::write_metrics_csv(c, one);
    report::write_metrics_csv(d, many);
    CHECK(a.str() == b.str());
    CHECK(c.str() == d.str());
    for (std::size_t i = 0; i < one.cells.size(); ++i) {
        CHECK(one.cells[i].metrics == many.cells[i].metrics);
    }
}

TEST_CASE("sweep: one result per cell, each equal to the joint run")
{
    const auto cfg = test::small_config(8);
    const auto joint = run_scenario(cfg);
    const auto parts = sweep(cfg, {3, false});
    REQUIRE(parts.size() == 4);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        REQUIRE(parts[i].cells.size() == 1);
        CHECK(parts[i].cells[0].metrics == joint.cells[i].metrics);
        CHECK(parts[i].config.pairs.size() == 1);
    }

    auto single = cfg;
    single.pairs = {cfg.pairs[1]};
    single.lisl_ranges_km = {3000.0};
    const auto one = sweep(single);
    const auto direct = run_scenario(single);
    REQUIRE(one.size() == 1);
    CHECK(one[0].cells[0].metrics == direct.cells[0].metrics);
    std::ostringstream a, b;
    report::write_slots_csv(a, one[0]);
    report::write_slots_csv(b, direct);
    CHECK(a.str() == b.str());
}

TEST_CASE("generate_snapshots then ingest reproduces the internal run")
{
    test::TempDir dir("roundtrip");
    auto cfg = test::small_config(6);
    cfg.pairs = {cfg.pairs[0]};
    cfg.lisl_ranges_km = {3000.0};
    const auto internal = run_scenario(cfg);

    std::ostringstream buf;
    export_snapshots(buf, generate_snapshots(cfg, 3000.0));
    cfg.ingest_path = dir.write("snaps.csv", buf.str());
    const auto ingested = run_scenario(cfg);
    CHECK(ingested.cells[0].metrics == internal.cells[0].metrics);
}

TEST_CASE("config: parse, validate, canonical form")
{
    const auto def = default_config();
    CHECK_NOTHROW(def.validate());
    CHECK(def.constellation.total() == 1584);
    CHECK(def.pairs.size() == 3);
    CHECK(def.lisl_ranges_km == std::vector<double>{1500, 1700, 2500, 5016});

    const auto again = config_from_json(config_to_json(def));
    CHECK(config_hash(again) == config_hash(def));

    const auto parsed = parse_config(R"({
        // comments are fine
        "stations": [{"name": "X", "latitude_deg": 1, "longitude_deg": 2},
                     {"name": "Y", "latitude_deg": 3, "longitude_deg": 4}],
        "pairs": [{"source": "X", "destination": "Y"}],
        "lisl_ranges_km": [1000],
        "num_slots": 5 /* short */
    })");
    CHECK(parsed.pairs[0] == StationPair{"X", "Y"});
    CHECK(parsed.num_slots == 5);
    CHECK(parsed.stations[0].min_elevation_deg == 25.0);

    auto error_of = [](const std::string& text) -> std::string {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(error_of(R"({"bogus": 1})").find("bogus") != std::string::npos);
    CHECK(error_of(R"({"num_slots": "many"})").find("num_slots") != std::string::npos);
    CHECK(error_of("{").size() > 0);
    CHECK(error_of(R"({"stations": [{"name": "X", "latitude_deg": 1, "longitude_deg": 2}],
                        "pairs": [["X", "Nowhere"]], "lisl_ranges_km": [1000]})")
              .find("Nowhere") != std::string::npos);
}

TEST_CASE("shipped default scenario file matches default_config")
{
    const auto cfg = load_config(std::filesystem::path(LISL_SOURCE_DIR) / "config" / "default_scenario.jsonc");
    CHECK(config_hash(cfg) == config_hash(default_config()));
}

#include "lisl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lisl/digest.hpp"
#include "lisl/errors.hpp"

namespace lisl {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    try {
        out = it->template get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type (" + std::string(it->type_name()) + ")");
    }
}

const json& object_at(const json& doc, const char* key, const std::string& where)
{
    const json& v = doc.at(key);
    if (!v.is_object()) {
        throw ConfigError(where + "." + key + ": expected an object");
    }
    return v;
}

} // namespace

ScenarioConfig config_from_json(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    reject_unknown(doc,
                   {"constellation", "stations", "pairs", "lisl_ranges_km", "setup_delays_ms", "num_slots",
                    "slot_duration_s", "latency", "topology_source"},
                   "config");

    ScenarioConfig cfg;
    cfg.stations.clear();

    if (doc.contains("constellation")) {
        const json& c = object_at(doc, "constellation", "config");
        reject_unknown(c,
                       {"num_planes", "sats_per_plane", "inclination_deg", "altitude_km", "phasing_factor",
                        "raan_spread_deg", "epoch_s"},
                       "constellation");
        auto& k = cfg.constellation;
        read(c, "num_planes", k.num_planes, "constellation");
        read(c, "sats_per_plane", k.sats_per_plane, "constellation");
        read(c, "inclination_deg", k.inclination_deg, "constellation");
        read(c, "altitude_km", k.altitude_km, "constellation");
        read(c, "phasing_factor", k.phasing_factor, "constellation");
        read(c, "raan_spread_deg", k.raan_spread_deg, "constellation");
        read(c, "epoch_s", k.epoch_s, "constellation");
    }

    if (doc.contains("stations")) {
        const json& list = doc.at("stations");
        if (!list.is_array()) {
            throw ConfigError("config.stations: expected an array");
        }
        for (const json& s : list) {
            if (!s.is_object()) {
                throw ConfigError("config.stations: each station must be an object");
            }
            reject_unknown(s, {"name", "latitude_deg", "longitude_deg", "altitude_m", "min_elevation_deg"},
                           "station");
            GroundStation gs;
            read(s, "name", gs.name, "station");
            const std::string where = "station '" + gs.name + "'";
            if (!s.contains("latitude_deg") || !s.contains("longitude_deg")) {
                throw ConfigError(where + ": latitude_deg and longitude_deg are required");
            }
            read(s, "latitude_deg", gs.latitude_deg, where);
            read(s, "longitude_deg", gs.longitude_deg, where);
            read(s, "altitude_m", gs.altitude_m, where);
            read(s, "min_elevation_deg", gs.min_elevation_deg, where);
            cfg.stations.push_back(std::move(gs));
        }
    }

    if (doc.contains("pairs")) {
        const json& list = doc.at("pairs");
        if (!list.is_array()) {
            throw ConfigError("config.pairs: expected an array");
        }
        for (const json& p : list) {
            if (p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_string()) {
                cfg.pairs.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
            } else if (p.is_object()) {
                reject_unknown(p, {"source", "destination"}, "pair");
                StationPair sp;
                read(p, "source", sp.source, "pair");
                read(p, "destination", sp.destination, "pair");
                cfg.pairs.push_back(std::move(sp));
            } else {
                throw ConfigError("config.pairs: each pair must be [source, destination]");
            }
        }
    }

    read(doc, "lisl_ranges_km", cfg.lisl_ranges_km, "config");
    read(doc, "setup_delays_ms", cfg.latency.setup_delays_ms, "config");
    read(doc, "num_slots", cfg.num_slots, "config");
    read(doc, "slot_duration_s", cfg.slot_duration_s, "config");

    if (doc.contains("latency")) {
        const json& l = object_at(doc, "latency", "config");
        reject_unknown(l, {"node_delay_ms", "node_delay_mode", "light_speed_m_per_s"}, "latency");
        read(l, "node_delay_ms", cfg.latency.node_delay_ms, "latency");
        read(l, "light_speed_m_per_s", cfg.latency.light_speed_m_per_s, "latency");
        std::string mode(node_delay_mode_name(cfg.latency.node_delay_mode));
        read(l, "node_delay_mode", mode, "latency");
        cfg.latency.node_delay_mode = parse_node_delay_mode(mode);
    }

    if (doc.contains("topology_source")) {
        const json& t = doc.at("topology_source");
        if (t.is_string() && t.get<std::string>() == "internal") {
            cfg.ingest_path.reset();
        } else if (t.is_object() && t.size() == 1 && t.contains("ingest") && t.at("ingest").is_string()) {
            cfg.ingest_path = t.at("ingest").get<std::string>();
        } else {
            throw ConfigError("config.topology_source: expected \"internal\" or {\"ingest\": \"<path>\"}");
        }
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config_from_json(doc);
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        ScenarioConfig cfg = parse_config(buf.str());
        if (cfg.ingest_path && cfg.ingest_path->is_relative()) {
            cfg.ingest_path = path.parent_path() / *cfg.ingest_path;
        }
        return cfg;
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

json config_to_json(const ScenarioConfig& cfg)
{
    json doc;
    const auto& k = cfg.constellation;
    doc["constellation"] = {{"num_planes", k.num_planes},         {"sats_per_plane", k.sats_per_plane},
                            {"inclination_deg", k.inclination_deg}, {"altitude_km", k.altitude_km},
                            {"phasing_factor", k.phasing_factor},   {"raan_spread_deg", k.raan_spread_deg},
                            {"epoch_s", k.epoch_s}};
    doc["stations"] = json::array();
    for (const auto& s : cfg.stations) {
        doc["stations"].push_back({{"name", s.name},
                                   {"latitude_deg", s.latitude_deg},
                                   {"longitude_deg", s.longitude_deg},
                                   {"altitude_m", s.altitude_m},
                                   {"min_elevation_deg", s.min_elevation_deg}});
    }
    doc["pairs"] = json::array();
    for (const auto& p : cfg.pairs) {
        doc["pairs"].push_back({p.source, p.destination});
    }
    doc["lisl_ranges_km"] = cfg.lisl_ranges_km;
    doc["setup_delays_ms"] = cfg.latency.setup_delays_ms;
    doc["num_slots"] = cfg.num_slots;
    doc["slot_duration_s"] = cfg.slot_duration_s;
    doc["latency"] = {{"node_delay_ms", cfg.latency.node_delay_ms},
                      {"node_delay_mode", std::string(node_delay_mode_name(cfg.latency.node_delay_mode))},
                      {"light_speed_m_per_s", cfg.latency.light_speed_m_per_s}};
    if (cfg.ingest_path) {
        doc["topology_source"] = {{"ingest", cfg.ingest_path->string()}};
    } else {
        doc["topology_source"] = "internal";
    }
    return doc;
}

std::string config_hash(const ScenarioConfig& config) { return sha256_hex(config_to_json(config).dump()); }

ScenarioConfig default_config()
{
    ScenarioConfig cfg;
    cfg.constellation = ConstellationSpec{};
    cfg.stations = {
        {"New York", 40.7128, -74.0060, 0.0, 25.0},
        {"London", 51.5074, -0.1278, 0.0, 25.0},
        {"Istanbul", 41.0082, 28.9784, 0.0, 25.0},
        {"Hanoi", 21.0285, 105.8542, 0.0, 25.0},
    };
    cfg.pairs = {{"New York", "London"}, {"New York", "Istanbul"}, {"New York", "Hanoi"}};
    cfg.lisl_ranges_km = {1500.0, 1700.0, 2500.0, 5016.0};
    cfg.latency.setup_delays_ms = {1.0, 10.0, 100.0, 1000.0};
    cfg.num_slots = 3600;
    cfg.slot_duration_s = 1.0;
    return cfg;
}

} // namespace lisl

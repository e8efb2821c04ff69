#pragma once

// Per-slot LISL/ground-link graphs and the snapshot CSV exchange format.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lisl/orbital.hpp"

namespace lisl {

enum class NodeKind : std::uint8_t { Satellite, GroundStation };

std::string_view kind_code(NodeKind kind); // "SAT" / "GS"

struct NodeRef {
    NodeKind kind = NodeKind::Satellite;
    std::string id;

    // Ordered by id first; ids are unique within a snapshot so kind only
    // breaks ties between malformed inputs.
    friend std::strong_ordering operator<=>(const NodeRef& a, const NodeRef& b)
    {
        if (auto c = a.id <=> b.id; c != 0) {
            return c;
        }
        return a.kind <=> b.kind;
    }
    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

inline NodeRef satellite_node(std::string id) { return {NodeKind::Satellite, std::move(id)}; }
inline NodeRef station_node(std::string id) { return {NodeKind::GroundStation, std::move(id)}; }

// Undirected edge between node indices a < b.
struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double length_m = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct TopologySnapshot {
    int slot_index = 1;
    std::vector<NodeRef> nodes; // sorted ascending, unique ids
    std::vector<Edge> edges;    // sorted by (a, b)

    std::optional<std::uint32_t> find(std::string_view id) const;
    // Throws LookupError when the node is not present.
    std::uint32_t index_of(const NodeRef& node) const;
    std::optional<double> edge_length(const NodeRef& u, const NodeRef& v) const;

    // Structural invariants: sorted unique nodes, in-bounds endpoints, no
    // self-loops or duplicate pairs, positive finite lengths. Throws InputError.
    void validate() const;

    friend bool operator==(const TopologySnapshot&, const TopologySnapshot&) = default;
};

// Satellite ECEF positions for one slot in structure-of-arrays form, ordered by id.
struct SatelliteField {
    std::vector<NodeRef> ids;
    std::vector<double> x, y, z; // km

    static SatelliteField from_elements(std::span<const SatelliteElement> elems, double t);
    std::size_t size() const { return ids.size(); }
};

// Builds one snapshot per entry of `ranges_km` from a single pairwise-distance pass.
// Satellite pairs connect iff their distance is <= the range; a station connects to
// every satellite at or above its elevation mask.
std::vector<TopologySnapshot> build_snapshots(const SatelliteField& sats, std::span<const GroundStation> stations,
                                              std::span<const double> ranges_km, int slot_index);

TopologySnapshot build_snapshot(const std::map<NodeRef, Position3D>& positions,
                                std::span<const GroundStation> stations, double lisl_range_km, int slot_index);

// Snapshot CSV: header `slot,node_a,kind_a,node_b,kind_b,length_m`. A row with the
// node_b/kind_b/length_m fields empty declares an isolated node; a row with only the
// slot field declares an empty slot.
void export_snapshots(std::ostream& out, std::span<const TopologySnapshot> snapshots);
std::vector<TopologySnapshot> ingest_snapshots(std::istream& in);

} // namespace lisl

#pragma once

// Shortest GS-to-GS paths over a topology snapshot and path-change detection.

#include <cstdint>
#include <optional>
#include <vector>

#include "lisl/topology.hpp"

namespace lisl {

struct RoutePath {
    std::vector<NodeRef> nodes;       // first and last are the endpoints
    std::vector<double> edge_lengths; // meters, nodes.size() - 1 entries
    double total_length = 0.0;        // meters

    // Number of satellites on the path.
    int hop_count() const;

    // Node-sequence equality; edge lengths are ignored.
    bool same_route(const RoutePath& other) const { return nodes == other.nodes; }
};

// Compressed adjacency of a snapshot. Ground stations may terminate a path but
// never relay traffic between two other nodes.
class RoutingGraph {
public:
    explicit RoutingGraph(const TopologySnapshot& snapshot);

    const TopologySnapshot& snapshot() const { return *snapshot_; }
    std::size_t size() const { return offsets_.size() - 1; }

    struct Arc {
        std::uint32_t target;
        double length_m;
    };
    std::span<const Arc> neighbors(std::uint32_t v) const
    {
        return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
    }
    bool can_relay(std::uint32_t v) const { return relay_[v] != 0; }

private:
    const TopologySnapshot* snapshot_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Arc> arcs_; // per node, targets ascending
    std::vector<std::uint8_t> relay_;
};

// Single-source Dijkstra distances plus deterministic path extraction. Among
// equal-length shortest paths, the lexicographically smallest node-id sequence
// is returned.
class ShortestPathTree {
public:
    ShortestPathTree(const RoutingGraph& graph, std::uint32_t source);

    double distance(std::uint32_t v) const { return dist_[v]; }
    bool reachable(std::uint32_t v) const;
    std::optional<RoutePath> path_to(std::uint32_t target) const;

private:
    const RoutingGraph* graph_;
    std::uint32_t source_;
    std::vector<double> dist_;
};

// Throws LookupError for nodes not in the snapshot and DomainError when src == dst.
std::optional<RoutePath> shortest_path(const TopologySnapshot& snapshot, const NodeRef& src, const NodeRef& dst);

// Marker for the first slot of a run, which has no predecessor.
struct NoPreviousSlot {};

// Setup-delay indicator: 0 iff both paths exist and share the node sequence.
int path_changed(NoPreviousSlot, const std::optional<RoutePath>& cur);
int path_changed(const std::optional<RoutePath>& prev, const std::optional<RoutePath>& cur);

struct SlotResult {
    int slot_index = 1;
    std::optional<RoutePath> path;
    int alpha = 0;
    std::optional<double> latency_without_ms;   // absent when the path is absent
    std::vector<double> latency_with_ms;        // aligned with LatencyParams::setup_delays_ms
};

} // namespace lisl

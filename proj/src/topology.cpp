#include "lisl/topology.hpp"

#include <algorithm>
#include <cmath>

#include "lisl/errors.hpp"
#include "lisl/simd/kernels.hpp"

namespace lisl {

std::string_view kind_code(NodeKind kind) { return kind == NodeKind::Satellite ? "SAT" : "GS"; }

std::optional<std::uint32_t> TopologySnapshot::find(std::string_view id) const
{
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const NodeRef& n, std::string_view key) { return n.id < key; });
    if (it == nodes.end() || it->id != id) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - nodes.begin());
}

std::uint32_t TopologySnapshot::index_of(const NodeRef& node) const
{
    auto idx = find(node.id);
    if (!idx || nodes[*idx].kind != node.kind) {
        throw LookupError("node '" + node.id + "' (" + std::string(kind_code(node.kind)) +
                          ") not present in snapshot for slot " + std::to_string(slot_index));
    }
    return *idx;
}

std::optional<double> TopologySnapshot::edge_length(const NodeRef& u, const NodeRef& v) const
{
    auto iu = find(u.id);
    auto iv = find(v.id);
    if (!iu || !iv || *iu == *iv) {
        return std::nullopt;
    }
    const Edge key{std::min(*iu, *iv), std::max(*iu, *iv), 0.0};
    auto it = std::lower_bound(edges.begin(), edges.end(), key, [](const Edge& e, const Edge& k) {
        return e.a != k.a ? e.a < k.a : e.b < k.b;
    });
    if (it == edges.end() || it->a != key.a || it->b != key.b) {
        return std::nullopt;
    }
    return it->length_m;
}

void TopologySnapshot::validate() const
{
    const std::string where = "slot " + std::to_string(slot_index) + ": ";
    if (slot_index < 1) {
        throw InputError(where + "slot index must be >= 1");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id.empty()) {
            throw InputError(where + "empty node id");
        }
        if (i > 0 && !(nodes[i - 1].id < nodes[i].id)) {
            throw InputError(where + "node ids not unique and ascending at '" + nodes[i].id + "'");
        }
    }
    const auto n = nodes.size();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = edges[k];
        if (e.a >= n || e.b >= n) {
            throw InputError(where + "edge endpoint out of range");
        }
        if (e.a == e.b) {
            throw InputError(where + "self-loop at '" + nodes[e.a].id + "'");
        }
        if (e.a > e.b) {
            throw InputError(where + "edge endpoints not normalized");
        }
        if (!(e.length_m > 0.0) || !std::isfinite(e.length_m)) {
            throw InputError(where + "non-positive edge length between '" + nodes[e.a].id + "' and '" +
                             nodes[e.b].id + "'");
        }
        if (k > 0) {
            const Edge& p = edges[k - 1];
            if (p.a > e.a || (p.a == e.a && p.b >= e.b)) {
                throw InputError(where + "edges not sorted or duplicated near '" + nodes[e.a].id + "'");
            }
        }
    }
}

SatelliteField SatelliteField::from_elements(std::span<const SatelliteElement> elems, double t)
{
    std::vector<std::size_t> order(elems.size());
    std::vector<std::string> ids(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        order[i] = i;
        ids[i] = elems[i].id();
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    SatelliteField f;
    f.ids.reserve(elems.size());
    f.x.reserve(elems.size());
    f.y.reserve(elems.size());
    f.z.reserve(elems.size());
    for (std::size_t i : order) {
        const Position3D p = eci_to_ecef(propagate(elems[i], t), t);
        f.ids.push_back(satellite_node(std::move(ids[i])));
        f.x.push_back(p.x);
        f.y.push_back(p.y);
        f.z.push_back(p.z);
    }
    return f;
}

namespace {

struct PendingEdge {
    std::uint32_t a;
    std::uint32_t b;
    double d2;
};

// Counting sort by `a`, then by `b` inside each bucket.
std::vector<Edge> canonical_edges(std::vector<PendingEdge>& pending, std::size_t num_nodes)
{
    std::vector<std::uint32_t> start(num_nodes + 1, 0);
    for (const auto& e : pending) {
        ++start[e.a + 1];
    }
    for (std::size_t i = 0; i < num_nodes; ++i) {
        start[i + 1] += start[i];
    }
    std::vector<Edge> out(pending.size());
    std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
    for (const auto& e : pending) {
        out[cursor[e.a]++] = Edge{e.a, e.b, std::sqrt(e.d2) * 1000.0};
    }
    auto by_b = [](const Edge& l, const Edge& r) { return l.b < r.b; };
    for (std::size_t i = 0; i < num_nodes; ++i) {
        auto first = out.begin() + start[i];
        auto last = out.begin() + start[i + 1];
        if (!std::is_sorted(first, last, by_b)) {
            std::sort(first, last, by_b);
        }
    }
    return out;
}

} // namespace

std::vector<TopologySnapshot> build_snapshots(const SatelliteField& sats, std::span<const GroundStation> stations,
                                              std::span<const double> ranges_km, int slot_index)
{
    if (sats.size() == 0 && stations.empty()) {
        throw DomainError("build_snapshots: no nodes");
    }
    double max_range = 0.0;
    for (double r : ranges_km) {
        if (!(r > 0.0)) {
            throw DomainError("build_snapshots: LISL range must be > 0");
        }
        max_range = std::max(max_range, r);
    }

    // Merge satellite and station ids into one sorted node list.
    std::vector<NodeRef> nodes;
    nodes.reserve(sats.size() + stations.size());
    nodes.insert(nodes.end(), sats.ids.begin(), sats.ids.end());
    for (const auto& gs : stations) {
        nodes.push_back(station_node(gs.name));
    }
    std::vector<std::uint32_t> order(nodes.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return nodes[a] < nodes[b]; });
    std::vector<std::uint32_t> node_of(nodes.size());
    std::vector<NodeRef> sorted_nodes(nodes.size());
    for (std::uint32_t k = 0; k < order.size(); ++k) {
        node_of[order[k]] = k;
        sorted_nodes[k] = nodes[order[k]];
    }
    for (std::size_t k = 1; k < sorted_nodes.size(); ++k) {
        if (sorted_nodes[k - 1].id == sorted_nodes[k].id) {
            throw ConfigError("duplicate node id '" + sorted_nodes[k].id + "'");
        }
    }

    const std::size_t n = sats.size();
    const simd::PointsView view{sats.x, sats.y, sats.z};
    std::vector<std::uint32_t> idx(n + 1);
    std::vector<double> d2(n + 1);

    std::vector<double> limits(ranges_km.size());
    for (std::size_t r = 0; r < ranges_km.size(); ++r) {
        limits[r] = ranges_km[r] * ranges_km[r];
    }
    std::vector<std::vector<PendingEdge>> pending(ranges_km.size());

    for (std::size_t i = 0; i < n; ++i) {
        const simd::Point p{sats.x[i], sats.y[i], sats.z[i]};
        const std::size_t found = simd::within_range(view, i + 1, p, max_range * max_range, idx.data(), d2.data());
        const std::uint32_t a = node_of[i];
        for (std::size_t k = 0; k < found; ++k) {
            if (d2[k] == 0.0) {
                continue; // coincident satellites have no meaningful link
            }
            const std::uint32_t b = node_of[idx[k]];
            for (std::size_t r = 0; r < limits.size(); ++r) {
                if (d2[k] <= limits[r]) {
                    pending[r].push_back({std::min(a, b), std::max(a, b), d2[k]});
                }
            }
        }
    }

    for (std::size_t s = 0; s < stations.size(); ++s) {
        const Position3D g = ground_station_position(stations[s]);
        const double gn = g.norm();
        const simd::Point at{g.x, g.y, g.z};
        const simd::Point up{g.x / gn, g.y / gn, g.z / gn};
        const double smin = std::sin(deg_to_rad(stations[s].min_elevation_deg));
        const std::size_t found = simd::visible_from(view, at, up, smin, idx.data(), d2.data());
        const std::uint32_t a = node_of[n + s];
        for (std::size_t k = 0; k < found; ++k) {
            const std::uint32_t b = node_of[idx[k]];
            for (auto& list : pending) {
                list.push_back({std::min(a, b), std::max(a, b), d2[k]});
            }
        }
    }

    std::vector<TopologySnapshot> out;
    out.reserve(ranges_km.size());
    for (auto& list : pending) {
        TopologySnapshot snap;
        snap.slot_index = slot_index;
        snap.nodes = sorted_nodes;
        snap.edges = canonical_edges(list, sorted_nodes.size());
        out.push_back(std::move(snap));
    }
    return out;
}

TopologySnapshot build_snapshot(const std::map<NodeRef, Position3D>& positions,
                                std::span<const GroundStation> stations, double lisl_range_km, int slot_index)
{
    if (positions.empty()) {
        throw DomainError("build_snapshot: positions must be nonempty");
    }
    SatelliteField field;
    for (const auto& [node, pos] : positions) {
        if (pos.frame != Frame::ECEF) {
            throw FrameError("build_snapshot: position of '" + node.id + "' is not in the ECEF frame");
        }
        if (node.kind != NodeKind::Satellite) {
            throw DomainError("build_snapshot: positions must describe satellites; got station '" + node.id + "'");
        }
        field.ids.push_back(node);
        field.x.push_back(pos.x);
        field.y.push_back(pos.y);
        field.z.push_back(pos.z);
    }
    const double ranges[] = {lisl_range_km};
    return std::move(build_snapshots(field, stations, ranges, slot_index).front());
}

} // namespace lisl

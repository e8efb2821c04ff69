#include "lisl/routing.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "lisl/errors.hpp"

namespace lisl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

int RoutePath::hop_count() const
{
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(), [](const NodeRef& n) { return n.kind == NodeKind::Satellite; }));
}

RoutingGraph::RoutingGraph(const TopologySnapshot& snapshot) : snapshot_(&snapshot)
{
    const std::size_t n = snapshot.nodes.size();
    offsets_.assign(n + 1, 0);
    for (const Edge& e : snapshot.edges) {
        ++offsets_[e.a + 1];
        ++offsets_[e.b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        offsets_[i + 1] += offsets_[i];
    }
    arcs_.resize(offsets_[n]);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // With edges sorted by (a, b) each node's arcs already come out ascending;
    // the check below only sorts hand-built snapshots.
    for (const Edge& e : snapshot.edges) {
        arcs_[cursor[e.a]++] = {e.b, e.length_m};
        arcs_[cursor[e.b]++] = {e.a, e.length_m};
    }
    auto by_target = [](const Arc& l, const Arc& r) { return l.target < r.target; };
    for (std::size_t i = 0; i < n; ++i) {
        auto first = arcs_.begin() + offsets_[i];
        auto last = arcs_.begin() + offsets_[i + 1];
        if (!std::is_sorted(first, last, by_target)) {
            std::sort(first, last, by_target);
        }
    }
    relay_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        relay_[i] = snapshot.nodes[i].kind == NodeKind::Satellite ? 1 : 0;
    }
}

ShortestPathTree::ShortestPathTree(const RoutingGraph& graph, std::uint32_t source)
    : graph_(&graph), source_(source), dist_(graph.size(), kInf)
{
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist_[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist_[u]) {
            continue;
        }
        if (u != source && !graph.can_relay(u)) {
            continue;
        }
        for (const auto& arc : graph.neighbors(u)) {
            const double nd = d + arc.length_m;
            if (nd < dist_[arc.target]) {
                dist_[arc.target] = nd;
                heap.push({nd, arc.target});
            }
        }
    }
}

bool ShortestPathTree::reachable(std::uint32_t v) const { return dist_[v] < kInf; }

std::optional<RoutePath> ShortestPathTree::path_to(std::uint32_t target) const
{
    if (target == source_ || !reachable(target)) {
        return std::nullopt;
    }
    const RoutingGraph& g = *graph_;
    auto expandable = [&](std::uint32_t v) { return v == source_ || g.can_relay(v); };
    auto tight = [&](std::uint32_t u, std::uint32_t v, double w) { return dist_[u] + w == dist_[v]; };

    // Nodes lying on at least one shortest source->target path.
    std::vector<std::uint8_t> on_path(g.size(), 0);
    std::vector<std::uint32_t> stack{target};
    on_path[target] = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (const auto& arc : g.neighbors(v)) {
            const std::uint32_t u = arc.target;
            if (!on_path[u] && expandable(u) && dist_[u] < dist_[v] && tight(u, v, arc.length_m)) {
                on_path[u] = 1;
                stack.push_back(u);
            }
        }
    }

    // Greedy walk picking the smallest-id successor; node indices follow id order.
    const auto& nodes = g.snapshot().nodes;
    RoutePath path;
    std::uint32_t cur = source_;
    path.nodes.push_back(nodes[cur]);
    while (cur != target) {
        const RoutingGraph::Arc* next = nullptr;
        for (const auto& arc : g.neighbors(cur)) {
            if (on_path[arc.target] && dist_[arc.target] > dist_[cur] && tight(cur, arc.target, arc.length_m)) {
                next = &arc;
                break;
            }
        }
        if (next == nullptr) {
            throw std::logic_error("shortest path DAG walk stalled");
        }
        path.nodes.push_back(nodes[next->target]);
        path.edge_lengths.push_back(next->length_m);
        cur = next->target;
    }
    path.total_length = 0.0;
    for (double w : path.edge_lengths) {
        path.total_length += w;
    }
    return path;
}

std::optional<RoutePath> shortest_path(const TopologySnapshot& snapshot, const NodeRef& src, const NodeRef& dst)
{
    const auto s = snapshot.index_of(src);
    const auto d = snapshot.index_of(dst);
    if (s == d) {
        throw DomainError("shortest_path: source and destination are the same node '" + src.id + "'");
    }
    const RoutingGraph graph(snapshot);
    return ShortestPathTree(graph, s).path_to(d);
}

int path_changed(NoPreviousSlot, const std::optional<RoutePath>&) { return 0; }

int path_changed(const std::optional<RoutePath>& prev, const std::optional<RoutePath>& cur)
{
    if (prev && cur && prev->same_route(*cur)) {
        return 0;
    }
    return 1;
}

} // namespace lisl

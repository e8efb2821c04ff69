#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "lisl/errors.hpp"
#include "lisl/topology.hpp"

namespace lisl {

namespace {

constexpr std::string_view kHeader = "slot,node_a,kind_a,node_b,kind_b,length_m";

std::string format_length(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void check_id(const std::string& id)
{
    if (id.find_first_of(",\n\r") != std::string::npos) {
        throw InputError("node id '" + id + "' cannot be written to CSV (contains a separator)");
    }
}

std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

NodeKind parse_kind(const std::string& field, std::size_t line)
{
    if (field == "SAT") {
        return NodeKind::Satellite;
    }
    if (field == "GS") {
        return NodeKind::GroundStation;
    }
    throw ParseError(line, "unknown node kind '" + field + "' (expected SAT or GS)");
}

struct SlotBuilder {
    std::map<std::string, NodeKind> nodes;
    // Keyed by ordered id pair; value is (length, first line seen).
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> edges;
};

void declare(SlotBuilder& slot, const std::string& id, NodeKind kind, std::size_t line)
{
    auto [it, inserted] = slot.nodes.emplace(id, kind);
    if (!inserted && it->second != kind) {
        throw ParseError(line, "node '" + id + "' declared with conflicting kinds");
    }
}

} // namespace

void export_snapshots(std::ostream& out, std::span<const TopologySnapshot> snapshots)
{
    out << kHeader << '\n';
    for (const auto& snap : snapshots) {
        std::vector<bool> touched(snap.nodes.size(), false);
        for (const auto& e : snap.edges) {
            touched[e.a] = touched[e.b] = true;
            const NodeRef& a = snap.nodes[e.a];
            const NodeRef& b = snap.nodes[e.b];
            check_id(a.id);
            check_id(b.id);
            out << snap.slot_index << ',' << a.id << ',' << kind_code(a.kind) << ',' << b.id << ','
                << kind_code(b.kind) << ',' << format_length(e.length_m) << '\n';
        }
        for (std::size_t i = 0; i < snap.nodes.size(); ++i) {
            if (!touched[i]) {
                check_id(snap.nodes[i].id);
                out << snap.slot_index << ',' << snap.nodes[i].id << ',' << kind_code(snap.nodes[i].kind)
                    << ",,,\n";
            }
        }
        if (snap.nodes.empty()) {
            out << snap.slot_index << ",,,,,\n";
        }
    }
}

std::vector<TopologySnapshot> ingest_snapshots(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line.starts_with("\xEF\xBB\xBF")) {
        line.erase(0, 3);
    }
    if (line != kHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kHeader) + "'");
    }

    std::map<int, SlotBuilder> slots;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 6) {
            throw ParseError(line_no, "expected 6 fields, got " + std::to_string(f.size()));
        }
        int slot = 0;
        {
            auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), slot);
            if (ec != std::errc{} || ptr != f[0].data() + f[0].size() || slot < 1) {
                throw ParseError(line_no, "invalid slot '" + f[0] + "'");
            }
        }
        SlotBuilder& sb = slots[slot];

        const bool has_a = !f[1].empty() || !f[2].empty();
        const bool has_b = !f[3].empty() || !f[4].empty() || !f[5].empty();
        if (!has_a) {
            if (has_b) {
                throw ParseError(line_no, "node_b given without node_a");
            }
            continue; // empty-slot declaration
        }
        if (f[1].empty()) {
            throw ParseError(line_no, "empty node_a");
        }
        const NodeKind ka = parse_kind(f[2], line_no);
        declare(sb, f[1], ka, line_no);
        if (!has_b) {
            continue; // isolated-node declaration
        }
        if (f[3].empty()) {
            throw ParseError(line_no, "empty node_b");
        }
        const NodeKind kb = parse_kind(f[4], line_no);
        if (f[1] == f[3]) {
            throw ParseError(line_no, "self-loop on '" + f[1] + "'");
        }
        double length = 0.0;
        {
            auto [ptr, ec] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), length);
            if (ec != std::errc{} || ptr != f[5].data() + f[5].size() || !std::isfinite(length) ||
                !(length > 0.0)) {
                throw ParseError(line_no, "length_m must be a positive decimal, got '" + f[5] + "'");
            }
        }
        declare(sb, f[3], kb, line_no);
        auto key = f[1] < f[3] ? std::make_pair(f[1], f[3]) : std::make_pair(f[3], f[1]);
        auto [it, inserted] = sb.edges.emplace(std::move(key), std::make_pair(length, line_no));
        if (!inserted && it->second.first != length) {
            throw InputError("line " + std::to_string(line_no) + ": edge " + it->first.first + " -- " +
                             it->first.second + " in slot " + std::to_string(slot) +
                             " conflicts with length given on line " + std::to_string(it->second.second));
        }
    }

    std::vector<TopologySnapshot> out;
    out.reserve(slots.size());
    int expected = 1;
    for (auto& [slot, sb] : slots) {
        if (slot != expected) {
            throw InputError("snapshot file has a gap: slot " + std::to_string(expected) + " is missing");
        }
        ++expected;
        TopologySnapshot snap;
        snap.slot_index = slot;
        snap.nodes.reserve(sb.nodes.size());
        for (const auto& [id, kind] : sb.nodes) {
            snap.nodes.push_back({kind, id});
        }
        snap.edges.reserve(sb.edges.size());
        for (const auto& [key, val] : sb.edges) {
            const auto a = *snap.find(key.first);
            const auto b = *snap.find(key.second);
            snap.edges.push_back({std::min(a, b), std::max(a, b), val.first});
        }
        std::sort(snap.edges.begin(), snap.edges.end(),
                  [](const Edge& l, const Edge& r) { return l.a != r.a ? l.a < r.a : l.b < r.b; });
        snap.validate();
        out.push_back(std::move(snap));
    }
    return out;
}

} // namespace lisl

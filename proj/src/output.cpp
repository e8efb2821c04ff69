#include "lisl/output.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lisl/config.hpp"
#include "lisl/digest.hpp"
#include "lisl/errors.hpp"
#include "lisl/plots.hpp"
#include "lisl/simd/kernels.hpp"

namespace lisl::report {

std::string number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string eta_label(double eta_s_ms) { return number(eta_s_ms); }

std::string format_tolerable(const TolerableDelay& t)
{
    switch (t.kind) {
    case TolerableDelay::Kind::Nonexistent: return "NA";
    case TolerableDelay::Kind::Unbounded: return "INF";
    case TolerableDelay::Kind::Finite: break;
    }
    return number(t.value_ms);
}

std::string slug(const std::string& text)
{
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '-') {
            out.push_back('-');
        } else {
            out.push_back('_');
        }
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string& s, std::size_t line)
{
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "not a number: '" + s + "'");
    }
    return v;
}

std::string cents(long long c)
{
    char buf[48];
    const char* sign = c < 0 ? "-" : "";
    const long long a = c < 0 ? -c : c;
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", sign, a / 100, a % 100);
    return buf;
}

std::string describe_path(const RoutePath& path)
{
    std::string out;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        if (i > 0) {
            out += " > ";
        }
        const auto& n = path.nodes[i];
        if (n.kind == NodeKind::GroundStation) {
            out += "GS " + n.id;
        } else {
            out += n.id;
        }
    }
    return out;
}

} // namespace

void write_slots_csv(std::ostream& out, const ScenarioResult& result)
{
    const auto& etas = result.config.latency.setup_delays_ms;
    out << "pair,range_km,slot,alpha,path_len_m,hops,lat_wo_ms";
    for (double eta : etas) {
        out << ",lat_w_" << eta_label(eta) << "_ms";
    }
    out << '\n';
    for (const auto& cell : result.cells) {
        const std::string prefix = csv_field(cell.pair.label()) + ',' + number(cell.range_km) + ',';
        for (const auto& s : cell.slots) {
            out << prefix << s.slot_index << ',' << s.alpha << ',';
            if (s.path) {
                out << number(s.path->total_length) << ',' << s.path->hop_count() << ','
                    << number(*s.latency_without_ms);
                for (double v : s.latency_with_ms) {
                    out << ',' << number(v);
                }
            } else {
                out << "NA,NA,NA";
                for (std::size_t k = 0; k < etas.size(); ++k) {
                    out << ",NA";
                }
            }
            out << '\n';
        }
    }
}

void write_metrics_csv(std::ostream& out, const ScenarioResult& result)
{
    const auto& etas = result.config.latency.setup_delays_ms;
    out << "pair,range_km,lambda_pct,mean_wo_ms";
    for (double eta : etas) {
        out << ",mean_w_" << eta_label(eta) << "_ms";
    }
    for (double eta : etas) {
        out << ",beta_" << eta_label(eta) << "_pct";
    }
    out << ",eta_s_max_ms,oftn_ms,dist_m,mean_hops,unreachable\n";
    for (const auto& cell : result.cells) {
        const auto& m = cell.metrics;
        out << csv_field(cell.pair.label()) << ',' << number(cell.range_km) << ',' << number(m.lambda_pct) << ','
            << number(m.mean_latency_without_ms);
        for (double v : m.mean_latency_with_ms) {
            out << ',' << number(v);
        }
        for (double v : m.beta_pct) {
            out << ',' << number(v);
        }
        out << ',' << format_tolerable(m.eta_s_max) << ',' << number(m.oftn_latency_ms) << ','
            << number(m.terrestrial_distance_m) << ',' << number(m.mean_hops) << ',' << m.unreachable_slots << '\n';
    }
}

std::vector<MetricsRow> parse_metrics_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing header");
    }
    const auto header = split_csv(line);
    if (header.size() < 9 || (header.size() - 9) % 2 != 0 || header[0] != "pair" || header[1] != "range_km" ||
        header[2] != "lambda_pct" || header[3] != "mean_wo_ms") {
        throw ParseError(1, "unexpected metrics header");
    }
    const std::size_t n_eta = (header.size() - 9) / 2;
    std::vector<double> etas;
    for (std::size_t k = 0; k < n_eta; ++k) {
        const std::string& col = header[4 + k];
        if (!col.starts_with("mean_w_") || !col.ends_with("_ms")) {
            throw ParseError(1, "unexpected column '" + col + "'");
        }
        etas.push_back(parse_double(col.substr(7, col.size() - 10), 1));
    }

    std::vector<MetricsRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields");
        }
        MetricsRow r;
        r.pair = f[0];
        r.range_km = parse_double(f[1], line_no);
        r.lambda_pct = parse_double(f[2], line_no);
        r.mean_wo_ms = parse_double(f[3], line_no);
        r.setup_delays_ms = etas;
        for (std::size_t k = 0; k < n_eta; ++k) {
            r.mean_w_ms.push_back(parse_double(f[4 + k], line_no));
            r.beta_pct.push_back(parse_double(f[4 + n_eta + k], line_no));
        }
        const std::size_t base = 4 + 2 * n_eta;
        if (f[base] == "NA") {
            r.eta_s_max = TolerableDelay::nonexistent();
        } else if (f[base] == "INF") {
            r.eta_s_max = TolerableDelay::unbounded();
        } else {
            r.eta_s_max = TolerableDelay::finite(parse_double(f[base], line_no));
        }
        r.oftn_ms = parse_double(f[base + 1], line_no);
        r.dist_m = parse_double(f[base + 2], line_no);
        r.mean_hops = parse_double(f[base + 3], line_no);
        r.unreachable = static_cast<int>(parse_double(f[base + 4], line_no));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<double> EtaSweep::values() const
{
    std::vector<double> out;
    for (long k = 0;; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        if (v > hi + 1e-9 * std::max(1.0, std::abs(hi))) {
            break;
        }
        out.push_back(v);
    }
    return out;
}

EtaSweep EtaSweep::parse(const std::string& text)
{
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
    if (b == std::string::npos) {
        throw ConfigError("--etas-sweep expects lo:hi:step, got '" + text + "'");
    }
    EtaSweep s;
    try {
        s.lo = parse_double(text.substr(0, a), 0);
        s.hi = parse_double(text.substr(a + 1, b - a - 1), 0);
        s.step = parse_double(text.substr(b + 1), 0);
    } catch (const ParseError&) {
        throw ConfigError("--etas-sweep expects numbers lo:hi:step, got '" + text + "'");
    }
    if (!(s.lo > 0.0) || !(s.hi >= s.lo) || !(s.step > 0.0)) {
        throw ConfigError("--etas-sweep requires 0 < lo <= hi and step > 0");
    }
    if ((s.hi - s.lo) / s.step > 1e6) {
        throw ConfigError("--etas-sweep produces too many points");
    }
    return s;
}

void write_tolerable_csv(std::ostream& out, const ScenarioResult& result, const EtaSweep& sweep)
{
    out << "pair,range_km,eta_s_ms,mean_w_ms,oftn_ms\n";
    const auto etas = sweep.values();
    for (const auto& cell : result.cells) {
        const auto& m = cell.metrics;
        for (double eta : etas) {
            out << csv_field(cell.pair.label()) << ',' << number(cell.range_km) << ',' << number(eta) << ','
                << number(mean_latency_with_setup(m.mean_latency_without_ms, m.lambda_pct, eta)) << ','
                << number(m.oftn_latency_ms) << '\n';
        }
    }
}

std::string emit_table1(const ScenarioResult& result, const StationPair& pair, double range_km, int first_n,
                        double eta_s_ms)
{
    const CellResult& cell = result.cell(pair, range_km);
    std::ostringstream out;
    out << "# Shortest paths for " << pair.label() << " at LISL range " << number(range_km)
        << " km, eta_s = " << number(eta_s_ms) << " ms\n";
    out << "slot | shortest path | lat_wo_ms | alpha | eta_s_ms | lat_w_ms\n";
    const long long eta_c = std::llround(eta_s_ms * 100.0);
    const int rows = std::min<int>(std::max(first_n, 0), static_cast<int>(cell.slots.size()));
    for (int i = 0; i < rows; ++i) {
        const SlotResult& s = cell.slots[static_cast<std::size_t>(i)];
        const long long add = s.alpha * eta_c;
        out << s.slot_index << " | ";
        if (s.path) {
            const long long wo = std::llround(*s.latency_without_ms * 100.0);
            out << describe_path(*s.path) << " | " << cents(wo) << " | " << s.alpha << " | " << cents(add) << " | "
                << cents(wo + add) << '\n';
        } else {
            out << "unreachable | NA | " << s.alpha << " | " << cents(add) << " | NA\n";
        }
    }
    return out.str();
}

namespace {

BundleFile write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content)
{
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
    return {name, sha256_hex(content), content.size()};
}

} // namespace

OutputBundle write_bundle(const ScenarioResult& result, const std::filesystem::path& dir,
                          const BundleOptions& options)
{
    std::filesystem::create_directories(dir);
    OutputBundle bundle;
    bundle.directory = dir;

    {
        std::ostringstream s;
        write_slots_csv(s, result);
        bundle.files.push_back(write_file(dir, "slots.csv", s.str()));
    }
    {
        std::ostringstream s;
        write_metrics_csv(s, result);
        bundle.files.push_back(write_file(dir, "metrics.csv", s.str()));
    }
    {
        std::string text;
        for (const auto& cell : result.cells) {
            text += emit_table1(result, cell.pair, cell.range_km, options.table1_rows, options.table1_eta_s_ms);
            text += '\n';
        }
        bundle.files.push_back(write_file(dir, "table1.txt", text));
    }
    const EtaSweep sweep = options.eta_sweep.value_or(EtaSweep{});
    if (options.eta_sweep) {
        std::ostringstream s;
        write_tolerable_csv(s, result, sweep);
        bundle.files.push_back(write_file(dir, "tolerable.csv", s.str()));
    }

    try {
        for (const auto& [name, svg] : plots::render_all(result, sweep)) {
            bundle.files.push_back(write_file(dir, name, svg));
        }
    } catch (const std::exception& e) {
        bundle.warnings.push_back(std::string("plot generation failed: ") + e.what());
    }

    nlohmann::json manifest;
    manifest["config"] = config_to_json(result.config);
    manifest["provenance"] = {{"code_version", result.provenance.code_version},
                              {"config_hash", result.provenance.config_hash},
                              {"timestamp", result.provenance.timestamp},
                              {"simd_backend", std::string(simd::backend_name(simd::active_backend()))}};
    manifest["files"] = nlohmann::json::array();
    for (const auto& f : bundle.files) {
        manifest["files"].push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    std::vector<std::string> warnings = result.warnings;
    warnings.insert(warnings.end(), bundle.warnings.begin(), bundle.warnings.end());
    manifest["warnings"] = warnings;
    write_file(dir, "manifest.json", manifest.dump(2) + "\n");
    return bundle;
}

} // namespace lisl::report

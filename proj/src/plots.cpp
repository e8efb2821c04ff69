#include "lisl/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lisl::plots {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#222222", "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double map(double v) const
    {
        const double plot_h = kHeight - kTop - kBottom;
        double f = 0.0;
        if (log) {
            f = (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        } else {
            f = (v - lo) / (hi - lo);
        }
        return kHeight - kBottom - std::clamp(f, 0.0, 1.0) * plot_h;
    }

    std::vector<double> ticks() const
    {
        std::vector<double> out;
        if (log) {
            for (double d = std::pow(10.0, std::floor(std::log10(lo))); d <= hi * 1.0001; d *= 10.0) {
                if (d >= lo * 0.9999) {
                    out.push_back(d);
                }
            }
        } else {
            for (int k = 0; k <= 5; ++k) {
                out.push_back(lo + (hi - lo) * k / 5.0);
            }
        }
        return out;
    }
};

Axis make_axis(const std::vector<double>& values, bool want_log)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    bool all_positive = true;
    for (double v : values) {
        if (!std::isfinite(v)) {
            continue;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        all_positive = all_positive && v > 0.0;
    }
    if (!std::isfinite(lo)) {
        throw std::runtime_error("chart has no finite values");
    }
    if (want_log && all_positive) {
        const double l = std::pow(10.0, std::floor(std::log10(lo)));
        double h = std::pow(10.0, std::ceil(std::log10(hi)));
        if (h <= l) {
            h = l * 10.0;
        }
        return {l, h, true};
    }
    lo = std::min(lo, 0.0);
    if (hi <= lo) {
        hi = lo + 1.0;
    }
    return {lo, hi * 1.05, false};
}

void frame(std::ostringstream& svg, const std::string& title, const std::string& y_label, const Axis& axis)
{
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
    svg << "<text transform=\"translate(16," << kHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(y_label) << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight;
    for (double t : axis.ticks()) {
        const double y = axis.map(t);
        svg << "<line x1=\"" << x0 << "\" x2=\"" << x1 << "\" y1=\"" << y << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << x0 - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    svg << "<line x1=\"" << x0 << "\" x2=\"" << x0 << "\" y1=\"" << kTop << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << x0 << "\" x2=\"" << x1 << "\" y1=\"" << kHeight - kBottom << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n";
}

void legend(std::ostringstream& svg, const std::vector<Series>& series)
{
    const double x = kWidth - kRight + 14;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 18.0 * i;
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\"" << color(i)
            << "\"/>\n";
        svg << "<text x=\"" << x + 18 << "\" y=\"" << y + 10 << "\">" << escape(series[i].name) << "</text>\n";
    }
}

} // namespace

std::string bar_chart(const std::string& title, const std::string& y_label, const std::vector<std::string>& x_labels,
                      const std::vector<Series>& series, bool log_y)
{
    std::vector<double> all;
    for (const auto& s : series) {
        if (s.values.size() != x_labels.size()) {
            throw std::invalid_argument("bar_chart: series '" + s.name + "' length mismatch");
        }
        all.insert(all.end(), s.values.begin(), s.values.end());
    }
    const Axis axis = make_axis(all, log_y);
    std::ostringstream svg;
    frame(svg, title, y_label, axis);

    const double plot_w = kWidth - kLeft - kRight;
    const double group_w = plot_w / std::max<std::size_t>(1, x_labels.size());
    const double bar_w = group_w * 0.8 / std::max<std::size_t>(1, series.size());
    const double base = axis.log ? kHeight - kBottom : axis.map(0.0);
    for (std::size_t g = 0; g < x_labels.size(); ++g) {
        const double gx = kLeft + g * group_w + group_w * 0.1;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const double v = series[i].values[g];
            if (!std::isfinite(v)) {
                continue;
            }
            const double y = axis.map(v);
            svg << "<rect x=\"" << gx + i * bar_w << "\" y=\"" << std::min(y, base) << "\" width=\"" << bar_w * 0.95
                << "\" height=\"" << std::abs(base - y) << "\" fill=\"" << color(i) << "\"><title>"
                << escape(series[i].name) << ": " << fmt(v) << "</title></rect>\n";
        }
        svg << "<text x=\"" << kLeft + (g + 0.5) * group_w << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\">" << escape(x_labels[g]) << "</text>\n";
    }
    legend(svg, series);
    svg << "</svg>\n";
    return svg.str();
}

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& xs, const std::vector<Series>& series)
{
    if (xs.size() < 2) {
        throw std::invalid_argument("line_chart: need at least two x values");
    }
    std::vector<double> all;
    for (const auto& s : series) {
        if (s.values.size() != xs.size()) {
            throw std::invalid_argument("line_chart: series '" + s.name + "' length mismatch");
        }
        all.insert(all.end(), s.values.begin(), s.values.end());
    }
    const Axis axis = make_axis(all, false);
    std::ostringstream svg;
    frame(svg, title, y_label, axis);
    const double x_lo = xs.front(), x_hi = xs.back();
    auto map_x = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); };
    for (std::size_t i = 0; i < series.size(); ++i) {
        svg << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << color(i) << "\" points=\"";
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (std::isfinite(series[i].values[k])) {
                svg << map_x(xs[k]) << ',' << axis.map(series[i].values[k]) << ' ';
            }
        }
        svg << "\"/>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double x = x_lo + (x_hi - x_lo) * k / 4.0;
        svg << "<text x=\"" << map_x(x) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
            << fmt(x) << "</text>\n";
    }
    svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    legend(svg, series);
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::pair<std::string, std::string>> render_all(const ScenarioResult& result,
                                                            const report::EtaSweep& sweep)
{
    const auto& cfg = result.config;
    std::vector<double> ranges;
    for (const auto& c : result.cells) {
        if (std::find(ranges.begin(), ranges.end(), c.range_km) == ranges.end()) {
            ranges.push_back(c.range_km);
        }
    }
    std::vector<std::string> range_labels;
    for (double r : ranges) {
        range_labels.push_back(report::number(r) + " km");
    }
    auto metrics_of = [&](const StationPair& p, double r) -> const ScenarioMetrics& {
        return result.cell(p, r).metrics;
    };

    std::vector<std::pair<std::string, std::string>> out;

    std::vector<Series> lambda_series;
    for (const auto& p : cfg.pairs) {
        Series s{p.label(), {}};
        for (double r : ranges) {
            s.values.push_back(metrics_of(p, r).lambda_pct);
        }
        lambda_series.push_back(std::move(s));
    }
    out.emplace_back("fig_path_change_rate.svg",
                     bar_chart("Path change rate", "lambda (%)", range_labels, lambda_series, true));

    const auto etas = sweep.values();
    for (const auto& p : cfg.pairs) {
        std::vector<Series> latency{{"without eta_s", {}}};
        std::vector<Series> beta;
        for (double eta : cfg.latency.setup_delays_ms) {
            latency.push_back({"eta_s = " + report::number(eta) + " ms", {}});
            beta.push_back({"eta_s = " + report::number(eta) + " ms", {}});
        }
        for (double r : ranges) {
            const auto& m = metrics_of(p, r);
            latency[0].values.push_back(m.mean_latency_without_ms);
            for (std::size_t k = 0; k < m.mean_latency_with_ms.size(); ++k) {
                latency[k + 1].values.push_back(m.mean_latency_with_ms[k]);
                beta[k].values.push_back(m.beta_pct[k]);
            }
        }
        const std::string tag = report::slug(p.label());
        out.emplace_back("fig_latency_" + tag + ".svg",
                         bar_chart("Mean end-to-end latency, " + p.label(), "latency (ms)", range_labels, latency,
                                   true));
        out.emplace_back("fig_impact_" + tag + ".svg",
                         bar_chart("Impact of setup delay, " + p.label(), "beta (%)", range_labels, beta, true));

        if (etas.size() >= 2) {
            std::vector<Series> lines;
            for (double r : ranges) {
                const auto& m = metrics_of(p, r);
                Series s{report::number(r) + " km", {}};
                for (double eta : etas) {
                    s.values.push_back(mean_latency_with_setup(m.mean_latency_without_ms, m.lambda_pct, eta));
                }
                lines.push_back(std::move(s));
            }
            Series fiber{"fiber", std::vector<double>(etas.size(), metrics_of(p, ranges.front()).oftn_latency_ms)};
            lines.push_back(std::move(fiber));
            out.emplace_back("fig_tolerable_" + tag + ".svg",
                             line_chart("Mean latency vs setup delay, " + p.label(), "eta_s (ms)", "latency (ms)",
                                        etas, lines));
        }
    }
    return out;
}

} // namespace lisl::plots

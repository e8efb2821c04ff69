#pragma once

// Static SVG charts for the sweep: path change rate, mean latency, impact and
// the tolerable-setup-delay line chart.

#include <string>
#include <utility>
#include <vector>

#include "lisl/output.hpp"

namespace lisl::plots {

struct Series {
    std::string name;
    std::vector<double> values;
};

// Grouped bars: one group per x label, one bar per series. A log y axis is used
// when requested and every value is positive.
std::string bar_chart(const std::string& title, const std::string& y_label, const std::vector<std::string>& x_labels,
                      const std::vector<Series>& series, bool log_y);

// Polylines over shared x values.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& xs, const std::vector<Series>& series);

// (file name, svg) for every chart of a result.
std::vector<std::pair<std::string, std::string>> render_all(const ScenarioResult& result,
                                                            const report::EtaSweep& sweep);

} // namespace lisl::plots

#pragma once

#include <string>
#include <vector>

namespace abvp {

/// Minimal standalone SVG line chart, no plotting dependency.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series);

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series);

} // namespace abvp

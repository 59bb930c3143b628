#include "abvp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "abvp/errors.hpp"

namespace abvp {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 64, kMarginR = 24, kMarginT = 40, kMarginB = 48;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool seen = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!seen) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                seen = true;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    auto sx = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double y) { return kMarginT + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(kWidth / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(title) + "</text>\n";

    // frame and min/max tick labels
    out += "<rect x=\"" + std::to_string(kMarginL) + "\" y=\"" + std::to_string(kMarginT) +
           "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    auto text = [&](double x, double y, const std::string& anchor, const std::string& s) {
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s) + "</text>\n";
    };
    text(kMarginL, kHeight - kMarginB + 16, "middle", fmt(xmin));
    text(kWidth - kMarginR, kHeight - kMarginB + 16, "middle", fmt(xmax));
    text(kMarginL - 6, kHeight - kMarginB + 4, "end", fmt(ymin));
    text(kMarginL - 6, kMarginT + 10, "end", fmt(ymax));
    text(kWidth / 2.0, kHeight - 10, "middle", x_label);
    out += "<text x=\"14\" y=\"" + fmt(kMarginT + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "transform=\"rotate(-90 14 " +
           fmt(kMarginT + plot_h / 2.0) + ")\">" + escape(y_label) + "</text>\n";

    int color = 0;
    double legend_y = kMarginT + 14;
    for (const auto& s : series) {
        const char* stroke = kColors[color % 8];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            points += fmt(sx(s.x[i])) + "," + fmt(sy(s.y[i])) + " ";
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        if (!s.label.empty()) {
            out += "<text x=\"" + std::to_string(kMarginL + 8) + "\" y=\"" + fmt(legend_y) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + stroke + "\">" +
                   escape(s.label) + "</text>\n";
            legend_y += 14;
        }
        ++color;
    }
    out += "</svg>\n";
    return out;
}

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("svg: cannot open \"" + path + "\" for writing");
    out << render_line_chart(title, x_label, y_label, series);
}

} // namespace abvp

#include "fwer/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fwer {
namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// A tick spacing of the form {1, 2, 5} * 10^k covering span/target ticks.
double nice_step(double span, int target_ticks) {
    if (span <= 0.0) return 1.0;
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

SvgLineChart::SvgLineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgLineChart::add_series(std::string name, std::string color,
                              std::vector<std::pair<double, double>> points) {
    series_.push_back({std::move(name), std::move(color), std::move(points)});
}

std::string SvgLineChart::render(int width, int height) const {
    const double left = 64, right = 24, top = 40, bottom = 52;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = 0.0, ymax = -std::numeric_limits<double>::infinity();
    for (const auto& s : series_) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) { xmin = 0.0; xmax = 1.0; }
    if (!std::isfinite(ymax) || ymax <= 0.0) ymax = 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    ymax *= 1.05;

    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto py = [&](double y) { return top + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title_ << "</text>\n";

    // gridlines and ticks
    const double xstep = nice_step(xmax - xmin, 8);
    const double ystep = nice_step(ymax - ymin, 6);
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12; x += xstep) {
        svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(x))
            << "\" y2=\"" << num(top + plot_h) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    for (double y = ymin; y <= ymax + 1e-12; y += ystep) {
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(y)) << "\" x2=\""
            << num(left + plot_w) << "\" y2=\"" << num(py(y)) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    svg << "</g>\n";

    // axes
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(top + plot_h)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(top + plot_h) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label_
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << num(top + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << num(top + plot_h / 2) << ")\">" << y_label_
        << "</text>\n";

    for (const auto& s : series_) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& [x, y] : s.points) {
            svg << num(px(x)) << "," << num(py(y)) << " ";
        }
        svg << "\"/>\n";
    }

    // legend, top-right corner of the plot area
    double ly = top + 12;
    for (const auto& s : series_) {
        const double lx = left + plot_w - 170;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 22)
            << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
        ly += 16;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fwer

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fwer {

/// Dependency-free SVG line chart: axes with ticks, one polyline per series,
/// and a legend. Intended for sweep plots (estimate curve, bound curve,
/// comparison line).
class SvgLineChart {
public:
    SvgLineChart(std::string title, std::string x_label, std::string y_label);

    void add_series(std::string name, std::string color,
                    std::vector<std::pair<double, double>> points);

    std::string render(int width = 760, int height = 480) const;

private:
    struct Series {
        std::string name;
        std::string color;
        std::vector<std::pair<double, double>> points;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
};

}  // namespace fwer

#pragma once

#include "kconc/stats.hpp"

#include <string>
#include <vector>

namespace kconc::svg {

struct LineSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    std::string dash;  // SVG stroke-dasharray, empty for solid
};

/// Line chart. Non-finite points are skipped; y values are clipped to [y_min, y_max].
struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = true;
    double y_min = 0.0;
    double y_max = 1.0;
    std::vector<LineSeries> series;
};

struct BoxPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> labels;
    std::vector<FiveNumber> boxes;
};

std::string render(const LinePlot& plot);
std::string render(const BoxPlot& plot);

/// Distinct colors for series index i.
std::string palette(std::size_t i);

}  // namespace kconc::svg

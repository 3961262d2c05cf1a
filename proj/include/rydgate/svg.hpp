#pragma once

// Small deterministic SVG line-plot writer: linear or log axes, several
// series, optional vertical markers. Elements are emitted in input order.

#include <string>
#include <utility>
#include <vector>

namespace rydgate::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;  // non-finite y breaks the line
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;
};

struct Marker {
    double x = 0.0;
    std::string label;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
    std::vector<Marker> markers;
};

/// Throws InvalidArgument if a log axis has no positive data.
std::string render(const Plot& plot, int width = 720, int height = 480);
void write_file(const std::string& path, const Plot& plot);

}  // namespace rydgate::svg

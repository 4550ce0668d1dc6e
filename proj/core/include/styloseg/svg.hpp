#pragma once

#include <string>
#include <vector>

namespace styloseg::svg {

struct Point {
    double x;
    double y;
};

struct ScatterSeries {
    std::string label;
    std::string color;  // e.g. "#1f77b4"
    std::vector<Point> points;
};

struct HistogramGroup {
    std::string label;
    std::string color;
    std::vector<double> values;
};

/// Standalone static scatter plot; deterministic output for fixed input.
std::string scatter_plot(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<ScatterSeries>& series);

/// Overlaid per-group histogram over a shared binning of the pooled range.
std::string grouped_histogram(const std::string& title, const std::string& x_label,
                              const std::vector<HistogramGroup>& groups, std::size_t bins = 20);

/// The default color cycle used by the CLI plots.
const std::vector<std::string>& default_colors();

}  // namespace styloseg::svg

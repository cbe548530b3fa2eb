#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghkad/matrix.hpp"

namespace ghkad {

// One straight piece of a level curve, in data coordinates.
struct ContourSegment {
    double x0, y0, x1, y1;
};

// Marching squares over a regular grid. values is row-major with x varying
// fastest: values[iy * xs.size() + ix] at (xs[ix], ys[iy]). Saddle cells are
// disambiguated by the cell-center average.
std::vector<ContourSegment> contour_segments(const std::vector<double>& values,
                                             const std::vector<double>& xs,
                                             const std::vector<double>& ys,
                                             double level);

struct HistogramData {
    std::vector<double> edges;  // n_bins + 1, shared by both classes
    std::vector<std::size_t> normal_counts, anomaly_counts;
};

// Common-range equal-width bins; the top edge is inclusive so class totals
// always equal the class counts.
HistogramData histogram(const std::vector<double>& values, const std::vector<int>& labels,
                        std::size_t n_bins);

// Scatter of labeled 2-D points (circles normal, triangles anomalous) with
// the level curve of the gridded decision values drawn on top. Deterministic
// bytes for identical inputs.
std::string boundary_svg(const Matrix& points, const std::vector<int>& labels,
                         const std::vector<double>& grid_values,
                         const std::vector<double>& grid_xs,
                         const std::vector<double>& grid_ys, double level = 0.0,
                         const std::string& title = "");

// Overlaid per-class histograms with a dashed vertical marker (the decision
// boundary) at the given value.
std::string histogram_svg(const HistogramData& hist, double marker = 0.0,
                          const std::string& title = "");

}  // namespace ghkad

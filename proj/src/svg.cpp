#include "ghkad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ghkad {

namespace {

double lerp_at(double a, double b, double va, double vb, double level) {
    if (vb == va) return 0.5 * (a + b);
    return a + (b - a) * (level - va) / (vb - va);
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Affine map from a data rectangle to the pixel viewport, y flipped.
struct PixelMap {
    double xlo, xhi, ylo, yhi;
    double left, right, top, bottom;  // pixel edges of the plot area

    double x(double v) const { return left + (v - xlo) / (xhi - xlo) * (right - left); }
    double y(double v) const { return bottom - (v - ylo) / (yhi - ylo) * (bottom - top); }
};

std::string svg_open(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w) + "\" height=\"" +
           px(h) + "\" viewBox=\"0 0 " + px(w) + " " + px(h) + "\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string frame(const PixelMap& m) {
    return "<rect x=\"" + px(m.left) + "\" y=\"" + px(m.top) + "\" width=\"" +
           px(m.right - m.left) + "\" height=\"" + px(m.bottom - m.top) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

std::string text_at(double x, double y, const std::string& s, const char* anchor = "middle") {
    return "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\" " +
           "font-size=\"12\" text-anchor=\"" + std::string(anchor) + "\">" + s + "</text>\n";
}

std::string num_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::vector<ContourSegment> contour_segments(const std::vector<double>& values,
                                             const std::vector<double>& xs,
                                             const std::vector<double>& ys,
                                             double level) {
    const std::size_t nx = xs.size(), ny = ys.size();
    if (nx < 2 || ny < 2 || values.size() != nx * ny)
        throw std::invalid_argument("contour_segments: grid shape mismatch");
    for (const double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("contour_segments: non-finite value");

    std::vector<ContourSegment> out;
    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
            const double v00 = values[iy * nx + ix], v10 = values[iy * nx + ix + 1];
            const double v01 = values[(iy + 1) * nx + ix], v11 = values[(iy + 1) * nx + ix + 1];
            const int idx = (v00 >= level ? 1 : 0) | (v10 >= level ? 2 : 0) |
                            (v11 >= level ? 4 : 0) | (v01 >= level ? 8 : 0);
            if (idx == 0 || idx == 15) continue;

            const double x0 = xs[ix], x1 = xs[ix + 1], y0 = ys[iy], y1 = ys[iy + 1];
            // Crossing points on the four cell edges.
            const double bx = lerp_at(x0, x1, v00, v10, level), by = y0;
            const double rx = x1, ry = lerp_at(y0, y1, v10, v11, level);
            const double tx = lerp_at(x0, x1, v01, v11, level), ty = y1;
            const double lx = x0, ly = lerp_at(y0, y1, v00, v01, level);

            const auto emit = [&](double ax, double ay, double cx, double cy) {
                out.push_back({ax, ay, cx, cy});
            };
            switch (idx) {
                case 1: case 14: emit(lx, ly, bx, by); break;
                case 2: case 13: emit(bx, by, rx, ry); break;
                case 3: case 12: emit(lx, ly, rx, ry); break;
                case 4: case 11: emit(rx, ry, tx, ty); break;
                case 6: case 9: emit(bx, by, tx, ty); break;
                case 7: case 8: emit(tx, ty, lx, ly); break;
                case 5:
                    if (0.25 * (v00 + v10 + v01 + v11) >= level) {
                        emit(tx, ty, lx, ly);
                        emit(bx, by, rx, ry);
                    } else {
                        emit(lx, ly, bx, by);
                        emit(rx, ry, tx, ty);
                    }
                    break;
                case 10:
                    if (0.25 * (v00 + v10 + v01 + v11) >= level) {
                        emit(lx, ly, bx, by);
                        emit(rx, ry, tx, ty);
                    } else {
                        emit(bx, by, rx, ry);
                        emit(tx, ty, lx, ly);
                    }
                    break;
                default: break;
            }
        }
    }
    return out;
}

HistogramData histogram(const std::vector<double>& values, const std::vector<int>& labels,
                        std::size_t n_bins) {
    if (values.empty() || values.size() != labels.size())
        throw std::invalid_argument("histogram: values and labels must be nonempty and equal-sized");
    if (n_bins == 0) throw std::invalid_argument("histogram: need at least one bin");
    for (const double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("histogram: non-finite value");

    double lo = values[0], hi = values[0];
    for (const double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }

    HistogramData h;
    h.edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
    h.normal_counts.assign(n_bins, 0);
    h.anomaly_counts.assign(n_bins, 0);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto bin = static_cast<std::size_t>((values[i] - lo) / width);
        bin = std::min(bin, n_bins - 1);  // top edge inclusive
        if (labels[i] == 1) ++h.anomaly_counts[bin];
        else ++h.normal_counts[bin];
    }
    return h;
}

std::string boundary_svg(const Matrix& points, const std::vector<int>& labels,
                         const std::vector<double>& grid_values,
                         const std::vector<double>& grid_xs,
                         const std::vector<double>& grid_ys, double level,
                         const std::string& title) {
    if (points.cols != 2) throw std::invalid_argument("boundary_svg: points must be 2-D");
    if (points.rows != labels.size())
        throw std::invalid_argument("boundary_svg: points/labels size mismatch");

    const double w = 640, hpx = 520;
    const PixelMap m{grid_xs.front(), grid_xs.back(), grid_ys.front(), grid_ys.back(),
                     50, w - 20, 40, hpx - 40};

    std::string svg = svg_open(w, hpx);
    if (!title.empty()) svg += text_at(0.5 * (m.left + m.right), 22, title);

    for (std::size_t i = 0; i < points.rows; ++i) {
        const double cx = m.x(points(i, 0)), cy = m.y(points(i, 1));
        if (labels[i] == 1) {
            // upward triangle, 4 px half-width
            svg += "<path d=\"M " + px(cx) + " " + px(cy - 4.5) + " L " + px(cx - 4) + " " +
                   px(cy + 3.5) + " L " + px(cx + 4) + " " + px(cy + 3.5) +
                   " Z\" fill=\"crimson\" fill-opacity=\"0.85\"/>\n";
        } else {
            svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) +
                   "\" r=\"2.5\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
        }
    }

    const auto segments = contour_segments(grid_values, grid_xs, grid_ys, level);
    for (const ContourSegment& s : segments)
        svg += "<line x1=\"" + px(m.x(s.x0)) + "\" y1=\"" + px(m.y(s.y0)) + "\" x2=\"" +
               px(m.x(s.x1)) + "\" y2=\"" + px(m.y(s.y1)) +
               "\" stroke=\"black\" stroke-width=\"1.4\"/>\n";

    svg += frame(m);
    svg += text_at(m.left, m.bottom + 16, num_label(m.xlo), "start");
    svg += text_at(m.right, m.bottom + 16, num_label(m.xhi), "end");
    svg += text_at(m.left - 6, m.bottom, num_label(m.ylo), "end");
    svg += text_at(m.left - 6, m.top + 10, num_label(m.yhi), "end");
    svg += "</svg>\n";
    return svg;
}

std::string histogram_svg(const HistogramData& hist, double marker, const std::string& title) {
    const std::size_t n_bins = hist.normal_counts.size();
    if (n_bins == 0 || hist.edges.size() != n_bins + 1 ||
        hist.anomaly_counts.size() != n_bins)
        throw std::invalid_argument("histogram_svg: inconsistent histogram data");

    std::size_t peak = 1;
    for (std::size_t i = 0; i < n_bins; ++i)
        peak = std::max({peak, hist.normal_counts[i], hist.anomaly_counts[i]});

    const double w = 640, hpx = 420;
    const PixelMap m{hist.edges.front(), hist.edges.back(), 0.0, static_cast<double>(peak),
                     50, w - 20, 40, hpx - 40};

    std::string svg = svg_open(w, hpx);
    if (!title.empty()) svg += text_at(0.5 * (m.left + m.right), 22, title);

    const auto bars = [&](const std::vector<std::size_t>& counts, const char* fill) {
        std::string out;
        for (std::size_t i = 0; i < n_bins; ++i) {
            if (counts[i] == 0) continue;
            const double x0 = m.x(hist.edges[i]), x1 = m.x(hist.edges[i + 1]);
            const double y = m.y(static_cast<double>(counts[i]));
            out += "<rect x=\"" + px(x0) + "\" y=\"" + px(y) + "\" width=\"" + px(x1 - x0) +
                   "\" height=\"" + px(m.bottom - y) + "\" fill=\"" + fill +
                   "\" fill-opacity=\"0.55\"/>\n";
        }
        return out;
    };
    svg += bars(hist.normal_counts, "steelblue");
    svg += bars(hist.anomaly_counts, "crimson");

    if (marker >= m.xlo && marker <= m.xhi) {
        const double mx = m.x(marker);
        svg += "<line x1=\"" + px(mx) + "\" y1=\"" + px(m.top) + "\" x2=\"" + px(mx) +
               "\" y2=\"" + px(m.bottom) +
               "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }

    svg += frame(m);
    svg += text_at(m.left, m.bottom + 16, num_label(m.xlo), "start");
    svg += text_at(m.right, m.bottom + 16, num_label(m.xhi), "end");
    svg += text_at(m.left - 6, m.top + 10, num_label(static_cast<double>(peak)), "end");
    svg += text_at(m.left - 6, m.bottom, "0", "end");
    svg += "</svg>\n";
    return svg;
}

}  // namespace ghkad

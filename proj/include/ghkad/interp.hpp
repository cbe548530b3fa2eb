#pragma once

#include <cstddef>
#include <vector>

namespace ghkad {

// Monotone cubic Hermite interpolant on a strictly ascending grid.
//
// Node derivatives come from the local cubic through four neighboring nodes
// (fourth-order accurate on smooth data) and then pass through a Hyman-style
// limiter that clamps any derivative that would break the monotonicity of
// the data. On well-resolved monotone data the limiter never fires, so the
// interpolant keeps the accuracy of the unlimited fit.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    // Evaluate at a point inside [x_front, x_back]; throws std::domain_error
    // outside the grid.
    double operator()(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::vector<double> x_, y_, d_;
};

}  // namespace ghkad

#include "ghkad/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghkad {

namespace {

// Derivative at xc of the cubic through four points (Newton form).
double cubic_fit_derivative(const double* x, const double* y, double xc) {
    const double f01 = (y[1] - y[0]) / (x[1] - x[0]);
    const double f12 = (y[2] - y[1]) / (x[2] - x[1]);
    const double f23 = (y[3] - y[2]) / (x[3] - x[2]);
    const double f012 = (f12 - f01) / (x[2] - x[0]);
    const double f123 = (f23 - f12) / (x[3] - x[1]);
    const double f0123 = (f123 - f012) / (x[3] - x[0]);
    const double a = xc - x[0], b = xc - x[1], c = xc - x[2];
    return f01 + f012 * (a + b) + f0123 * (a * b + a * c + b * c);
}

// Clamp d to the same sign as the adjacent secants and at most 3x the
// smaller one; the (0,3) box sits inside the Fritsch-Carlson monotone
// region, so each interval's cubic stays monotone with its data.
double limit_derivative(double d, double left, double right) {
    if (left * right <= 0.0) return 0.0;  // data extremum or flat spot
    if (d * left <= 0.0) return 0.0;
    const double cap = 3.0 * std::min(std::fabs(left), std::fabs(right));
    return std::copysign(std::min(std::fabs(d), cap), left);
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need >= 2 nodes with matching values");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: nodes must be strictly ascending");

    d_.resize(n);
    if (n < 4) {
        // Too few nodes for the cubic fit; secants are exact on lines and
        // already monotone.
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = std::min(i, n - 2);
            d_[i] = (y_[j + 1] - y_[j]) / (x_[j + 1] - x_[j]);
        }
        if (n == 3) d_[1] = 0.5 * (d_[0] + d_[2]);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t lo = (i == 0) ? 0 : i - 1;
            lo = std::min(lo, n - 4);
            d_[i] = cubic_fit_derivative(&x_[lo], &y_[lo], x_[i]);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i > 0) ? (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1])
                                    : (y_[1] - y_[0]) / (x_[1] - x_[0]);
        const double right = (i + 1 < n) ? (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i])
                                         : (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
        d_[i] = limit_derivative(d_[i], left, right);
    }
}

double MonotoneCubic::operator()(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
        throw std::domain_error("MonotoneCubic: query outside grid");
    // upper_bound - 1 gives the interval start; the last node maps onto the
    // final interval.
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    i = std::min(std::max<std::size_t>(i, 1), x_.size() - 1) - 1;

    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double u = 1.0 - t;
    const double h00 = (1.0 + 2.0 * t) * u * u;
    const double h10 = t * u * u;
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace ghkad

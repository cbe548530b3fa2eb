#include "ghkad/kde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ghkad/parallel.hpp"
#include "ghkad/quadrature.hpp"

namespace ghkad {

namespace {

double ipow(double base, std::size_t n) {
    double r = 1.0, b = base;
    for (std::size_t e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// S_{d-1} * integral_0^inf profile(u) u^{d-1} du, with the radial integral cut
// at the profile's effective support.
double profile_norm_const(const CompiledKernel& kernel, std::size_t d) {
    double upper = 0.0;
    switch (kernel.spec().family) {
        case KernelFamily::Epanechnikov:
        case KernelFamily::Tophat: upper = 1.0; break;
        case KernelFamily::GaussianProfile: upper = 40.0; break;
        case KernelFamily::Exponential: upper = 800.0; break;
        case KernelFamily::GH: upper = kernel.table()->r_max(); break;
        default: throw std::invalid_argument("kde: kernel family has no radial profile");
    }
    const double dd = static_cast<double>(d);
    const double radial = integrate_adaptive(
        [&](double u) { return kernel.profile(u) * std::pow(u, dd - 1.0); }, 0.0, upper,
        1e-9, 0.0, 16, 14);
    const double sphere = std::exp(std::log(2.0) +
                                   0.5 * dd * std::log(3.141592653589793238462643) -
                                   std::lgamma(0.5 * dd));
    return sphere * radial;
}

// Sorted-input Neumaier sum: the multiset of contributions fixes the result
// exactly, whatever order the training points arrived in.
double compensated_total(std::vector<double>& vals) {
    std::sort(vals.begin(), vals.end());
    double sum = 0.0, comp = 0.0;
    for (double v : vals) {
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace

KdeModel::KdeModel(CompiledKernel kernel, Matrix train_points, double h,
                   std::optional<double> threshold)
    : kernel_(std::move(kernel)),
      train_points_(std::move(train_points)),
      h_(h),
      threshold_(threshold) {
    if (train_points_.rows == 0 || train_points_.cols == 0)
        throw std::invalid_argument("kde: empty training set");
    if (!std::isfinite(h_) || h_ <= 0.0)
        throw std::invalid_argument("kde: bandwidth must be positive");
    for (double v : train_points_.data)
        if (!std::isfinite(v)) throw std::invalid_argument("kde: non-finite point entry");

    block_ = simd::PointBlock::from_matrix(train_points_);
    norm_const_ = profile_norm_const(kernel_, dim());
    inv_scale_ = 1.0 / (static_cast<double>(train_points_.rows) * ipow(h_, dim()) *
                        norm_const_);
}

double KdeModel::density(const double* x, std::size_t d) const {
    if (d != dim()) throw std::invalid_argument("kde density: dimension mismatch");
    const std::size_t n = train_points_.rows;
    std::vector<double> vals(n);
    simd::squared_distances(block_, 0, n, x, vals.data());
    for (double& v : vals) v = kernel_.profile(std::sqrt(v) / h_);
    return compensated_total(vals) * inv_scale_;
}

double KdeModel::density(const std::vector<double>& x) const {
    return density(x.data(), x.size());
}

double KdeModel::anomaly_score(const double* x, std::size_t d) const {
    return -std::log(std::max(density(x, d), 1e-300));
}

double KdeModel::anomaly_score(const std::vector<double>& x) const {
    return anomaly_score(x.data(), x.size());
}

std::vector<double> KdeModel::anomaly_scores(const Matrix& queries) const {
    if (queries.cols != dim())
        throw std::invalid_argument("kde scores: dimension mismatch");
    std::vector<double> out(queries.rows);
    parallel_for(queries.rows, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = anomaly_score(queries.row(i), queries.cols);
    });
    return out;
}

KdeModel fit_kde(const Matrix& points, const KernelSpec& spec, double h) {
    spec.validate();
    if (!spec.is_profile_only() && !spec.is_gh())
        throw std::invalid_argument("kde: kernel family has no radial profile");
    return KdeModel(CompiledKernel(spec), points, h);
}

double scott_bandwidth(const Matrix& points) {
    if (points.rows == 0 || points.cols == 0)
        throw std::invalid_argument("kde: empty training set");
    const double n = static_cast<double>(points.rows);
    const double d = static_cast<double>(points.cols);
    double mean_sd = 0.0;
    for (std::size_t j = 0; j < points.cols; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < points.rows; ++i) mean += points(i, j);
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < points.rows; ++i) {
            const double c = points(i, j) - mean;
            var += c * c;
        }
        mean_sd += std::sqrt(var / n);
    }
    mean_sd /= d;
    return std::pow(n, -1.0 / (d + 4.0)) * mean_sd;
}

double choose_threshold(KdeModel& model, double contamination) {
    if (!(contamination > 0.0 && contamination < 1.0))
        throw std::invalid_argument("kde threshold: contamination must be in (0, 1)");
    std::vector<double> scores = model.anomaly_scores(model.train_points());
    if (scores.empty()) throw std::invalid_argument("kde threshold: empty training set");
    std::sort(scores.begin(), scores.end());
    const double n = static_cast<double>(scores.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil((1.0 - contamination) * n));
    rank = std::min(std::max<std::size_t>(rank, 1), scores.size());
    const double t = scores[rank - 1];
    model.set_threshold(t);
    return t;
}

double density(const KdeModel& model, const std::vector<double>& x) {
    return model.density(x);
}

double anomaly_score(const KdeModel& model, const std::vector<double>& x) {
    return model.anomaly_score(x);
}

}  // namespace ghkad

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ghkad/kernels.hpp"
#include "ghkad/matrix.hpp"
#include "ghkad/simd.hpp"

namespace ghkad {

// Radial kernel density estimate: density(x) is the mean of
// profile(||x - x_i|| / h) over training points, scaled by 1/(h^d C_d) with
// C_d the d-dimensional normalization of the profile (computed by quadrature
// at fit time). Immutable once built; concurrent queries are fine.
class KdeModel {
public:
    KdeModel(CompiledKernel kernel, Matrix train_points, double h,
             std::optional<double> threshold = std::nullopt);

    const CompiledKernel& kernel() const { return kernel_; }
    const KernelSpec& spec() const { return kernel_.spec(); }
    const Matrix& train_points() const { return train_points_; }
    std::size_t dim() const { return train_points_.cols; }
    double bandwidth() const { return h_; }
    double norm_const() const { return norm_const_; }
    std::optional<double> threshold() const { return threshold_; }
    void set_threshold(double t) { threshold_ = t; }

    // Per-point contributions are sorted before compensated summation, so the
    // result is bitwise independent of training-point order.
    double density(const double* x, std::size_t d) const;
    double density(const std::vector<double>& x) const;

    // S(x) = -log(max(density, 1e-300)): higher = more anomalous, saturating
    // instead of overflowing beyond all support.
    double anomaly_score(const double* x, std::size_t d) const;
    double anomaly_score(const std::vector<double>& x) const;

    // Scores for each row, query points partitioned across workers with
    // per-point determinism.
    std::vector<double> anomaly_scores(const Matrix& queries) const;

private:
    CompiledKernel kernel_;
    Matrix train_points_;
    simd::PointBlock block_;
    double h_ = 0.0;
    double norm_const_ = 0.0;
    double inv_scale_ = 0.0;  // 1 / (n h^d norm_const)
    std::optional<double> threshold_;
};

// Stores points and precomputes the profile normalization; no other training
// work. The spec must be a radial family (a KDE profile or GH).
KdeModel fit_kde(const Matrix& points, const KernelSpec& spec, double h);

// Scott-style default bandwidth n^{-1/(d+4)} times the mean per-dimension
// standard deviation.
double scott_bandwidth(const Matrix& points);

// (1 - contamination)-quantile (nearest rank) of the anomaly score over the
// training points; stored in the model. Rule: score > threshold => anomaly.
double choose_threshold(KdeModel& model, double contamination);

double density(const KdeModel& model, const std::vector<double>& x);
double anomaly_score(const KdeModel& model, const std::vector<double>& x);

}  // namespace ghkad

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ghkad/ghdist.hpp"
#include "ghkad/interp.hpp"
#include "ghkad/matrix.hpp"
#include "ghkad/simd.hpp"

namespace ghkad {

enum class KernelFamily {
    RBF,
    Polynomial,
    Linear,
    Sigmoid,
    GH,
    GaussianProfile,
    Epanechnikov,
    Tophat,
    Exponential,
};

// Tagged description of one kernel and its hyperparameters. The last four
// families are the closed-form KDE radial profiles.
struct KernelSpec {
    KernelFamily family = KernelFamily::RBF;
    double gamma_rbf = 1.0;            // RBF
    int degree = 3;                    // Polynomial
    double scale = 1.0, coef0 = 0.0;   // Polynomial / Sigmoid
    std::optional<GHVariant> variant;  // GH
    double lengthscale = 1.0;          // GH

    static KernelSpec rbf(double gamma);
    static KernelSpec linear();
    static KernelSpec polynomial(int degree, double scale, double coef0);
    static KernelSpec sigmoid(double scale, double coef0);
    static KernelSpec gh(const GHVariant& variant, double lengthscale);
    static KernelSpec profile(KernelFamily family);

    bool is_gh() const { return family == KernelFamily::GH; }
    bool is_profile_only() const;
    // Depends only on ||x - y||: the GH and RBF families plus the profiles.
    bool stationary() const;
    // Free parameters of the kernel function itself (distribution parameters
    // plus lengthscale for GH); the model-level knob (nu or h) is counted
    // separately by the evaluation layer.
    std::size_t n_kernel_params() const;
    std::string describe() const;
    void validate() const;
};

// Autocorrelation of the variant's density, k(r) = integral f(v) f(v-r) dv,
// by adaptive quadrature with relative tolerance eps. Even in r for every
// variant, including skewed ones. This is the exact integrand the table
// below samples; tail studies evaluate it directly because the table clamps
// to zero beyond its cutoff.
double gh_autocorrelation(const GHVariant& variant, double r, double eps);

// Sampled autocorrelation on a quadratically clustered grid over [0, r_max]
// with a monotone cubic interpolant between nodes.
class GHKernelTable {
public:
    double operator()(double r) const;  // raw k(r); 0 beyond r_max
    double normalized(double r) const { return (*this)(r) / k0_; }
    double k0() const { return k0_; }
    double r_max() const { return r_max_; }
    const std::vector<double>& r_values() const { return r_; }
    const std::vector<double>& k_values() const { return k_; }

private:
    friend GHKernelTable build_gh_table(const GHVariant& variant, double epsilon);
    GHKernelTable() = default;

    std::vector<double> r_, k_;
    double k0_ = 0.0, r_max_ = 0.0;
    std::optional<MonotoneCubic> interp_;
};

// Tabulates k(r) with r_max grown until k(r_max)/k(0) < 1e-12; each node is
// an adaptive quadrature to relative epsilon.
GHKernelTable build_gh_table(const GHVariant& variant, double epsilon);

// A KernelSpec plus whatever precomputation evaluation needs (the GH table);
// evaluation afterwards is cheap, immutable, and thread-safe.
class CompiledKernel {
public:
    explicit CompiledKernel(const KernelSpec& spec, double table_epsilon = 1e-9);

    const KernelSpec& spec() const { return spec_; }
    const GHKernelTable* table() const { return table_.get(); }

    // Pairwise kernel value; GH kernels are normalized so eval(x, x) = 1.
    double eval(const double* x, const double* y, std::size_t d) const;
    double eval(const std::vector<double>& x, const std::vector<double>& y) const;

    // Kernel values of one query against block points [offset, offset+count);
    // same arithmetic as eval, element for element.
    void eval_batch(const simd::PointBlock& block, std::size_t offset, std::size_t count,
                    const double* q, double* out) const;

    // KDE radial profile at u >= 0 (profile families and GH only).
    double profile(double u) const;

private:
    KernelSpec spec_;
    std::shared_ptr<const GHKernelTable> table_;
};

double kernel_eval(const CompiledKernel& kernel, const std::vector<double>& x,
                   const std::vector<double>& y);
double kde_profile_eval(const CompiledKernel& kernel, double u);

// Symmetric kernel matrix. Eigenvalue bounds are computed on demand and
// cached: a dense solve up to a couple thousand points, a Lanczos estimate
// of the spectrum ends beyond that.
class GramMatrix {
public:
    std::size_t n() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    const std::vector<double>& values() const { return values_; }

    double min_eig_estimate();
    double max_eig_estimate();

    // Lemma-style empirical check: smallest eigenvalue within
    // -rel_tol * largest. When it fails, adds |min_eig| + 1e-10 of diagonal
    // jitter so downstream solvers stay stable, and reports that it did.
    bool ridge_repair(double rel_tol = 1e-8);

private:
    friend GramMatrix gram(const CompiledKernel& kernel, const Matrix& points);
    GramMatrix() = default;
    void solve_eigs();

    std::size_t n_ = 0;
    std::vector<double> values_;
    std::optional<std::pair<double, double>> eig_range_;  // (min, max)
};

// Assembles the kernel matrix, each unordered pair computed once; row blocks
// may run on several workers with identical results.
GramMatrix gram(const CompiledKernel& kernel, const Matrix& points);

}  // namespace ghkad

#pragma once

#include <cstddef>
#include <vector>

#include "ghkad/kernels.hpp"
#include "ghkad/matrix.hpp"
#include "ghkad/simd.hpp"

namespace ghkad {

struct OcsvmConfig {
    double nu = 0.1;           // bound fraction, in (0, 1]
    double tol = 1e-6;         // KKT violation stop threshold
    std::size_t max_iter = 0;  // 0 means 100 * n
    bool record_objective = false;  // keep the per-iteration dual objective

    void validate() const;
};

struct OcsvmDiagnostics {
    std::size_t iterations = 0;
    double kkt_violation = 0.0;
    bool converged = false;
    bool ridge_repaired = false;
    bool rho_median_fallback = false;
    std::vector<double> objective_trace;  // filled when record_objective is set
};

// Raw dual solve over a prebuilt (already repaired) Gram matrix:
//   min ½ αᵀGα − Σ α_i G_ii   s.t.   0 ≤ α_i ≤ 1/(νn),  Σα = 1
// by maximal-violating-pair coordinate steps, each two-variable subproblem
// solved in closed form. Exposed separately so the solver can be exercised
// kernel-independently.
struct QpResult {
    std::vector<double> alphas;
    std::size_t iterations = 0;
    double kkt_violation = 0.0;
    bool converged = false;
    std::vector<double> objective_trace;
};
QpResult solve_ocsvm_dual(const GramMatrix& gram, double nu, double tol,
                          std::size_t max_iter, bool record_objective = false);

// Fitted one-class SVM: dual coefficients over retained training points plus
// the offset rho. Immutable; scoring is safe from several threads at once.
class OcsvmModel {
public:
    OcsvmModel(CompiledKernel kernel, Matrix train_points, std::vector<double> alphas,
               double rho, double support_tol, OcsvmDiagnostics diagnostics);

    const CompiledKernel& kernel() const { return kernel_; }
    const KernelSpec& kernel_spec() const { return kernel_.spec(); }
    const Matrix& train_points() const { return train_points_; }
    const std::vector<double>& alphas() const { return alphas_; }
    double rho() const { return rho_; }
    double support_tol() const { return support_tol_; }
    const std::vector<std::size_t>& support_indices() const { return support_indices_; }
    const OcsvmDiagnostics& diagnostics() const { return diagnostics_; }

    // f(x) = Σ_i α_i K(x_i, x) − ρ; positive inside, negative anomalous.
    double decision(const double* x, std::size_t d) const;
    double decision(const std::vector<double>& x) const;
    // Anomaly score, higher = more anomalous: −decision.
    double score(const std::vector<double>& x) const;

private:
    CompiledKernel kernel_;
    Matrix train_points_;
    std::vector<double> alphas_;
    double rho_ = 0.0;
    double support_tol_ = 0.0;
    std::vector<std::size_t> support_indices_;
    OcsvmDiagnostics diagnostics_;

    // Support-vector slice, cached dimension-major for fast scoring.
    simd::PointBlock sv_block_;
    std::vector<double> sv_alphas_;
};

// Assembles the Gram matrix for the spec (building the GH table if needed),
// applies the PSD check/repair, solves the dual, and derives rho as the mean
// of Σ_j α_j K(x_j, x_i) over margin support vectors (median over all support
// vectors when no coefficient is strictly between the bounds).
OcsvmModel fit(const Matrix& points, const KernelSpec& spec, const OcsvmConfig& config);

double decision(const OcsvmModel& model, const std::vector<double>& x);
double score(const OcsvmModel& model, const std::vector<double>& x);

}  // namespace ghkad

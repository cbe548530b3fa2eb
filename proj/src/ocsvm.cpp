#include "ghkad/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghkad {

void OcsvmConfig::validate() const {
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("ocsvm: nu must be in (0, 1]");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw std::invalid_argument("ocsvm: tol must be positive");
}

namespace {

// Dual objective from the gradient identity g = Gα − diag(G):
// F = ½αᵀGα − Σα_i G_ii = ½ Σ α_i (g_i − G_ii).
double dual_objective(const GramMatrix& gram, const std::vector<double>& alpha,
                      const std::vector<double>& grad) {
    double f = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        f += 0.5 * alpha[i] * (grad[i] - gram.at(i, i));
    return f;
}

}  // namespace

QpResult solve_ocsvm_dual(const GramMatrix& gram, double nu, double tol,
                          std::size_t max_iter, bool record_objective) {
    const std::size_t n = gram.n();
    if (n < 2) throw std::invalid_argument("ocsvm: need at least 2 training points");
    if (!(nu > 0.0 && nu <= 1.0))
        throw std::invalid_argument("ocsvm: nu must be in (0, 1]");
    if (nu * static_cast<double>(n) < 1.0)
        throw std::invalid_argument("ocsvm: infeasible nu (n * nu must be >= 1)");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw std::invalid_argument("ocsvm: tol must be positive");
    if (max_iter == 0) max_iter = 100 * n;

    const double box = 1.0 / (nu * static_cast<double>(n));

    // Deterministic feasible start: leading coefficients at the box, one
    // fractional remainder. floor guarantees the remainder also fits the box.
    QpResult res;
    std::vector<double>& alpha = res.alphas;
    alpha.assign(n, 0.0);
    const std::size_t full =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(nu * n)));
    double remaining = 1.0;
    for (std::size_t i = 0; i < full; ++i) {
        alpha[i] = box;
        remaining -= box;
    }
    if (remaining > 0.0 && full < n) alpha[full] = std::min(remaining, box);

    // g_i = (Gα)_i − G_ii, maintained incrementally after the dense start.
    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = -gram.at(i, i);
        for (std::size_t j = 0; j <= full && j < n; ++j)
            acc += gram.at(i, j) * alpha[j];
        grad[i] = acc;
    }

    if (record_objective)
        res.objective_trace.push_back(dual_objective(gram, alpha, grad));

    while (true) {
        // Mass may move into i (α_i below the box) and out of j (α_j above
        // zero); the most violating pair extremizes the gradient over those
        // index sets. Strict comparisons keep ties at the lowest index.
        std::size_t i = n, j = n;
        double gi = std::numeric_limits<double>::infinity();
        double gj = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (alpha[k] < box && grad[k] < gi) {
                gi = grad[k];
                i = k;
            }
            if (alpha[k] > 0.0 && grad[k] > gj) {
                gj = grad[k];
                j = k;
            }
        }
        const double violation = (i < n && j < n) ? gj - gi : 0.0;
        res.kkt_violation = violation;
        if (violation <= tol) {
            res.converged = true;
            break;
        }
        if (res.iterations >= max_iter) break;

        // Two-variable subproblem along α_i += t, α_j −= t: the unconstrained
        // minimum is t* = (g_j − g_i)/η with curvature η = G_ii − 2G_ij + G_jj,
        // clipped to both boxes. η ≥ 0 after the PSD repair; a flat direction
        // takes the full feasible step.
        const double eta = gram.at(i, i) - 2.0 * gram.at(i, j) + gram.at(j, j);
        const double t_max = std::min(box - alpha[i], alpha[j]);
        double t = t_max;
        if (eta > 1e-14 * std::max(1.0, gram.at(i, i) + gram.at(j, j)))
            t = std::min(violation / eta, t_max);

        // Preserve the pair sum exactly so Σα cannot drift by more than
        // rounding; land exactly on a bound when the step is clipped.
        const double pair_sum = alpha[i] + alpha[j];
        const double ai_old = alpha[i], aj_old = alpha[j];
        double ai = std::min({alpha[i] + t, box, pair_sum});
        alpha[i] = ai;
        alpha[j] = std::max(0.0, pair_sum - ai);

        const double di = alpha[i] - ai_old, dj = alpha[j] - aj_old;
        for (std::size_t k = 0; k < n; ++k)
            grad[k] += di * gram.at(i, k) + dj * gram.at(j, k);

        ++res.iterations;
        if (record_objective)
            res.objective_trace.push_back(dual_objective(gram, alpha, grad));
    }
    return res;
}

OcsvmModel::OcsvmModel(CompiledKernel kernel, Matrix train_points,
                       std::vector<double> alphas, double rho, double support_tol,
                       OcsvmDiagnostics diagnostics)
    : kernel_(std::move(kernel)),
      train_points_(std::move(train_points)),
      alphas_(std::move(alphas)),
      rho_(rho),
      support_tol_(support_tol),
      diagnostics_(std::move(diagnostics)) {
    if (alphas_.size() != train_points_.rows)
        throw std::invalid_argument("ocsvm model: one coefficient per training point");
    if (!std::isfinite(rho_))
        throw std::invalid_argument("ocsvm model: rho must be finite");

    for (std::size_t i = 0; i < alphas_.size(); ++i)
        if (alphas_[i] > support_tol_) support_indices_.push_back(i);

    const std::size_t d = train_points_.cols;
    Matrix sv(support_indices_.size(), d);
    sv_alphas_.reserve(support_indices_.size());
    for (std::size_t s = 0; s < support_indices_.size(); ++s) {
        const double* src = train_points_.row(support_indices_[s]);
        std::copy(src, src + d, sv.row(s));
        sv_alphas_.push_back(alphas_[support_indices_[s]]);
    }
    sv_block_ = simd::PointBlock::from_matrix(sv);
}

double OcsvmModel::decision(const double* x, std::size_t d) const {
    if (d != train_points_.cols)
        throw std::invalid_argument("ocsvm decision: dimension mismatch");
    const std::size_t m = sv_alphas_.size();
    std::vector<double> k(m);
    kernel_.eval_batch(sv_block_, 0, m, x, k.data());
    double acc = 0.0;
    for (std::size_t s = 0; s < m; ++s) acc = std::fma(sv_alphas_[s], k[s], acc);
    return acc - rho_;
}

double OcsvmModel::decision(const std::vector<double>& x) const {
    return decision(x.data(), x.size());
}

double OcsvmModel::score(const std::vector<double>& x) const { return -decision(x); }

OcsvmModel fit(const Matrix& points, const KernelSpec& spec, const OcsvmConfig& config) {
    config.validate();
    if (points.rows < 2)
        throw std::invalid_argument("ocsvm: need at least 2 training points");
    if (config.nu * static_cast<double>(points.rows) < 1.0)
        throw std::invalid_argument("ocsvm: infeasible nu (n * nu must be >= 1)");

    const CompiledKernel kernel(spec);
    GramMatrix g = gram(kernel, points);

    const std::size_t n = g.n();
    std::vector<double> diag0(n);
    for (std::size_t i = 0; i < n; ++i) diag0[i] = g.at(i, i);

    OcsvmDiagnostics diag;
    diag.ridge_repaired = g.ridge_repair();

    QpResult qp = solve_ocsvm_dual(g, config.nu, config.tol, config.max_iter,
                                   config.record_objective);
    diag.iterations = qp.iterations;
    diag.kkt_violation = qp.kkt_violation;
    diag.converged = qp.converged;
    diag.objective_trace = std::move(qp.objective_trace);

    // Margin values m_i = Σ_j α_j K(x_j, x_i) from the original kernel: back
    // out any repair jitter on the diagonal so rho matches what decision()
    // will actually compute.
    std::vector<double> margin(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = -(g.at(i, i) - diag0[i]) * qp.alphas[i];
        for (std::size_t j = 0; j < n; ++j) acc += qp.alphas[j] * g.at(i, j);
        margin[i] = acc;
    }

    const double box = 1.0 / (config.nu * static_cast<double>(n));
    std::vector<double> on_margin, on_support;
    for (std::size_t i = 0; i < n; ++i) {
        if (qp.alphas[i] > config.tol) on_support.push_back(margin[i]);
        if (qp.alphas[i] > config.tol && qp.alphas[i] < box - config.tol)
            on_margin.push_back(margin[i]);
    }
    double rho = 0.0;
    if (!on_margin.empty()) {
        for (double v : on_margin) rho += v;
        rho /= static_cast<double>(on_margin.size());
    } else if (!on_support.empty()) {
        diag.rho_median_fallback = true;
        std::sort(on_support.begin(), on_support.end());
        const std::size_t mid = on_support.size() / 2;
        rho = on_support.size() % 2 ? on_support[mid]
                                    : 0.5 * (on_support[mid - 1] + on_support[mid]);
    } else {
        diag.rho_median_fallback = true;
    }

    return OcsvmModel(kernel, points, std::move(qp.alphas), rho, config.tol,
                      std::move(diag));
}

double decision(const OcsvmModel& model, const std::vector<double>& x) {
    return model.decision(x);
}

double score(const OcsvmModel& model, const std::vector<double>& x) {
    return model.score(x);
}

}  // namespace ghkad

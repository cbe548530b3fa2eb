#include "ghkad/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "ghkad/errors.hpp"
#include "ghkad/parallel.hpp"
#include "ghkad/quadrature.hpp"

namespace ghkad {

namespace {

void require_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be finite");
}

double ipow(double base, int n) {
    double r = 1.0, b = base;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

KernelSpec KernelSpec::rbf(double gamma) {
    KernelSpec s;
    s.family = KernelFamily::RBF;
    s.gamma_rbf = gamma;
    s.validate();
    return s;
}

KernelSpec KernelSpec::linear() {
    KernelSpec s;
    s.family = KernelFamily::Linear;
    return s;
}

KernelSpec KernelSpec::polynomial(int degree, double scale, double coef0) {
    KernelSpec s;
    s.family = KernelFamily::Polynomial;
    s.degree = degree;
    s.scale = scale;
    s.coef0 = coef0;
    s.validate();
    return s;
}

KernelSpec KernelSpec::sigmoid(double scale, double coef0) {
    KernelSpec s;
    s.family = KernelFamily::Sigmoid;
    s.scale = scale;
    s.coef0 = coef0;
    s.validate();
    return s;
}

KernelSpec KernelSpec::gh(const GHVariant& variant, double lengthscale) {
    KernelSpec s;
    s.family = KernelFamily::GH;
    s.variant = variant;
    s.lengthscale = lengthscale;
    s.validate();
    return s;
}

KernelSpec KernelSpec::profile(KernelFamily family) {
    KernelSpec s;
    s.family = family;
    if (!s.is_profile_only())
        throw std::invalid_argument("KernelSpec::profile: not a profile family");
    return s;
}

bool KernelSpec::is_profile_only() const {
    switch (family) {
        case KernelFamily::GaussianProfile:
        case KernelFamily::Epanechnikov:
        case KernelFamily::Tophat:
        case KernelFamily::Exponential: return true;
        default: return false;
    }
}

bool KernelSpec::stationary() const {
    return family == KernelFamily::RBF || family == KernelFamily::GH || is_profile_only();
}

std::size_t KernelSpec::n_kernel_params() const {
    switch (family) {
        case KernelFamily::RBF: return 1;
        case KernelFamily::Polynomial: return 3;
        case KernelFamily::Linear: return 0;
        case KernelFamily::Sigmoid: return 2;
        case KernelFamily::GH: return n_free_params(*variant) + 1;  // + lengthscale
        default: return 0;
    }
}

std::string KernelSpec::describe() const {
    switch (family) {
        case KernelFamily::RBF: return "rbf(gamma=" + num(gamma_rbf) + ")";
        case KernelFamily::Polynomial:
            return "polynomial(degree=" + std::to_string(degree) + ", scale=" + num(scale) +
                   ", coef0=" + num(coef0) + ")";
        case KernelFamily::Linear: return "linear";
        case KernelFamily::Sigmoid:
            return "sigmoid(scale=" + num(scale) + ", coef0=" + num(coef0) + ")";
        case KernelFamily::GH:
            return "gh(" + ghkad::describe(*variant) + ", s=" + num(lengthscale) + ")";
        case KernelFamily::GaussianProfile: return "gaussian_profile";
        case KernelFamily::Epanechnikov: return "epanechnikov";
        case KernelFamily::Tophat: return "tophat";
        case KernelFamily::Exponential: return "exponential";
    }
    throw std::logic_error("KernelSpec::describe: unknown family");
}

void KernelSpec::validate() const {
    switch (family) {
        case KernelFamily::RBF: require_positive(gamma_rbf, "rbf gamma"); break;
        case KernelFamily::Polynomial:
            if (degree < 1)
                throw std::invalid_argument("polynomial kernel: degree must be >= 1");
            require_positive(scale, "polynomial scale");
            require_finite(coef0, "polynomial coef0");
            break;
        case KernelFamily::Sigmoid:
            require_positive(scale, "sigmoid scale");
            require_finite(coef0, "sigmoid coef0");
            break;
        case KernelFamily::GH:
            if (!variant) throw std::invalid_argument("gh kernel: missing variant");
            require_positive(lengthscale, "gh lengthscale");
            break;
        default: break;  // linear and the profiles carry no parameters
    }
}

double gh_autocorrelation(const GHVariant& variant, double r, double eps) {
    require_finite(r, "autocorrelation separation");
    if (!std::isfinite(eps) || eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("autocorrelation tolerance must be in (0, 1)");
    r = std::fabs(r);  // k(r) = k(-r): substitute w = v - r

    const LogDensity f(variant);
    const double c = variant.center();
    const double m = c + 0.5 * r;
    // Log-shift: evaluate exp(log f(v) + log f(v-r) - ls) with ls an estimate
    // of the product's maximum, so the integrand is O(1) near its peak even
    // deep in the tail. The midpoint probe is exact for symmetric variants;
    // the two end probes cover skewed ones, where the product peaks near one
    // of the density centers instead.
    double ls = f(m) + f(m - r);
    ls = std::max(ls, f(c) + f(c - r));
    ls = std::max(ls, f(c + r) + f(c));

    if (variant.tag() == GHTag::StudentT) {
        // Polynomial tails: substitute v = m + scale sinh(w) so the product's
        // tails decay exponentially in w. The peaks land at |w| = asinh(r/2s).
        const StudentTParams& p = variant.student_params();
        const double w_max = std::asinh(0.5 * r / p.scale) +
                             (std::log(1e12) + 20.0) / (2.0 * p.degrees + 1.0) + 3.0;
        auto g = [&](double w) {
            const double v = m + p.scale * std::sinh(w);
            return std::exp(f(v) + f(v - r) - ls) * p.scale * std::cosh(w);
        };
        return integrate_adaptive(g, -w_max, w_max, eps, 0.0, 16, 16) * std::exp(ls);
    }

    // Both factors hold all but 1e-12 of their mass inside the window union
    // [lo, hi + r]; beyond it the product decays at twice the single density's
    // rate.
    const TailWindow win = integration_window(variant, 1e-12);
    auto g = [&](double v) { return std::exp(f(v) + f(v - r) - ls); };
    return integrate_adaptive(g, win.lo, win.hi + r, eps, 0.0, 16, 16) * std::exp(ls);
}

double GHKernelTable::operator()(double r) const {
    if (!interp_) throw std::logic_error("kernel table: not built");
    if (!(r >= 0.0)) throw std::domain_error("kernel table: r must be >= 0");
    if (r > r_max_) return 0.0;
    return std::max(0.0, (*interp_)(r));
}

GHKernelTable build_gh_table(const GHVariant& variant, double epsilon) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon > 1e-2)
        throw std::invalid_argument("kernel table tolerance must be in (0, 1e-2]");

    GHKernelTable t;
    t.k0_ = gh_autocorrelation(variant, 0.0, epsilon);
    if (!(t.k0_ > 0.0)) throw quadrature_error("kernel table: k(0) is not positive");

    // Initial extent from the variant's own width, then doubled until the
    // tail has dropped below 1e-12 of the peak.
    double r_max = 0.0;
    switch (variant.tag()) {
        case GHTag::GaussianReduction: r_max = 4.0 * variant.gaussian_params().sigma; break;
        case GHTag::StudentT: r_max = 4.0 * variant.student_params().scale; break;
        default: r_max = 4.0 * (variant.gh().delta + 1.0 / tail_decay_rate(variant)); break;
    }
    while (gh_autocorrelation(variant, r_max, epsilon) >= 1e-12 * t.k0_) {
        r_max *= 2.0;
        if (r_max > 1e9)
            throw quadrature_error("kernel table: tail has not reached 1e-12 of peak by r = 1e9");
    }

    // Quadratically clustered nodes: half of them land in [0, r_max/4], where
    // the kernel actually bends.
    const std::size_t segments = 2048;
    t.r_.resize(segments + 1);
    t.k_.resize(segments + 1);
    t.r_max_ = r_max;
    t.r_[0] = 0.0;
    t.k_[0] = t.k0_;
    for (std::size_t j = 1; j <= segments; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(segments);
        t.r_[j] = r_max * u * u;
        t.k_[j] = gh_autocorrelation(variant, t.r_[j], epsilon);
    }
    t.interp_.emplace(t.r_, t.k_);
    return t;
}

CompiledKernel::CompiledKernel(const KernelSpec& spec, double table_epsilon) : spec_(spec) {
    spec_.validate();
    if (spec_.is_gh())
        table_ = std::make_shared<const GHKernelTable>(build_gh_table(*spec_.variant, table_epsilon));
}

namespace {

// Shared final step of pairwise evaluation: raw is the squared distance for
// the radial families and the dot product otherwise. eval and eval_batch both
// funnel through here so they agree element for element.
double transform_raw(const KernelSpec& spec, const GHKernelTable* table, double raw) {
    switch (spec.family) {
        case KernelFamily::RBF: return std::exp(-spec.gamma_rbf * raw);
        case KernelFamily::GH: return table->normalized(std::sqrt(raw) / spec.lengthscale);
        case KernelFamily::Linear: return raw;
        case KernelFamily::Polynomial: return ipow(spec.scale * raw + spec.coef0, spec.degree);
        case KernelFamily::Sigmoid: return std::tanh(spec.scale * raw + spec.coef0);
        default: throw std::invalid_argument("profile kernels have no pairwise form");
    }
}

bool uses_squared_distance(KernelFamily family) {
    return family == KernelFamily::RBF || family == KernelFamily::GH;
}

}  // namespace

double CompiledKernel::eval(const double* x, const double* y, std::size_t d) const {
    double acc = 0.0;
    if (uses_squared_distance(spec_.family)) {
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = x[k] - y[k];
            acc = std::fma(diff, diff, acc);
        }
    } else {
        for (std::size_t k = 0; k < d; ++k) acc = std::fma(x[k], y[k], acc);
    }
    return transform_raw(spec_, table_.get(), acc);
}

double CompiledKernel::eval(const std::vector<double>& x, const std::vector<double>& y) const {
    if (x.size() != y.size())
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    return eval(x.data(), y.data(), x.size());
}

void CompiledKernel::eval_batch(const simd::PointBlock& block, std::size_t offset,
                                std::size_t count, const double* q, double* out) const {
    if (offset + count > block.n)
        throw std::invalid_argument("eval_batch: window exceeds block");
    if (count == 0) return;
    if (uses_squared_distance(spec_.family))
        simd::squared_distances(block, offset, count, q, out);
    else if (!spec_.is_profile_only())
        simd::dot_products(block, offset, count, q, out);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = transform_raw(spec_, table_.get(), out[i]);
}

double CompiledKernel::profile(double u) const {
    if (!(u >= 0.0)) throw std::domain_error("kde profile: u must be >= 0");
    switch (spec_.family) {
        case KernelFamily::GaussianProfile: return std::exp(-0.5 * u * u);
        case KernelFamily::Epanechnikov: return std::max(0.0, 1.0 - u * u);
        case KernelFamily::Tophat: return u <= 1.0 ? 1.0 : 0.0;
        case KernelFamily::Exponential: return std::exp(-u);
        case KernelFamily::GH: return table_->normalized(u);
        default: throw std::invalid_argument("kernel family has no radial profile");
    }
}

double kernel_eval(const CompiledKernel& kernel, const std::vector<double>& x,
                   const std::vector<double>& y) {
    return kernel.eval(x, y);
}

double kde_profile_eval(const CompiledKernel& kernel, double u) { return kernel.profile(u); }

void GramMatrix::solve_eigs() {
    if (eig_range_) return;
    const Eigen::Index n = static_cast<Eigen::Index>(n_);
    Eigen::Map<const Eigen::MatrixXd> m(values_.data(), n, n);

    // The dense solve is exact but cubic; past a few thousand points it would
    // dominate training, so large matrices switch to Lanczos with full
    // reorthogonalization. Extremal Ritz values converge first, which is all
    // the definiteness check consumes.
    constexpr Eigen::Index kDenseLimit = 2048;
    if (n <= kDenseLimit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("gram matrix: eigenvalue solve failed");
        eig_range_.emplace(es.eigenvalues()(0), es.eigenvalues()(n - 1));
        return;
    }

    const Eigen::Index max_steps = std::min<Eigen::Index>(n, 120);
    Eigen::MatrixXd V(n, max_steps);
    Eigen::VectorXd diag(max_steps), subdiag(max_steps);

    // Fixed pseudo-random start vector so repeated runs agree bitwise.
    {
        std::uint64_t s = 0x9e3779b97f4a7c15ULL;
        for (Eigen::Index i = 0; i < n; ++i) {
            s ^= s >> 12, s ^= s << 25, s ^= s >> 27;
            V(i, 0) = static_cast<double>(s * 0x2545f4914f6cdd1dULL >> 11) /
                          static_cast<double>(1ULL << 53) -
                      0.5;
        }
        V.col(0).normalize();
    }

    Eigen::Index k = 0;
    for (; k < max_steps; ++k) {
        Eigen::VectorXd w = m * V.col(k);
        diag(k) = V.col(k).dot(w);
        w -= diag(k) * V.col(k);
        if (k > 0) w -= subdiag(k - 1) * V.col(k - 1);
        // Full reorthogonalization keeps ghost copies of converged Ritz
        // values from appearing.
        w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
        const double norm = w.norm();
        if (k + 1 == max_steps) break;
        if (norm < 1e-12 * std::max(std::fabs(diag(0)), 1e-300)) break;  // invariant subspace
        subdiag(k) = norm;
        V.col(k + 1) = w / norm;
    }
    const Eigen::Index steps = std::min<Eigen::Index>(k + 1, max_steps);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag.head(steps), subdiag.head(steps - 1),
                              Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gram matrix: eigenvalue solve failed");
    eig_range_.emplace(es.eigenvalues()(0), es.eigenvalues()(steps - 1));
}

double GramMatrix::min_eig_estimate() {
    solve_eigs();
    return eig_range_->first;
}

double GramMatrix::max_eig_estimate() {
    solve_eigs();
    return eig_range_->second;
}

bool GramMatrix::ridge_repair(double rel_tol) {
    const double mn = min_eig_estimate();
    const double mx = max_eig_estimate();
    if (mn >= -rel_tol * std::max(mx, 0.0)) return false;
    const double jitter = std::fabs(mn) + 1e-10;
    for (std::size_t i = 0; i < n_; ++i) values_[i * n_ + i] += jitter;
    eig_range_.reset();
    return true;
}

GramMatrix gram(const CompiledKernel& kernel, const Matrix& points) {
    if (points.rows == 0 || points.cols == 0)
        throw std::invalid_argument("gram: empty point set");
    for (double v : points.data)
        if (!std::isfinite(v)) throw std::invalid_argument("gram: non-finite point entry");
    if (kernel.spec().is_profile_only())
        throw std::invalid_argument("profile kernels have no pairwise form");

    const std::size_t n = points.rows;
    GramMatrix g;
    g.n_ = n;
    g.values_.assign(n * n, 0.0);

    const simd::PointBlock block = simd::PointBlock::from_matrix(points);
    // Each row computes only its suffix [i, n) and mirrors it, so every
    // unordered pair is evaluated exactly once; both triangles then agree bit
    // for bit. A worker owns whole rows, and the mirror writes land in
    // columns < i that no other worker touches.
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> row(n);
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t count = n - i;
            kernel.eval_batch(block, i, count, points.row(i), row.data());
            for (std::size_t j = 0; j < count; ++j) {
                g.values_[i * n + (i + j)] = row[j];
                g.values_[(i + j) * n + i] = row[j];
            }
        }
    });
    return g;
}

}  // namespace ghkad

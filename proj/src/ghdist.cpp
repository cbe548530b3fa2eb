#include "ghkad/ghdist.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "ghkad/quadrature.hpp"
#include "ghkad/specfun.hpp"

namespace ghkad {

namespace {

constexpr double kLog2Pi = 1.837877066409345483560659;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

GHParams::GHParams(double lambda, double alpha, double beta, double delta, double mu)
    : lambda(lambda), alpha(alpha), beta(beta), delta(delta), mu(mu) {
    require_finite(lambda, "lambda");
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    require_finite(delta, "delta");
    require_finite(mu, "mu");
    if (!(alpha > 0.0)) throw std::invalid_argument("GHParams: alpha must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("GHParams: delta must be positive");
    if (!(std::fabs(beta) < alpha))
        throw std::invalid_argument("GHParams: |beta| must be less than alpha");
}

double GHParams::gamma() const { return std::sqrt(alpha * alpha - beta * beta); }

GaussianParams::GaussianParams(double sigma, double mu) : sigma(sigma), mu(mu) {
    require_finite(sigma, "sigma");
    require_finite(mu, "mu");
    if (!(sigma > 0.0)) throw std::invalid_argument("GaussianParams: sigma must be positive");
}

StudentTParams::StudentTParams(double degrees, double location, double scale)
    : degrees(degrees), location(location), scale(scale) {
    require_finite(degrees, "degrees");
    require_finite(location, "location");
    require_finite(scale, "scale");
    if (!(degrees > 0.0)) throw std::invalid_argument("StudentTParams: degrees must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("StudentTParams: scale must be positive");
}

LogDensity::LogDensity(const GHVariant& v) : tag_(v.tag()) {
    switch (tag_) {
        case GHTag::GaussianReduction: {
            const GaussianParams& p = v.gaussian_params();
            s_ = p.sigma;
            m_ = p.mu;
            c0_ = -0.5 * kLog2Pi - std::log(p.sigma);
            break;
        }
        case GHTag::StudentT: {
            const StudentTParams& p = v.student_params();
            nu_ = p.degrees;
            m_ = p.location;
            s_ = p.scale;
            c0_ = std::lgamma(0.5 * (nu_ + 1.0)) - std::lgamma(0.5 * nu_) -
                  0.5 * std::log(nu_ * 3.141592653589793238462643) - std::log(s_);
            break;
        }
        default: {
            const GHParams& p = v.gh();
            lambda_ = p.lambda;
            alpha_ = p.alpha;
            beta_ = p.beta;
            delta_ = p.delta;
            m_ = p.mu;
            const double g = p.gamma();
            c0_ = lambda_ * std::log(g / delta_) - 0.5 * kLog2Pi -
                  log_bessel_k(BesselOrder(lambda_), delta_ * g);
            break;
        }
    }
}

double LogDensity::operator()(double x) const {
    const double dx = x - m_;
    switch (tag_) {
        case GHTag::GaussianReduction:
            return c0_ - 0.5 * (dx / s_) * (dx / s_);
        case GHTag::StudentT: {
            const double z = dx / s_;
            return c0_ - 0.5 * (nu_ + 1.0) * std::log1p(z * z / nu_);
        }
        default: {
            const double q = std::sqrt(delta_ * delta_ + dx * dx);
            return c0_ + (lambda_ - 0.5) * std::log(q / alpha_) +
                   log_bessel_k(BesselOrder(lambda_ - 0.5), alpha_ * q) + beta_ * dx;
        }
    }
}

GHVariant::GHVariant(GHTag tag, std::variant<GHParams, GaussianParams, StudentTParams> p)
    : tag_(tag), p_(std::move(p)) {}

GHVariant GHVariant::full_gh(const GHParams& p) { return GHVariant(GHTag::FullGH, p); }

GHVariant GHVariant::gaussian(double sigma, double mu) {
    return GHVariant(GHTag::GaussianReduction, GaussianParams(sigma, mu));
}

GHVariant GHVariant::nig(double alpha, double beta, double delta, double mu) {
    return GHVariant(GHTag::NIG, GHParams(-0.5, alpha, beta, delta, mu));
}

GHVariant GHVariant::student_t(double degrees, double location, double scale) {
    return GHVariant(GHTag::StudentT, StudentTParams(degrees, location, scale));
}

GHVariant GHVariant::hyperbolic(double alpha, double beta, double delta, double mu) {
    return GHVariant(GHTag::Hyperbolic, GHParams(1.0, alpha, beta, delta, mu));
}

const GHParams& GHVariant::gh() const {
    if (!is_gh_family()) throw std::logic_error("GHVariant: not a GH-family tag");
    return std::get<GHParams>(p_);
}

const GaussianParams& GHVariant::gaussian_params() const {
    if (tag_ != GHTag::GaussianReduction)
        throw std::logic_error("GHVariant: not the Gaussian reduction");
    return std::get<GaussianParams>(p_);
}

const StudentTParams& GHVariant::student_params() const {
    if (tag_ != GHTag::StudentT) throw std::logic_error("GHVariant: not Student t");
    return std::get<StudentTParams>(p_);
}

double GHVariant::center() const {
    switch (tag_) {
        case GHTag::GaussianReduction:
            return gaussian_params().mu;
        case GHTag::StudentT:
            return student_params().location;
        default:
            return gh().mu;
    }
}

double log_pdf(const GHVariant& variant, double x) {
    require_finite(x, "x");
    return LogDensity(variant)(x);
}

double tail_decay_rate(const GHVariant& variant) {
    switch (variant.tag()) {
        case GHTag::GaussianReduction:
            return 1.0 / variant.gaussian_params().sigma;
        case GHTag::StudentT:
            throw std::invalid_argument(
                "tail_decay_rate: Student t tails are polynomial; use quantile windows");
        default: {
            const GHParams& p = variant.gh();
            return p.alpha - std::fabs(p.beta);
        }
    }
}

TailWindow integration_window(const GHVariant& variant, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("integration_window: eps must be in (0,1)");
    const double span = std::log(1.0 / eps) + 10.0;
    switch (variant.tag()) {
        case GHTag::GaussianReduction: {
            const GaussianParams& p = variant.gaussian_params();
            return {p.mu - span * p.sigma - p.sigma, p.mu + span * p.sigma + p.sigma};
        }
        case GHTag::StudentT: {
            // Quantile-style bound from the polynomial tail
            // P(Z > z) ~ A nu^{(nu-1)/2} z^{-nu}, A = Gamma((nu+1)/2) /
            // (Gamma(nu/2) sqrt(nu pi)).
            const StudentTParams& p = variant.student_params();
            const double nu = p.degrees;
            const double log_a = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                                 0.5 * std::log(nu * 3.141592653589793238462643);
            const double log_z =
                (log_a + 0.5 * (nu - 1.0) * std::log(nu) + std::log(2.0 / eps)) / nu;
            const double w = p.scale * std::exp(log_z) + 10.0 * p.scale;
            return {p.location - w, p.location + w};
        }
        default: {
            const GHParams& p = variant.gh();
            const double rate_right = p.alpha - p.beta;
            const double rate_left = p.alpha + p.beta;
            return {p.mu - span / rate_left - p.delta, p.mu + span / rate_right + p.delta};
        }
    }
}

double pdf_normalization_check(const GHVariant& variant) {
    const LogDensity f(variant);
    if (variant.tag() == GHTag::StudentT) {
        // Polynomial tails: substitute x = location + scale sinh(w) so the
        // transformed integrand decays exponentially in w.
        const StudentTParams& p = variant.student_params();
        const double w_max = (std::log(1e12) + 10.0) / p.degrees + 5.0;
        auto g = [&](double w) {
            const double s = std::sinh(w);
            return std::exp(f(p.location + p.scale * s)) * p.scale * std::cosh(w);
        };
        return integrate_adaptive(g, -w_max, w_max, 1e-9, 0.0, 16, 14);
    }
    const TailWindow win = integration_window(variant, 1e-12);
    return integrate_adaptive([&](double x) { return std::exp(f(x)); }, win.lo, win.hi,
                              1e-9, 0.0, 16, 14);
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string describe(const GHVariant& variant) {
    switch (variant.tag()) {
        case GHTag::GaussianReduction: {
            const GaussianParams& p = variant.gaussian_params();
            return "gaussian(sigma=" + num(p.sigma) + ", mu=" + num(p.mu) + ")";
        }
        case GHTag::StudentT: {
            const StudentTParams& p = variant.student_params();
            return "student_t(nu=" + num(p.degrees) + ", loc=" + num(p.location) +
                   ", scale=" + num(p.scale) + ")";
        }
        case GHTag::NIG: {
            const GHParams& p = variant.gh();
            return "nig(alpha=" + num(p.alpha) + ", beta=" + num(p.beta) +
                   ", delta=" + num(p.delta) + ", mu=" + num(p.mu) + ")";
        }
        case GHTag::Hyperbolic: {
            const GHParams& p = variant.gh();
            return "hyperbolic(alpha=" + num(p.alpha) + ", beta=" + num(p.beta) +
                   ", delta=" + num(p.delta) + ", mu=" + num(p.mu) + ")";
        }
        default: {
            const GHParams& p = variant.gh();
            return "full_gh(lambda=" + num(p.lambda) + ", alpha=" + num(p.alpha) +
                   ", beta=" + num(p.beta) + ", delta=" + num(p.delta) +
                   ", mu=" + num(p.mu) + ")";
        }
    }
}

std::size_t n_free_params(const GHVariant& variant) {
    switch (variant.tag()) {
        case GHTag::GaussianReduction: return 2;
        case GHTag::StudentT: return 3;
        case GHTag::NIG: return 4;
        case GHTag::Hyperbolic: return 4;
        default: return 5;
    }
}

}  // namespace ghkad

#pragma once

#include <cstddef>
#include <string>
#include <variant>

namespace ghkad {

// Five-parameter generalized hyperbolic parameter set. gamma() is always
// recomputed from alpha and beta so it can never go stale.
struct GHParams {
    double lambda, alpha, beta, delta, mu;

    GHParams(double lambda, double alpha, double beta, double delta, double mu);
    double gamma() const;  // sqrt(alpha^2 - beta^2)
};

struct GaussianParams {
    double sigma, mu;
    GaussianParams(double sigma, double mu);
};

struct StudentTParams {
    double degrees, location, scale;
    StudentTParams(double degrees, double location, double scale);
};

enum class GHTag { FullGH, GaussianReduction, NIG, StudentT, Hyperbolic };

// One member of the GH family: either a full parameter set, a pinned-lambda
// special case (NIG: lambda = -1/2, Hyperbolic: lambda = 1), or a closed-form
// reduction (Gaussian, Student t) that never routes through the GH formula.
class GHVariant {
public:
    static GHVariant full_gh(const GHParams& p);
    static GHVariant gaussian(double sigma, double mu);
    static GHVariant nig(double alpha, double beta, double delta, double mu);
    static GHVariant student_t(double degrees, double location, double scale);
    static GHVariant hyperbolic(double alpha, double beta, double delta, double mu);

    GHTag tag() const { return tag_; }
    bool is_gh_family() const {
        return tag_ == GHTag::FullGH || tag_ == GHTag::NIG || tag_ == GHTag::Hyperbolic;
    }

    // Accessors throw std::logic_error when the tag does not carry that
    // parameter set.
    const GHParams& gh() const;
    const GaussianParams& gaussian_params() const;
    const StudentTParams& student_params() const;

    // Location of the density's center (mu / location), used for windowing.
    double center() const;

private:
    GHVariant(GHTag tag, std::variant<GHParams, GaussianParams, StudentTParams> p);

    GHTag tag_;
    std::variant<GHParams, GaussianParams, StudentTParams> p_;
};

// Log-density evaluator with the x-independent normalization term computed
// once; each call then costs at most one Bessel evaluation. The kernel
// tabulation leans on this.
class LogDensity {
public:
    explicit LogDensity(const GHVariant& variant);
    double operator()(double x) const;

private:
    GHTag tag_;
    double lambda_ = 0, alpha_ = 0, beta_ = 0, delta_ = 0;
    double nu_ = 0;
    double m_ = 0, s_ = 0;
    double c0_ = 0;
};

// Log density at x. GH-family tags evaluate the five-parameter formula in
// log space; Gaussian/Student t use their closed forms.
double log_pdf(const GHVariant& variant, double x);

// Integrates the density by adaptive quadrature over a window sized from the
// tail decay; a correct implementation returns 1 within about 1e-9, and the
// acceptance band is [1 - 1e-6, 1 + 1e-6].
double pdf_normalization_check(const GHVariant& variant);

// Slower of the two exponential tail rates, alpha - |beta| (the right tail
// for beta > 0). Gaussian reduction returns 1/sigma: its tail decays faster
// than any exponential, so any finite rate gives a safe (over-wide) window.
// Student t has polynomial tails and is rejected.
double tail_decay_rate(const GHVariant& variant);

// Integration window outside which the density holds less than eps total
// mass; used by the normalization check and the kernel tabulation.
struct TailWindow {
    double lo, hi;
};
TailWindow integration_window(const GHVariant& variant, double eps);

// Human-readable one-liner, e.g. "nig(alpha=1.5, beta=0, delta=1, mu=0)".
std::string describe(const GHVariant& variant);

// Number of free shape/location parameters the variant exposes: 5 for the
// full family, 4 once lambda is pinned (NIG, hyperbolic), 3 for Student t,
// 2 for the Gaussian reduction.
std::size_t n_free_params(const GHVariant& variant);

}  // namespace ghkad

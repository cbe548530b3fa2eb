#include "ghkad/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghkad {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// Taylor coefficients of 1/Gamma(1+z) about z=0; enough terms for full
// double precision on |z| <= 1/2.
constexpr double kRecipGamma[] = {
    1.00000000000000000000,
    0.577215664901532860607,
    -0.655878071520253881077,
    -0.0420026350340952355290,
    0.166538611382291489502,
    -0.0421977345555443367482,
    -0.00962197152787697356211,
    0.00721894324666309954240,
    -0.00116516759185906511211,
    -0.000215241674114950972816,
    0.000128050282388116186153,
    -0.0000201348547807882386557,
    -0.00000125049348214267065735,
    0.00000113302723198169588237,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
    -2.05832605356650678322e-14,
    -5.34812253942301798237e-15,
    1.22677862823826079016e-15,
    -1.18125930169745876951e-16,
    1.18669225475160033258e-18,
    1.41238065531803178156e-18,
    -2.29874568443537020659e-19,
    1.71440632192733743338e-20,
};
constexpr int kRecipGammaTerms = sizeof(kRecipGamma) / sizeof(kRecipGamma[0]);

// The four gamma-function combinations the Temme series needs, computed from
// the series above so the difference quotient gam1 has no cancellation as
// mu -> 0:
//   gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu)   (odd terms)
//   gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2        (even terms)
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                  double& gammi) {
    const double mu2 = mu * mu;
    double odd = 0.0, even = 0.0;
    for (int k = kRecipGammaTerms - 1; k >= 1; k -= 2) odd = odd * mu2 + kRecipGamma[k];
    for (int k = kRecipGammaTerms - 2; k >= 0; k -= 2) even = even * mu2 + kRecipGamma[k];
    gam1 = -odd;
    gam2 = even;
    gampl = gam2 - mu * gam1;  // 1/Gamma(1+mu)
    gammi = gam2 + mu * gam1;  // 1/Gamma(1-mu)
}

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 20000;

// Temme series for K_mu(x) and K_{mu+1}(x), |mu| <= 1/2, 0 < x <= 2.
void bessel_k_series(double mu, double x, double& kmu, double& kmu1) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = (std::fabs(pimu) < 1e-15) ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = (std::fabs(e) < 1e-15) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    const double mu2 = mu * mu;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw std::runtime_error("bessel_k: series did not converge");
    kmu = sum;
    kmu1 = sum1 * (2.0 / x);
}

// Steed continued fraction for e^x K_mu(x) and e^x K_{mu+1}(x), |mu| <= 1/2,
// x >= 2.
void bessel_k_cf2(double mu, double x, double& kmu_scaled, double& kmu1_scaled) {
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw std::runtime_error("bessel_k: continued fraction did not converge");
    h = a1 * h;
    kmu_scaled = std::sqrt(kPi / (2.0 * x)) / s;
    kmu1_scaled = kmu_scaled * (mu + x + 0.5 - h) / x;
}

// Core evaluation: K_nu(x) = value * exp(log_scale), with the pair chosen so
// value stays comfortably inside double range.
void bessel_k_core(double nu, double x, double& value, double& log_scale) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_k: x must be positive and finite");
    const int n = static_cast<int>(nu + 0.5);
    const double mu = nu - n;  // |mu| <= 1/2

    double kmu, kmu1;
    log_scale = 0.0;
    if (x < 2.0) {
        bessel_k_series(mu, x, kmu, kmu1);
    } else {
        bessel_k_cf2(mu, x, kmu, kmu1);
        log_scale = -x;
    }

    // Upward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m, stable in this
    // direction; renormalize when the values grow large.
    for (int i = 1; i <= n; ++i) {
        const double knext = kmu + (2.0 * (mu + i) / x) * kmu1;
        kmu = kmu1;
        kmu1 = knext;
        if (std::fabs(kmu1) > 1e250) {
            kmu = std::ldexp(kmu, -512);
            kmu1 = std::ldexp(kmu1, -512);
            log_scale += 512 * 0.693147180559945309417232;
        }
    }
    value = kmu;
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(std::fabs(nu)) {
    if (!std::isfinite(nu)) throw std::domain_error("BesselOrder: order must be finite");
}

double bessel_k(BesselOrder nu, double x) {
    double value, log_scale;
    bessel_k_core(nu.value(), x, value, log_scale);
    const double log_total = std::log(value) + log_scale;
    if (log_total < std::log(std::numeric_limits<double>::min()))
        throw std::underflow_error("bessel_k: result underflows; use log_bessel_k");
    if (log_total > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("bessel_k: result overflows; use log_bessel_k");
    return value * std::exp(log_scale);
}

double log_bessel_k(BesselOrder nu, double x) {
    double value, log_scale;
    bessel_k_core(nu.value(), x, value, log_scale);
    return std::log(value) + log_scale;
}

}  // namespace ghkad

#pragma once

namespace ghkad {

// Order of a modified Bessel function of the second kind. K is even in its
// order, so the canonical stored value is |nu|.
class BesselOrder {
public:
    explicit BesselOrder(double nu);
    double value() const { return nu_; }

private:
    double nu_;
};

// K_nu(x) for x > 0. Relative error well under 1e-10 for x in [1e-6, 700];
// throws std::underflow_error / std::overflow_error when the value leaves
// double range (use log_bessel_k there), std::domain_error for x <= 0.
double bessel_k(BesselOrder nu, double x);

// log K_nu(x); stays finite far beyond the linear form (x up to 1e5 and
// more), which the heavy GH tails require.
double log_bessel_k(BesselOrder nu, double x);

}  // namespace ghkad

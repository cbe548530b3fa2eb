#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ghkad/errors.hpp"

namespace ghkad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rule of the given order, computed once by Newton iteration and cached.
const GaussRule& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b] with equal panels.
template <class F>
double integrate_gl(F&& f, double a, double b, int order, int panels) {
    const GaussRule& rule = gauss_legendre(order);
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w;
        const double half = 0.5 * w;
        double acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
        total += acc * half;
    }
    return total;
}

// Panel doubling until two successive refinements agree to rel_tol (with
// abs_floor guarding the all-but-zero case). Throws quadrature_error if the
// doubling budget runs out.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol,
                          double abs_floor = 0.0, int order = 16,
                          int max_doublings = 12) {
    if (!(b > a)) return 0.0;
    int panels = 1;
    double prev = integrate_gl(f, a, b, order, panels);
    for (int it = 0; it < max_doublings; ++it) {
        panels *= 2;
        const double cur = integrate_gl(f, a, b, order, panels);
        const double diff = std::fabs(cur - prev);
        if (diff <= rel_tol * std::fabs(cur) + abs_floor) return cur;
        prev = cur;
    }
    throw quadrature_error("adaptive Gauss-Legendre did not converge");
}

}  // namespace ghkad

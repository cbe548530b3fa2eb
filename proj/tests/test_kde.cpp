#include "ghkad/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ghkad/kernels.hpp"
#include "ghkad/matrix.hpp"
#include "ghkad/quadrature.hpp"
#include "ghkad/rng.hpp"

using namespace ghkad;

namespace {

constexpr double kPi = 3.141592653589793238462643;

Matrix column(const std::vector<double>& xs) {
    Matrix m(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
    return m;
}

Matrix normal_cloud(Rng& rng, std::size_t n, std::size_t d) {
    Matrix m(n, d);
    for (double& v : m.data) v = rng.normal();
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("kde");

TEST_CASE("profile normalization constants match closed forms") {
    struct Case {
        KernelFamily family;
        std::size_t d;
        double want;
    };
    const Case cases[] = {
        {KernelFamily::GaussianProfile, 1, std::sqrt(2.0 * kPi)},
        {KernelFamily::GaussianProfile, 3, std::pow(2.0 * kPi, 1.5)},
        {KernelFamily::Epanechnikov, 1, 4.0 / 3.0},
        {KernelFamily::Epanechnikov, 2, kPi / 2.0},
        {KernelFamily::Tophat, 1, 2.0},
        {KernelFamily::Tophat, 2, kPi},
        {KernelFamily::Tophat, 3, 4.0 * kPi / 3.0},
        {KernelFamily::Exponential, 1, 2.0},
        {KernelFamily::Exponential, 3, 8.0 * kPi},
    };
    Rng rng(1);
    for (const Case& c : cases) {
        const Matrix pts = normal_cloud(rng, 4, c.d);
        const KdeModel model = fit_kde(pts, KernelSpec::profile(c.family), 1.0);
        CAPTURE(static_cast<int>(c.family));
        CAPTURE(c.d);
        CHECK(model.norm_const() == doctest::Approx(c.want).epsilon(1e-8));
    }
}

TEST_CASE("gh profile normalization cross-checked by monte carlo") {
    Rng rng(31337);
    const Matrix pts = normal_cloud(rng, 4, 2);
    const KernelSpec spec = KernelSpec::gh(GHVariant::full_gh({1.0, 2.0, 0.0, 1.0, 0.0}), 1.0);
    const KdeModel model = fit_kde(pts, spec, 1.0);

    // C_2 = 2 pi * integral_0^rmax k(u)/k(0) * u du, sampled uniformly in u.
    const double r_max = model.kernel().table()->r_max();
    const std::size_t samples = 1000000;
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = rng.uniform(0.0, r_max);
        acc += model.kernel().profile(u) * u;
    }
    const double mc = 2.0 * kPi * r_max * acc / static_cast<double>(samples);
    CHECK(std::fabs(model.norm_const() - mc) < 0.005 * mc);
}

TEST_CASE("density values at hand-computed points") {
    // Single training point, Gaussian profile, h = 1: the standard normal peak.
    const KdeModel peak =
        fit_kde(column({0.7}), KernelSpec::profile(KernelFamily::GaussianProfile), 1.0);
    CHECK(peak.density({0.7}) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));

    // Two points at 0 and 4, Tophat, h = 1: only the near point contributes,
    // and the Tophat normalization is 2.
    const KdeModel top = fit_kde(column({0.0, 4.0}), KernelSpec::profile(KernelFamily::Tophat), 1.0);
    CHECK(top.density({0.0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(top.density({4.0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(top.density({2.0}) == 0.0);

    // Consistency at the mode: 1000 standard-normal samples, h = 0.3.
    Rng rng(77);
    const Matrix draws = normal_cloud(rng, 1000, 1);
    const KdeModel kde = fit_kde(draws, KernelSpec::profile(KernelFamily::GaussianProfile), 0.3);
    CHECK(kde.density({0.0}) == doctest::Approx(0.3989422804014327).epsilon(0.10));
}

TEST_CASE("anomaly score is the floored negative log density") {
    // Tophat, h = 0.5, one point: density at the point is exactly 1.
    const KdeModel unit =
        fit_kde(column({2.0}), KernelSpec::profile(KernelFamily::Tophat), 0.5);
    REQUIRE(unit.density({2.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(unit.anomaly_score({2.0})) <= 1e-12);

    // Beyond all support the density is 0 and the floor keeps the score finite.
    CHECK(unit.density({100.0}) == 0.0);
    CHECK(unit.anomaly_score({100.0}) ==
          doctest::Approx(-std::log(1e-300)).epsilon(1e-12));

    // Scores order opposite to density.
    Rng rng(5);
    const Matrix draws = normal_cloud(rng, 500, 1);
    const KdeModel kde = fit_kde(draws, KernelSpec::profile(KernelFamily::GaussianProfile), 0.3);
    CHECK(kde.anomaly_score({0.0}) < kde.anomaly_score({4.0}));
    for (double a : {0.2, 0.9, 1.7}) {
        for (double b : {0.1, 1.3, 2.5}) {
            const double da = kde.density({a}), db = kde.density({b});
            if (da > db)
                CHECK(kde.anomaly_score({a}) < kde.anomaly_score({b}));
        }
    }
}

TEST_CASE("density is bitwise independent of training-point order") {
    Rng rng(123);
    Matrix pts = normal_cloud(rng, 200, 2);
    const KdeModel a = fit_kde(pts, KernelSpec::profile(KernelFamily::GaussianProfile), 0.4);

    // Reverse plus an interior swap: same multiset, different order.
    Matrix shuffled(200, 2);
    for (std::size_t i = 0; i < 200; ++i) {
        shuffled(i, 0) = pts(199 - i, 0);
        shuffled(i, 1) = pts(199 - i, 1);
    }
    std::swap(shuffled(17, 0), shuffled(90, 0));
    std::swap(shuffled(17, 1), shuffled(90, 1));
    const KdeModel b = fit_kde(shuffled, KernelSpec::profile(KernelFamily::GaussianProfile), 0.4);

    for (int q = 0; q < 20; ++q) {
        const std::vector<double> x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        CHECK(a.density(x) == b.density(x));
    }
}

TEST_CASE("density integrates to one") {
    Rng rng(9);
    // 1-D: direct adaptive quadrature of the estimate.
    const Matrix pts1 = normal_cloud(rng, 80, 1);
    const KdeModel kde1 = fit_kde(pts1, KernelSpec::profile(KernelFamily::GaussianProfile), 0.35);
    const double mass1 = integrate_adaptive(
        [&](double x) { return kde1.density({x}); }, -12.0, 12.0, 1e-8, 0.0, 16, 12);
    CHECK(mass1 == doctest::Approx(1.0).epsilon(1e-6));

    // 2-D: Monte Carlo over a box that contains all effective support.
    const Matrix pts2 = normal_cloud(rng, 60, 2);
    const KdeModel kde2 = fit_kde(pts2, KernelSpec::profile(KernelFamily::GaussianProfile), 0.5);
    const double half = 8.0;
    const std::size_t samples = 400000;
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const std::vector<double> x{rng.uniform(-half, half), rng.uniform(-half, half)};
        acc += kde2.density(x);
    }
    const double mass2 = acc / static_cast<double>(samples) * (2.0 * half) * (2.0 * half);
    CHECK(mass2 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("threshold selection by training-score quantile") {
    // Five distinct scores: contamination 0.5 picks the median, tiny
    // contamination the maximum.
    const KdeModel base =
        fit_kde(column({0.0, 1.0, 2.0, 3.5, 7.0}), KernelSpec::profile(KernelFamily::GaussianProfile), 0.8);
    std::vector<double> scores;
    for (double x : {0.0, 1.0, 2.0, 3.5, 7.0})
        scores.push_back(base.anomaly_score({x}));
    std::sort(scores.begin(), scores.end());

    KdeModel median_model = base;
    CHECK(choose_threshold(median_model, 0.5) == scores[2]);
    CHECK(median_model.threshold() == scores[2]);

    KdeModel max_model = base;
    CHECK(choose_threshold(max_model, 1e-9) == scores[4]);

    // 1000 standard normals at 5% contamination: the cutoff sits near the
    // score of the two-sided 5% tail boundary |x| = 1.96.
    Rng rng(2718);
    const Matrix draws = normal_cloud(rng, 1000, 1);
    KdeModel kde = fit_kde(draws, KernelSpec::profile(KernelFamily::GaussianProfile), 0.25);
    const double t = choose_threshold(kde, 0.05);
    CHECK(t > kde.anomaly_score({1.7}));
    CHECK(t < kde.anomaly_score({2.25}));

    // The rule flags close to the requested fraction of the training set.
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < draws.rows; ++i)
        if (kde.anomaly_score({draws(i, 0)}) > t) ++flagged;
    CHECK(flagged <= 50);
    CHECK(flagged >= 30);

    CHECK_THROWS_AS(choose_threshold(kde, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(choose_threshold(kde, 1.0), std::invalid_argument);
}

TEST_CASE("scott bandwidth rule") {
    Rng rng(55);
    Matrix pts = normal_cloud(rng, 400, 2);
    // Scale the second dimension: the rule averages per-dimension sigma.
    for (std::size_t i = 0; i < pts.rows; ++i) pts(i, 1) *= 3.0;
    const double h = scott_bandwidth(pts);
    CHECK(h == doctest::Approx(std::pow(400.0, -1.0 / 6.0) * 2.0).epsilon(0.12));
}

TEST_CASE("validation and dimension mismatches") {
    Rng rng(3);
    const Matrix pts = normal_cloud(rng, 10, 2);
    CHECK_THROWS_AS(fit_kde(pts, KernelSpec::rbf(1.0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_kde(pts, KernelSpec::linear(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_kde(pts, KernelSpec::profile(KernelFamily::Tophat), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_kde(Matrix{}, KernelSpec::profile(KernelFamily::Tophat), 1.0),
                    std::invalid_argument);

    const KdeModel model = fit_kde(pts, KernelSpec::profile(KernelFamily::Tophat), 1.0);
    CHECK_THROWS_AS(model.density({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(model.anomaly_score({1.0, 2.0, 3.0}), std::invalid_argument);
    Matrix queries(2, 3);
    CHECK_THROWS_AS(model.anomaly_scores(queries), std::invalid_argument);
}

TEST_SUITE_END();

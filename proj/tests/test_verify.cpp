#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mwt/verify.hpp"

using namespace mwt;

TEST(OrderFit, RecoversPowerLaws) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> slopes(-8.0, 8.0), scales(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double p = slopes(rng), c = scales(rng);
        const auto grid = geometric_grid(1.0, 2.0, 6);
        std::vector<double> r;
        for (double a : grid) r.push_back(c * std::pow(a, p));
        const auto fit = remainder_order_fit(grid, r, 0.0);
        ASSERT_NEAR(fit.slope, p, 1e-9);
        ASSERT_NEAR(fit.intercept, std::log(c), 1e-9);
        ASSERT_NEAR(fit.r_squared, 1.0, 1e-9);
    }
}

TEST(OrderFit, DocumentedExamples) {
    const std::vector<double> grid{10.0, 20.0, 40.0, 80.0};
    std::vector<double> r;
    for (double a : grid) r.push_back(std::pow(a, -2.5));
    EXPECT_NEAR(remainder_order_fit(grid, r).slope, -2.5, 1e-9);
    r.clear();
    for (double a : grid) r.push_back(-3.0 / a);
    const auto fit = remainder_order_fit(grid, r);
    EXPECT_NEAR(fit.slope, -1.0, 1e-9);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-9);
}

TEST(OrderFit, ExcludesPointsBelowFloor) {
    const std::vector<double> grid{1.0, 2.0, 4.0, 8.0, 16.0};
    const std::vector<double> r{1e-3, 1e-4, 1e-16, 1e-17, 0.0};
    try {
        remainder_order_fit(grid, r);
        FAIL();
    } catch (const InsufficientDataError&) {
    }
    const std::vector<double> r2{1e-3, 1e-4, 1e-5, 1e-6, 1e-17};
    const auto fit = remainder_order_fit(grid, r2);
    ASSERT_EQ(fit.excluded_points.size(), 1u);
    EXPECT_EQ(fit.excluded_points[0], 4);
}

TEST(OrderFit, Preconditions) {
    const std::vector<double> good{1.0, 2.0, 4.0, 8.0};
    const std::vector<double> r{1.0, 0.5, 0.25, 0.125};
    EXPECT_THROW(remainder_order_fit(std::vector<double>{1.0, 2.0, 4.0}, std::vector<double>{1.0, 1.0, 1.0}),
                 ConfigurationError);
    EXPECT_THROW(remainder_order_fit(good, std::vector<double>{1.0, 2.0, 3.0}), ConfigurationError);
    EXPECT_THROW(remainder_order_fit(std::vector<double>{1.0, 1.5, 2.25, 3.375}, r), ConfigurationError);
    EXPECT_THROW(remainder_order_fit(std::vector<double>{1.0, 2.0, 5.0, 8.0}, r), ConfigurationError);
    EXPECT_THROW(remainder_order_fit(std::vector<double>{-1.0, 2.0, 4.0, 8.0}, r), ConfigurationError);
    EXPECT_NO_THROW(remainder_order_fit(good, r));
}

TEST(GridSup, RefinementFindsInteriorPeak) {
    EXPECT_NEAR(grid_sup([](double x) { return std::sin(x); }, 0.0, 3.0, 7), 1.0, 1e-12);
    EXPECT_LT(grid_sup([](double x) { return std::sin(x); }, 0.0, 3.0, 7, false), 1.0 - 1e-3);
    EXPECT_THROW(grid_sup([](double) { return 0.0; }, 1.0, 1.0), DomainError);
}

TEST(GridSup, NestedGridsAreMonotone) {
    auto g = [](double x) { return std::sin(7.3 * x) * std::exp(-x * x / 3.0); };
    double previous = 0.0;
    for (int n : {9, 17, 33, 65, 129, 257, 513, 1025}) {
        const double s = grid_sup(g, -2.0, 2.0, n, false);
        EXPECT_GE(s, previous) << n;
        previous = s;
    }
}

TEST(Seminorm, ZeroOrderDoesNotDecay) {
    const auto w = mexican_hat();
    const auto grid = geometric_grid(16.0, 2.0, 4);
    EXPECT_NEAR(seminorm_decay_check(w, 0, 0.0, 1.0, 0, grid).slope, 0.0, 1e-6);
}

TEST(Seminorm, FirstOrderDecaysQuadraticallyForEvenWavelet) {
    // psi is even, so psi - psi(0) = O(y^2): the supremum falls like a^{-2}
    const auto w = mexican_hat();
    const auto fit = seminorm_decay_check(w, 1, 0.0, 1.0, 0, geometric_grid(16.0, 2.0, 4));
    EXPECT_NEAR(fit.slope, -1.9992626085329889802, 1e-3);
}

TEST(Seminorm, ThirdOrderWithDerivative) {
    const auto w = mexican_hat();
    const auto fit = seminorm_decay_check(w, 3, 2.0, 1.0, 1, geometric_grid(16.0, 2.0, 4));
    EXPECT_NEAR(fit.slope, -3.9418206066913926474, 1e-2);
    EXPECT_LE(fit.slope, -2.7);
}

TEST(Seminorm, ReflectionOfNegativeShift) {
    const Wavelet skew("skew", [](long double x) { return (x + x * x) * std::exp(-x * x / 2.0L); });
    const Wavelet mirror("mirror", [](long double x) { return (-x + x * x) * std::exp(-x * x / 2.0L); });
    for (int q : {0, 1, 2}) {
        for (double a : {4.0, 32.0}) {
            EXPECT_NEAR(seminorm_value(skew, q, -1.5, 1.0, 0, a), seminorm_value(mirror, q, 1.5, 1.0, 0, a), 1e-9)
                << q << " " << a;
        }
    }
    const auto w = mexican_hat();
    EXPECT_NEAR(seminorm_value(w, 2, -1.0, 1.0, 1, 8.0), seminorm_value(w, 2, 1.0, 1.0, 1, 8.0), 1e-15);
}

TEST(Seminorm, DomainChecks) {
    const auto w = mexican_hat();
    EXPECT_THROW(seminorm_value(w, 1, 10.0, 1.0, 0, 0.1), DomainError);
    EXPECT_THROW(seminorm_value(w, 1, 0.0, 0.0, 0, 2.0), DomainError);
    EXPECT_THROW(seminorm_value(w, 1, 0.0, 1.0, 0, -2.0), DomainError);
    EXPECT_THROW(seminorm_value(w, -1, 0.0, 1.0, 0, 2.0), ConfigurationError);
}

TEST(Grid, Geometric) {
    const auto g = geometric_grid(16.0, 2.0, 4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g[3], 128.0);
    EXPECT_THROW(geometric_grid(0.0, 2.0, 3), ConfigurationError);
}

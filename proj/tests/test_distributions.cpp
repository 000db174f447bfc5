#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <fstream>
#include <random>

#include "mwt/distributions.hpp"
#include "test_support.hpp"

using namespace mwt;
using mwt::testing::TempDir;

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST(PointMass, DeltaMoments) {
    EXPECT_EQ(moment(DistributionInput::delta(0.0), 0), 1.0);
    EXPECT_EQ(moment(DistributionInput::delta(0.0), 3), 0.0);
    EXPECT_EQ(moment(DistributionInput::delta_derivative(0.0, 1), 1), -1.0);
    EXPECT_EQ(moment(DistributionInput::delta_derivative(0.0, 1), 0), 0.0);
    double fact = 1.0;
    for (int k = 0; k <= 8; ++k) {
        if (k > 0) fact *= k;
        EXPECT_EQ(moment(DistributionInput::delta_derivative(0.0, k), k), ((k % 2) ? -1.0 : 1.0) * fact) << k;
    }
}

TEST(PointMass, SequenceAndProvenance) {
    const auto seq = moment_sequence(DistributionInput::delta(0.0), 3);
    ASSERT_EQ(seq.contiguous_order(), 3);
    EXPECT_EQ(seq.at(0), 1.0);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(seq.at(k), 0.0);
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(seq.provenance.at(k), MomentProvenance::closed_form);
    EXPECT_FALSE(seq.max_valid_order.has_value());
    EXPECT_THROW(seq.at(4), MomentDivergenceError);
}

TEST(PointMass, CombinationIsLinear) {
    const auto d = DistributionInput::masses({{0.3, 0, 2.0}, {-1.0, 2, 0.5}});
    for (int alpha = 0; alpha <= 5; ++alpha) {
        const double expected = 2.0 * std::pow(0.3, alpha) + 0.5 * alpha * (alpha - 1) * std::pow(-1.0, alpha - 2) * (alpha >= 2);
        EXPECT_NEAR(moment(d, alpha), expected, 1e-14) << alpha;
    }
    EXPECT_THROW(DistributionInput::masses({{0.0, -1, 1.0}}), ConfigurationError);
}

TEST(Density, MexicanHatMoments) {
    const auto d = mexican_hat_density();
    const auto seq = moment_sequence(d, 6);
    // mpmath: mu_2 = -2 sqrt(2 pi), mu_4 = -12 sqrt(2 pi), mu_6 = -90 sqrt(2 pi)
    EXPECT_NEAR(seq.at(0), 0.0, 1e-12);
    EXPECT_NEAR(seq.at(1), 0.0, 1e-12);
    EXPECT_NEAR(seq.at(2), -5.0132565492620010048, 1e-10);
    EXPECT_NEAR(seq.at(3), 0.0, 1e-11);
    EXPECT_NEAR(seq.at(4), -30.079539295572006029, 1e-9);
    EXPECT_NEAR(seq.at(6), -225.59654471679004522, 1e-8);
    EXPECT_EQ(seq.provenance.at(2), MomentProvenance::quadrature);
}

TEST(Density, BumpMomentsMatchOracle) {
    // mpmath quad of x^k exp(-1/(1-(x-1/2)^2)) over (-1/2, 3/2)
    constexpr std::array<double, 5> expected{0.44399381616807943782, 0.22199690808403971891, 0.18119993079499526944,
                                             0.16080144215047304471, 0.15657542821111284826};
    const auto seq = moment_sequence(bump_density(), 4);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(seq.at(k), expected[k], 1e-12) << k;
}

TEST(Density, EvenDensityHasVanishingOddMoments) {
    const auto g = gaussian_density();
    const auto b = bump_density(0.0, 1.3);
    for (int k = 1; k <= 9; k += 2) {
        EXPECT_NEAR(moment(g, k), 0.0, 1e-10) << k;
        EXPECT_NEAR(moment(b, k), 0.0, 1e-12) << k;
    }
}

TEST(Density, MollifiedPointMassesConverge) {
    for (int k = 0; k <= 2; ++k) {
        const double c = 0.3;
        const auto exact = moment_sequence(DistributionInput::delta_derivative(c, k), 4);
        double previous = INFINITY;
        for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
            const auto approx = moment_sequence(mwt::testing::mollified_point_mass(c, k, eps), 4);
            double worst = 0.0;
            for (int alpha = 0; alpha <= 4; ++alpha) worst = std::max(worst, std::abs(approx.at(alpha) - exact.at(alpha)));
            EXPECT_LE(worst, previous) << "k " << k << " eps " << eps;
            previous = worst;
        }
        EXPECT_LT(previous, 2e-3) << k;
    }
}

TEST(Density, TranslationObeysBinomialIdentity) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> shifts(-2.0, 2.0);
    const auto base = bump_density(0.2, 0.8);
    const auto mu = moment_sequence(base, 6);
    for (int trial = 0; trial < 10; ++trial) {
        const double c = shifts(rng);
        const auto moved = moment_sequence(base.shifted(c), 6);
        for (int alpha = 0; alpha <= 6; ++alpha) {
            double expected = 0.0;
            for (int j = 0; j <= alpha; ++j) expected += binomial(alpha, j) * std::pow(c, alpha - j) * mu.at(j);
            ASSERT_NEAR(moved.at(alpha), expected, 1e-11 * std::max(1.0, std::abs(expected))) << c << " " << alpha;
        }
    }
    const auto shifted_mass = DistributionInput::delta_derivative(0.0, 1).shifted(0.5);
    EXPECT_EQ(shifted_mass.point_masses().front().location, 0.5);
}

TEST(Growth, TruncationLimit) {
    EXPECT_EQ(truncation_limit(3.5), 2);
    EXPECT_EQ(truncation_limit(1.0), 0);
    EXPECT_EQ(truncation_limit(0.5), -1);
    EXPECT_EQ(truncation_limit(4.0), 3);
    EXPECT_EQ(max_valid_order(PowerGrowth{2.7}), 1);
    EXPECT_FALSE(max_valid_order(Compact{}).has_value());
    EXPECT_FALSE(max_valid_order(SubExponential{}).has_value());
    EXPECT_FALSE(max_valid_order(AllPower{}).has_value());
    EXPECT_FALSE(max_valid_order(TemperedFourier{}).has_value());
}

TEST(Growth, PowerClassCapsMoments) {
    const auto d = gaussian_density(PowerGrowth{3.5});
    EXPECT_EQ(d.max_valid_order(), 2);
    EXPECT_NO_THROW(moment(d, 2));
    try {
        moment(d, 3);
        FAIL() << "expected MomentDivergenceError";
    } catch (const MomentDivergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("power gamma=3.5"), std::string::npos) << e.what();
    }
    const auto seq = moment_sequence(d, 5);
    EXPECT_EQ(seq.contiguous_order(), 2);
    EXPECT_FALSE(seq.has(3));
    EXPECT_NE(seq.absent_reason.find("N=[[gamma]]-1=2"), std::string::npos);
    EXPECT_THROW(seq.at(3), MomentDivergenceError);
}

TEST(Growth, DeclaredClassIsValidated) {
    EXPECT_THROW(gaussian_density(Compact{}), ConfigurationError);
    EXPECT_THROW(DistributionInput::delta(0.0, 1.0, PowerGrowth{INFINITY}), ConfigurationError);
    EXPECT_THROW(bump_density(0.0, -1.0), ConfigurationError);
}

TEST(Growth, DivergentQuadratureIsReportedNotReturned) {
    const auto cauchy = DistributionInput::density(
        "cauchy", [](double x) { return 1.0 / (1.0 + x * x); }, Support::full_line(), SubExponential{});
    EXPECT_THROW(moment(cauchy, 2), MomentDivergenceError);
    const auto seq = moment_sequence(cauchy, 3);
    EXPECT_LT(seq.contiguous_order(), 2);
    EXPECT_FALSE(seq.absent_reason.empty());
}

TEST(DensityFile, LoadsAndInterpolates) {
    TempDir dir("density");
    const auto path = (dir.path() / "bump.dat").string();
    {
        std::ofstream out(path);
        out << "# x f(x)\n";
        const auto bump = bump_density(0.0, 1.0);
        for (int i = 0; i <= 2000; ++i) {
            const double x = -1.0 + i / 1000.0;
            out.precision(17);
            out << x << " " << bump.density(x) << "\n";
        }
    }
    const auto d = load_density_file(path);
    EXPECT_EQ(d.support().lo, -1.0);
    EXPECT_EQ(d.support().hi, 1.0);
    const auto exact = moment_sequence(bump_density(0.0, 1.0), 4);
    const auto approx = moment_sequence(d, 4);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(approx.at(k), exact.at(k), 1e-6) << k;
}

TEST(DensityFile, RejectsMalformedInput) {
    TempDir dir("density-bad");
    const auto write = [&](const std::string& name, const std::string& body) {
        const auto p = (dir.path() / name).string();
        std::ofstream(p) << body;
        return p;
    };
    try {
        load_density_file(write("order.dat", "0 1\n1 2\n0.5 3\n2 4\n3 5\n"));
        FAIL();
    } catch (const ConfigurationError& e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_density_file(write("short.dat", "0 1\n1 2\n2 3\n")), ConfigurationError);
    EXPECT_THROW(load_density_file(write("cols.dat", "0 1\n1\n")), ConfigurationError);
    EXPECT_THROW(load_density_file((dir.path() / "missing.dat").string()), ConfigurationError);
}

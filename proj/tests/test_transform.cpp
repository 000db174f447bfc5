#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mwt/transform.hpp"
#include "test_support.hpp"

using namespace mwt;
using namespace std::complex_literals;

TEST(Transform, DeltaClosedForm) {
    const auto w = mexican_hat();
    const auto p = cwt_direct(DistributionInput::delta(0.0), w, 4.0, 0.0);
    EXPECT_EQ(p.value, 0.5);
    EXPECT_EQ(p.method, TransformMethod::closed_form);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> loc(-3.0, 3.0), dil(0.05, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double c = loc(rng), a = dil(rng), b = loc(rng);
        const double expected = eval_mexican_hat((c - b) / a) / std::sqrt(a);
        ASSERT_NEAR(cwt_direct(DistributionInput::delta(c), w, a, b).value, expected, 1e-14 * std::abs(expected) + 1e-300);
    }
}

TEST(Transform, DeltaDerivativeValue) {
    // <delta', phi> = -phi'(0); with phi(x) = psi(x - 1): -psi'(-1) = -2 exp(-1/2)
    const auto w = mexican_hat();
    const auto exact = cwt_direct(DistributionInput::delta_derivative(0.0, 1), w, 1.0, 1.0).value;
    EXPECT_NEAR(exact, -1.2130613194252668472, 1e-15);
    // a mollified delta' lands on the same value
    const auto smooth = cwt_direct(mwt::testing::mollified_point_mass(0.0, 1, 0.01), w, 1.0, 1.0).value;
    EXPECT_NEAR(smooth, exact, 1e-3);
}

TEST(Transform, DensityOracles) {
    const auto w = mexican_hat();
    // int psi^2 = 3 sqrt(pi)/4
    EXPECT_NEAR(cwt_direct(mexican_hat_density(), w, 1.0, 0.0).value, 1.3293403881791370205, 1e-11);
    // mpmath quadrature of the defining integral
    EXPECT_NEAR(cwt_direct(bump_density(), w, 4.0, 1.0).value, 0.21369128322611521343, 1e-13);
    EXPECT_NEAR(cwt_direct(bump_density(), w, 100.0, 1.0).value, 0.044396663715703164801, 1e-14);
    EXPECT_NEAR(cwt_direct(gaussian_density(), w, 2.0, 1.0).value, 0.918058710732098597, 1e-12);
    EXPECT_EQ(cwt_direct(bump_density(), w, 4.0, 1.0).method, TransformMethod::direct);
}

TEST(Transform, NarrowWaveletOnWideSupport) {
    // psi at scale a against a slowly varying f: sqrt(a) a^2 mu_2 f''(b) / 2 dominates
    const auto w = mexican_hat();
    const auto wide = bump_density(0.0, 5.0);
    const double a = 1e-3, b = 0.3;
    const double t = b / 5.0, s = 1.0 - t * t;
    // d^2/dx^2 exp(-1/(1-t^2)), t = x/5
    const double g = std::exp(-1.0 / s);
    const double d1 = -2.0 * t / (s * s);
    const double d2 = -2.0 / (s * s) - 8.0 * t * t / (s * s * s);
    const double f2 = g * (d1 * d1 + d2) / 25.0;
    const double leading = std::sqrt(a) * a * a * (-2.0 * std::sqrt(2.0 * std::numbers::pi)) * f2 / 2.0;
    const double got = cwt_direct(wide, w, a, b).value;
    EXPECT_NEAR(got, leading, 1e-3 * std::abs(leading));
}

TEST(Transform, TranslationCovariance) {
    const auto w = mexican_hat();
    const auto base = bump_density(0.2, 0.9);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shift(-2.0, 2.0), b(-3.0, 3.0), la(-2.0, 2.0);
    for (int i = 0; i < 25; ++i) {
        const double c = shift(rng), bb = b(rng), a = std::pow(10.0, la(rng));
        const double lhs = cwt_direct(base.shifted(c), w, a, bb).value;
        const double rhs = cwt_direct(base, w, a, bb - c).value;
        ASSERT_NEAR(lhs, rhs, 1e-9) << c << " " << a << " " << bb;
    }
}

TEST(Transform, RejectsNonPositiveDilation) {
    const auto w = mexican_hat();
    EXPECT_THROW(cwt_direct(DistributionInput::delta(0.0), w, 0.0, 0.0), DomainError);
    EXPECT_THROW(cwt_direct(bump_density(), w, -1.0, 0.0), DomainError);
}

TEST(Fourier, TransformsOfInputs) {
    EXPECT_EQ(fourier_transform(DistributionInput::delta(0.0), 3.0), std::complex<double>(1.0, 0.0));
    const auto fd = fourier_transform(DistributionInput::delta(0.7), 2.0);
    EXPECT_NEAR(std::abs(fd - std::exp(-1.4i)), 0.0, 1e-15);
    const auto fg = fourier_transform(gaussian_density(), 1.3);
    EXPECT_NEAR(fg.real(), std::sqrt(2.0 * std::numbers::pi) * std::exp(-1.3 * 1.3 / 2.0), 1e-12);
    EXPECT_NEAR(fg.imag(), 0.0, 1e-12);
    const auto w = mexican_hat();
    EXPECT_NEAR(w.fourier(1.0).real(), std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5), 1e-15);
}

TEST(Fourier, PairingConstantIsCalibrated) {
    const FourierPairing pairing(mexican_hat());
    EXPECT_NEAR(pairing.constant(), 1.0 / (2.0 * std::numbers::pi), 1e-12);
    EXPECT_GT(pairing.frequency_cutoff(), 8.0);
    EXPECT_LT(pairing.frequency_cutoff(), 12.0);
}

TEST(Fourier, AgreesWithDirectEvaluation) {
    const auto w = mexican_hat();
    const FourierPairing pairing(w);
    const std::vector<DistributionInput> inputs{DistributionInput::delta(0.0), DistributionInput::delta(0.4),
                                                gaussian_density(), mexican_hat_density(), bump_density()};
    for (const auto& f : inputs) {
        for (double a : {0.5, 1.0, 2.0, 4.0}) {
            for (double b : {-1.0, 0.0, 1.0}) {
                const double direct = cwt_direct(f, w, a, b).value;
                const auto via = pairing.transform(f, a, b);
                EXPECT_EQ(via.method, TransformMethod::fourier);
                ASSERT_NEAR(via.value, direct, 1e-7 * (1.0 + std::abs(direct))) << f.name() << " a " << a << " b " << b;
            }
        }
    }
}

TEST(Fourier, WaveletWithoutTransformIsUnsupported) {
    const Wavelet plain("plain", [](long double x) { return x * std::exp(-x * x); });
    EXPECT_THROW(FourierPairing{plain}, UnsupportedInputError);
}

TEST(Fourier, DerivativesAtOriginReproduceMoments) {
    // F(w) = int f exp(-i w x) dx gives D^k F(0) = (-i)^k mu_k
    const std::vector<DistributionInput> inputs{DistributionInput::delta(0.0), DistributionInput::delta(0.6),
                                                DistributionInput::delta(-1.1, 2.0), bump_density(0.0, 1.0),
                                                bump_density(0.5, 1.0)};
    for (const auto& f : inputs) {
        for (int alpha = 0; alpha <= 4; ++alpha) {
            const auto chk = fourier_moment_check(f, alpha, 0.5);
            ASSERT_LE(std::abs(chk.lhs - chk.rhs_pinned), 1e-6 * std::max(1.0, std::abs(chk.moment)))
                << f.name() << " alpha " << alpha << " lhs " << chk.lhs << " pinned " << chk.rhs_pinned;
        }
    }
}

TEST(Fourier, QuotedPhaseIsTheConjugate) {
    const auto chk = fourier_moment_check(DistributionInput::delta(0.6), 1, 0.5);
    EXPECT_NEAR(chk.moment, 0.6, 1e-15);
    EXPECT_NEAR(std::abs(chk.rhs - 0.6i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(chk.lhs - (-0.6i)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(chk.lhs - std::conj(chk.rhs)), 0.0, 1e-8);
    EXPECT_THROW(fourier_moment_check(DistributionInput::delta(0.0), -1, 0.5), ConfigurationError);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mwt/distributions.hpp"
#include "mwt/errors.hpp"
#include "mwt/numdiff.hpp"
#include "mwt/quadrature.hpp"
#include "mwt/wavelets.hpp"

namespace mwt {

enum class TransformMethod { direct, fourier, closed_form };

inline const char* to_string(TransformMethod m) {
    switch (m) {
        case TransformMethod::direct: return "direct";
        case TransformMethod::fourier: return "fourier";
        case TransformMethod::closed_form: return "closed_form";
    }
    return "?";
}

struct TransformPoint {
    double a = 1.0;
    double b = 0.0;
    double value = 0.0;
    TransformMethod method = TransformMethod::direct;
};

/// Human-readable statement of the Fourier convention used everywhere in the library.
inline constexpr const char* kFourierConvention =
    "F(w) = int f(x) exp(-i w x) dx, inverse (1/2pi) int F(w) exp(i w x) dw; "
    "under this convention D^k F(0) = (-i)^k mu_k";

namespace detail {

// (sign * i)^k without rounding.
inline std::complex<double> imaginary_unit_power(int k, int sign = 1) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0 * sign};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0 * sign};
    }
}

inline void require_positive_dilation(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("dilation a must be a finite positive number");
}

// Sums the integral over consecutive pieces of [breaks.front(), breaks.back()].
template <class G>
QuadratureResult<double> integrate_pieces(G& g, std::vector<double> breaks, const QuadratureSpec& spec) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    QuadratureResult<double> total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto part = integrate<double>(g, breaks[i], breaks[i + 1], spec);
        total.value += part.value;
        total.err_estimate += part.err_estimate;
        total.subdivisions += part.subdivisions;
        total.roundoff_limited = total.roundoff_limited || part.roundoff_limited;
    }
    return total;
}

// Integral of density(x) * g(x) where g is concentrated near `center` with
// length scale `scale`; the concentration points become breakpoints so that a
// narrow kernel on a wide support is never stepped over.
template <class G>
QuadratureResult<double> integrate_localized(const DistributionInput& d, G&& g, double center, double scale,
                                             const QuadratureSpec& spec) {
    auto integrand = [&](double x) { return d.density(x) * g(x); };
    const Support& s = d.support();
    double lo = s.lo, hi = s.hi;
    const bool full = s.is_full_line();
    if (full) {
        lo = -spec.truncation_T;
        hi = spec.truncation_T;
    }
    std::vector<double> breaks{lo, hi};
    for (double k : {-10.0, -3.0, 0.0, 3.0, 10.0}) {
        const double p = center + k * scale;
        if (p > lo && p < hi) breaks.push_back(p);
    }
    auto core = integrate_pieces(integrand, breaks, spec);
    if (!full) return core;

    // Widen until the tails no longer contribute.
    double T = spec.truncation_T;
    for (int k = 0; k < 8; ++k) {
        const double wider = 2.0 * T;
        const auto left = integrate<double>(integrand, -wider, -T, spec);
        const auto right = integrate<double>(integrand, T, wider, spec);
        const double tails = left.value + right.value;
        core.value += tails;
        core.err_estimate += left.err_estimate + right.err_estimate;
        if (std::abs(tails) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(core.value))) return core;
        T = wider;
    }
    throw NonConvergenceError("transform integrand tails do not vanish; the pairing diverges", core.value,
                              core.err_estimate);
}

}  // namespace detail

/// (W f)(a, b) = a^{-1/2} int f(x) psi((x - b)/a) dx. Point masses use the exact law
/// a^{-1/2} sum weight (-1)^k a^{-k} D^k psi((c - b)/a), with no quadrature.
inline TransformPoint cwt_direct(const DistributionInput& f, const Wavelet& w, double a, double b,
                                 const QuadratureSpec& spec = {}) {
    detail::require_positive_dilation(a);
    const double norm = 1.0 / std::sqrt(a);
    if (f.kind() == DistributionInput::Kind::point_masses) {
        double sum = 0.0;
        for (const auto& m : f.point_masses()) {
            const int k = m.derivative_order;
            const double sign = (k % 2) ? -1.0 : 1.0;
            sum += m.weight * sign * std::pow(a, -k) * w.derivative(k, (m.location - b) / a);
        }
        return {a, b, norm * sum, TransformMethod::closed_form};
    }
    const auto r = detail::integrate_localized(f, [&](double x) { return w((x - b) / a); }, b, a, spec);
    return {a, b, norm * r.value, TransformMethod::direct};
}

/// Fourier transform of the input, F(w) = <f, exp(-i w x)>.
inline std::complex<double> fourier_transform(const DistributionInput& f, double omega,
                                              const QuadratureSpec& spec = {}) {
    using namespace std::complex_literals;
    if (f.kind() == DistributionInput::Kind::point_masses) {
        // <delta^(k)(. - c), exp(-i w x)> = (i w)^k exp(-i w c)
        std::complex<double> sum = 0.0;
        for (const auto& m : f.point_masses())
            sum += m.weight * detail::imaginary_unit_power(m.derivative_order) * std::pow(omega, m.derivative_order) *
                   std::exp(-1i * omega * m.location);
        return sum;
    }
    const double T = spec.truncation_T;
    const double re = integrate_against(f, [omega](double x) { return std::cos(omega * x); }, spec, T).value;
    const double im = -integrate_against(f, [omega](double x) { return std::sin(omega * x); }, spec, T).value;
    return {re, im};
}

/// Evaluates the transform through the frequency-side pairing
///   sqrt(a) * C * int exp(i b w) F(w) conj(Psi(a w)) dw,
/// where the Parseval constant C is calibrated once against the exact point-mass transform.
class FourierPairing {
public:
    explicit FourierPairing(Wavelet w, QuadratureSpec spec = {}) : wavelet_(std::move(w)), spec_(spec) {
        if (!wavelet_.has_fourier_transform())
            throw UnsupportedInputError("wavelet '" + wavelet_.name() + "' has no closed-form Fourier transform");
        cutoff_ = find_cutoff();
        calibrate();
    }

    /// Parseval constant; 1/(2 pi) under the library convention.
    double constant() const noexcept { return constant_; }
    /// |Psi(u)| < 1e-16 for |u| beyond this.
    double frequency_cutoff() const noexcept { return cutoff_; }
    const Wavelet& wavelet() const noexcept { return wavelet_; }

    /// sqrt(a) int Re[exp(i b w) F(w) conj(Psi(a w))] dw without the constant.
    double raw_pairing(const DistributionInput& f, double a, double b) const {
        detail::require_positive_dilation(a);
        using namespace std::complex_literals;
        auto integrand = [&](double omega) {
            const auto psi_hat = wavelet_.fourier(a * omega);
            if (psi_hat == 0.0) return 0.0;
            return std::real(std::exp(1i * b * omega) * fourier_transform(f, omega, spec_) * std::conj(psi_hat));
        };
        const double limit = cutoff_ / a;
        const std::vector<double> breaks{-limit, -limit / 4, 0.0, limit / 4, limit};
        return std::sqrt(a) * detail::integrate_pieces(integrand, breaks, spec_).value;
    }

    TransformPoint transform(const DistributionInput& f, double a, double b) const {
        return {a, b, constant_ * raw_pairing(f, a, b), TransformMethod::fourier};
    }

private:
    double find_cutoff() const {
        double last_significant = 0.0;
        for (double u = 0.0; u <= 1e3; u += 0.25)
            if (std::abs(wavelet_.fourier(u)) >= 1e-16 || std::abs(wavelet_.fourier(-u)) >= 1e-16) last_significant = u;
        return last_significant + 0.25;
    }

    void calibrate() {
        const auto delta = DistributionInput::delta(0.0);
        for (double b : {0.0, 0.5, 1.0, 1.5}) {
            const double exact = cwt_direct(delta, wavelet_, 1.0, b).value;
            if (std::abs(exact) < 1e-6) continue;
            constant_ = exact / raw_pairing(delta, 1.0, b);
            return;
        }
        throw UnsupportedInputError("cannot calibrate the Fourier pairing: wavelet vanishes at the probe points");
    }

    Wavelet wavelet_;
    QuadratureSpec spec_;
    double cutoff_ = 0.0;
    double constant_ = 1.0;
};

inline TransformPoint cwt_fourier(const DistributionInput& f, const Wavelet& w, double a, double b,
                                  const QuadratureSpec& spec = {}) {
    return FourierPairing(w, spec).transform(f, a, b);
}

struct FourierMomentCheck {
    /// Numerical D^alpha F(0).
    std::complex<double> lhs;
    /// i^alpha mu_alpha, as the duality is usually quoted.
    std::complex<double> rhs;
    /// (-i)^alpha mu_alpha, the value the library convention predicts for lhs.
    std::complex<double> rhs_pinned;
    double moment = 0.0;
    double lhs_error = 0.0;
};

/// Compares the alpha-th derivative of the Fourier transform at 0 (central
/// differences starting from step h) with the moment mu_alpha.
inline FourierMomentCheck fourier_moment_check(const DistributionInput& f, int alpha, double h,
                                               const QuadratureSpec& spec = {}) {
    if (alpha < 0) throw ConfigurationError("alpha must be non-negative");
    const double mu = moment(f, alpha, spec);
    const auto est = central_derivative<std::complex<double>, double>(
        [&](double omega) { return fourier_transform(f, omega, spec); }, alpha, 0.0, h);
    return {est.value, detail::imaginary_unit_power(alpha) * mu, detail::imaginary_unit_power(alpha, -1) * mu, mu,
            est.error};
}

}  // namespace mwt

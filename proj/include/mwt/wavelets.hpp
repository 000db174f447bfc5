#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mwt/errors.hpp"
#include "mwt/hermite.hpp"
#include "mwt/numdiff.hpp"

namespace mwt {

inline constexpr int kDefaultMaxDerivativeOrder = 16;

enum class DerivativeEngine {
    /// Closed form: Hermite recurrence for the Gaussian family, power rule for monomials.
    hermite_recurrence,
    /// Richardson-extrapolated central differences of the function values.
    central_difference,
};

/// A smooth real function with derivatives of every order up to a configured maximum.
/// Values are immutable; copies share the underlying callables.
class SmoothFunction {
public:
    using Eval = std::function<long double(long double)>;
    using ExactDerivative = std::function<long double(int, long double)>;
    using Fourier = std::function<std::complex<double>(double)>;
    /// 50-digit evaluation; lets the central-difference engine reach high orders.
    using WideReal = boost::multiprecision::cpp_bin_float_50;
    using WideEval = std::function<WideReal(const WideReal&)>;

    SmoothFunction(std::string name, Eval eval, ExactDerivative exact = {}, bool admissible = false,
                   Fourier fourier = {}, WideEval wide = {})
        : name_(std::move(name)),
          eval_(std::move(eval)),
          exact_(std::move(exact)),
          fourier_(std::move(fourier)),
          wide_(std::move(wide)),
          admissible_(admissible),
          engine_(exact_ ? DerivativeEngine::hermite_recurrence : DerivativeEngine::central_difference) {}

    const std::string& name() const noexcept { return name_; }
    bool admissible() const noexcept { return admissible_; }
    DerivativeEngine engine() const noexcept { return engine_; }
    int max_order() const noexcept { return max_order_; }
    bool has_exact_derivative() const noexcept { return static_cast<bool>(exact_); }
    bool has_fourier_transform() const noexcept { return static_cast<bool>(fourier_); }

    double operator()(double x) const { return static_cast<double>(eval_(x)); }
    long double eval(long double x) const { return eval_(x); }

    /// D^order at x. Throws ConfigurationError above max_order().
    double derivative(int order, double x) const {
        if (order < 0 || order > max_order_) {
            std::ostringstream msg;
            msg << "derivative order " << order << " of '" << name_ << "' is outside [0, " << max_order_
                << "]";
            throw ConfigurationError(msg.str());
        }
        if (order == 0) return (*this)(x);
        if (engine_ == DerivativeEngine::hermite_recurrence)
            return static_cast<double>(exact_(order, static_cast<long double>(x)));
        if (wide_) {
            // Smallest step 2^-7: roundoff ~ 1e-50 * 2^k / h^k stays negligible up to order 16.
            const auto est = richardson_derivative<WideReal, WideReal>(wide_, order, WideReal(x), WideReal(0.25), 6,
                                                                      WideReal(2));
            return static_cast<double>(est.value);
        }
        const auto est = central_derivative<long double, long double>(eval_, order, static_cast<long double>(x),
                                                                      1.0L);
        return static_cast<double>(est.value);
    }

    /// Fourier transform with the convention  F(w) = int f(x) exp(-i w x) dx.
    std::complex<double> fourier(double omega) const {
        if (!fourier_) throw UnsupportedInputError("no closed-form Fourier transform for '" + name_ + "'");
        return fourier_(omega);
    }

    SmoothFunction with_engine(DerivativeEngine engine) const {
        if (engine == DerivativeEngine::hermite_recurrence && !exact_)
            throw ConfigurationError("'" + name_ + "' has no closed-form derivatives");
        SmoothFunction copy = *this;
        copy.engine_ = engine;
        return copy;
    }

    SmoothFunction with_max_order(int max_order) const {
        if (max_order < 0) throw ConfigurationError("maximum derivative order must be non-negative");
        SmoothFunction copy = *this;
        copy.max_order_ = max_order;
        return copy;
    }

private:
    std::string name_;
    Eval eval_;
    ExactDerivative exact_;
    Fourier fourier_;
    WideEval wide_;
    bool admissible_;
    DerivativeEngine engine_;
    int max_order_ = kDefaultMaxDerivativeOrder;
};

/// Mother wavelets are smooth functions flagged admissible (zero mean).
using Wavelet = SmoothFunction;

inline double eval_mexican_hat(double x) { return (1.0 - x * x) * std::exp(-x * x / 2.0); }

/// psi(x) = (1 - x^2) exp(-x^2/2) = -D^2 exp(-x^2/2), hence
/// D^k psi(x) = (-1)^(k+1) He_{k+2}(x) exp(-x^2/2).
inline Wavelet mexican_hat() {
    return Wavelet(
        "mexican-hat", [](long double x) { return (1.0L - x * x) * std::exp(-x * x / 2.0L); },
        [](int k, long double x) {
            const long double sign = (k % 2 == 0) ? -1.0L : 1.0L;
            return sign * hermite_he(k + 2, x) * std::exp(-x * x / 2.0L);
        },
        true,
        [](double w) {
            return std::complex<double>(std::sqrt(2.0 * std::numbers::pi) * w * w * std::exp(-w * w / 2.0), 0.0);
        },
        [](const SmoothFunction::WideReal& x) { return SmoothFunction::WideReal((1 - x * x) * exp(-x * x / 2)); });
}

/// g(x) = exp(-x^2/2), D^k g(x) = (-1)^k He_k(x) g(x).
inline SmoothFunction gaussian() {
    return SmoothFunction(
        "gaussian", [](long double x) { return std::exp(-x * x / 2.0L); },
        [](int k, long double x) {
            const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
            return sign * hermite_he(k, x) * std::exp(-x * x / 2.0L);
        },
        false,
        [](double w) { return std::complex<double>(std::sqrt(2.0 * std::numbers::pi) * std::exp(-w * w / 2.0), 0.0); },
        [](const SmoothFunction::WideReal& x) { return SmoothFunction::WideReal(exp(-x * x / 2)); });
}

/// x^power.
inline SmoothFunction monomial(int power) {
    if (power < 0) throw ConfigurationError("monomial power must be non-negative");
    return SmoothFunction(
        "monomial-" + std::to_string(power), [power](long double x) { return std::pow(x, power); },
        [power](int k, long double x) {
            if (k > power) return 0.0L;
            long double falling = 1.0L;
            for (int i = 0; i < k; ++i) falling *= static_cast<long double>(power - i);
            return falling * std::pow(x, power - k);
        },
        false, {}, [power](const SmoothFunction::WideReal& x) { return SmoothFunction::WideReal(pow(x, power)); });
}

inline double wavelet_derivative(const Wavelet& w, int order, double x) { return w.derivative(order, x); }

/// Truncated Taylor expansion sum_k c_k (x - center)^k with c_k = D^k psi(center) / k!.
struct TaylorPolynomial {
    double center = 0.0;
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    /// Polynomial in the offset t = x - center.
    double at_offset(double t) const {
        double acc = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    double operator()(double x) const { return at_offset(x - center); }

    /// D^order of the polynomial at x.
    double derivative(int order, double x) const {
        const double t = x - center;
        double acc = 0.0;
        for (std::size_t k = coefficients.size(); k-- > static_cast<std::size_t>(std::max(order, 0));) {
            double falling = 1.0;
            for (int i = 0; i < order; ++i) falling *= static_cast<double>(k) - i;
            acc = acc * t + falling * coefficients[k];
        }
        return acc;
    }
};

inline TaylorPolynomial taylor_polynomial(const Wavelet& w, int degree, double center) {
    if (degree < 0) throw ConfigurationError("Taylor degree must be non-negative");
    TaylorPolynomial p{center, std::vector<double>(degree + 1)};
    double factorial = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) factorial *= k;
        p.coefficients[k] = w.derivative(k, center) / factorial;
    }
    return p;
}

}  // namespace mwt

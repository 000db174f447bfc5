#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwt/distributions.hpp"
#include "mwt/errors.hpp"
#include "mwt/growth.hpp"
#include "mwt/transform.hpp"
#include "mwt/wavelets.hpp"

namespace mwt {

/// Terms of a moment expansion with running partial sums and, once a reference
/// value is attached, the remainders reference - partial_sum.
struct ExpansionResult {
    double a = 1.0;
    double b = 0.0;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    /// NaN until set_reference() is called.
    std::vector<double> remainders;
    std::optional<double> reference;

    int order() const { return static_cast<int>(terms.size()) - 1; }

    void set_reference(double value) {
        reference = value;
        for (std::size_t n = 0; n < partial_sums.size(); ++n) remainders[n] = value - partial_sums[n];
    }

    static ExpansionResult from_terms(double a, double b, std::vector<double> terms) {
        ExpansionResult r{a, b, std::move(terms), {}, {}, std::nullopt};
        r.partial_sums.resize(r.terms.size());
        double acc = 0.0;
        for (std::size_t n = 0; n < r.terms.size(); ++n) r.partial_sums[n] = acc = acc + r.terms[n];
        r.remainders.assign(r.terms.size(), std::numeric_limits<double>::quiet_NaN());
        return r;
    }
};

namespace detail {

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline void require_moments(const MomentSequence& m, int N) {
    if (N < 0) throw ConfigurationError("expansion order N must be non-negative");
    if (m.max_valid_order && N > *m.max_valid_order) {
        const int cap = *m.max_valid_order;
        throw TruncationError("expansion order N=" + std::to_string(N) + " exceeds the truncation limit " +
                                  "N=[[gamma]]-1=" + std::to_string(cap) + " for growth class " + describe(m.growth) +
                                  (cap < 0 ? " (no valid expansion order)" : ""),
                              cap);
    }
    if (m.contiguous_order() < N) {
        const int cap = m.contiguous_order();
        throw TruncationError("expansion order N=" + std::to_string(N) + " needs moments up to " + std::to_string(N) +
                                  " but only 0.." + std::to_string(cap) + " are available" +
                                  (m.absent_reason.empty() ? "" : " (" + m.absent_reason + ")"),
                              cap);
    }
}

}  // namespace detail

/// Large-dilation series  sum_{k<=N} mu_k D^k psi(-b/a) / (k! a^{k+1/2}).
inline ExpansionResult expansion_large_a(const MomentSequence& m, const Wavelet& w, double a, double b, int N) {
    detail::require_positive_dilation(a);
    detail::require_moments(m, N);
    std::vector<double> terms(N + 1);
    const double center = -b / a;
    for (int k = 0; k <= N; ++k)
        terms[k] = m.at(k) * w.derivative(k, center) / (detail::factorial(k) * std::pow(a, k + 0.5));
    return ExpansionResult::from_terms(a, b, std::move(terms));
}

/// Small-dilation series  sum_{k<=N} mu_k(psi) D^k f(b) a^{k+1/2} / k!,
/// with the roles of signal and wavelet exchanged.
inline ExpansionResult expansion_small_a(const MomentSequence& psi_moments, const SmoothFunction& f, double a,
                                         double b, int N) {
    detail::require_positive_dilation(a);
    detail::require_moments(psi_moments, N);
    std::vector<double> terms(N + 1);
    for (int k = 0; k <= N; ++k)
        terms[k] = psi_moments.at(k) * f.derivative(k, b) * std::pow(a, k + 0.5) / detail::factorial(k);
    return ExpansionResult::from_terms(a, b, std::move(terms));
}

/// a^{-1/2} <psi(x/a), f(x + b)> = sqrt(a) <psi, f(a t + b)>, the transform with psi as
/// the distribution and f as the test function.
inline double small_a_reference(const DistributionInput& psi, const SmoothFunction& f, double a, double b,
                                const QuadratureSpec& spec = {}) {
    detail::require_positive_dilation(a);
    const double root = std::sqrt(a);
    if (psi.kind() == DistributionInput::Kind::point_masses) {
        double sum = 0.0;
        for (const auto& m : psi.point_masses()) {
            const int k = m.derivative_order;
            const double sign = (k % 2) ? -1.0 : 1.0;
            sum += m.weight * sign * std::pow(a, k) * f.derivative(k, a * m.location + b);
        }
        return root * sum;
    }
    return root * detail::integrate_localized(psi, [&](double t) { return f(a * t + b); }, 0.0, 1.0, spec).value;
}

/// Lazily computed, cached cwt_direct values for one (f, psi) pair. Safe to share.
class ReferenceCache {
public:
    ReferenceCache(DistributionInput f, Wavelet w, QuadratureSpec spec = {})
        : f_(std::move(f)), w_(std::move(w)), spec_(spec) {}

    double operator()(double a, double b) const {
        const std::lock_guard lock(mutex_);
        const auto key = std::make_pair(a, b);
        if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
        const double v = cwt_direct(f_, w_, a, b, spec_).value;
        cache_.emplace(key, v);
        return v;
    }

    std::size_t size() const {
        const std::lock_guard lock(mutex_);
        return cache_.size();
    }

private:
    DistributionInput f_;
    Wavelet w_;
    QuadratureSpec spec_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<double, double>, double> cache_;
};

// ---------------------------------------------------------------------------
// Mexican-Hat closed forms for the quadratic (N = 2) large-a expansion.

/// Taylor coefficients of psi(x - b/a) about x = 0, written out:
/// e^{-b^2/2a^2}/a^2 * { a^2 - b^2,  b(3a^2 - b^2)/a,  (6a^2b^2 - 3a^4 - b^4)/(2a^2) }.
inline std::array<double, 3> mexican_hat_taylor2_coefficients(double a, double b) {
    const double pref = std::exp(-b * b / (2.0 * a * a)) / (a * a);
    const double a2 = a * a, b2 = b * b;
    return {pref * (a2 - b2), pref * b * (3.0 * a2 - b2) / a, pref * (6.0 * a2 * b2 - 3.0 * a2 * a2 - b2 * b2) / (2.0 * a2)};
}

/// sqrt(a) <f(ax), P_2(x)> = sum_k c_k mu_k / a^{k+1/2}.
inline double mexican_hat_taylor2_expansion(const std::array<double, 3>& mu, double a, double b) {
    const auto c = mexican_hat_taylor2_coefficients(a, b);
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) sum += c[k] * mu[k] / std::pow(a, k + 0.5);
    return sum;
}

/// e^{-b^2/2a^2}/a^2 [ (a^2-b^2) mu_0/sqrt(a) + b(3a^2-b^2) mu_1/a^{3/2}
///                     + (6a^2b^2-3a^4-b^4) mu_2/(2 a^{5/2}) ].
/// Term k lacks the a^{-k} dilation of the moments, so it differs from the
/// N = 2 series by a factor a^k.
inline double mexican_hat_taylor2_expansion_unscaled(const std::array<double, 3>& mu, double a, double b) {
    const double pref = std::exp(-b * b / (2.0 * a * a)) / (a * a);
    const double a2 = a * a, b2 = b * b;
    return pref * ((a2 - b2) / std::sqrt(a) * mu[0] + b * (3.0 * a2 - b2) / std::pow(a, 1.5) * mu[1] +
                   (6.0 * a2 * b2 - 3.0 * a2 * a2 - b2 * b2) / (2.0 * std::pow(a, 2.5)) * mu[2]);
}

// ---------------------------------------------------------------------------
// Mexican-Hat small-a series with Gamma-function coefficients.

/// -2^{(2k-1)/2} Gamma((2k+1)/2), the coefficient attached to D^{2k} f(b) a^{2k+1/2}/(2k)!.
inline double mexican_hat_small_a_gamma_coefficient(int k) {
    return -std::pow(2.0, (2.0 * k - 1.0) / 2.0) * std::tgamma((2.0 * k + 1.0) / 2.0);
}

/// The Gamma-coefficient series through order N (odd orders are zero).
inline ExpansionResult mexican_hat_small_a_gamma_coeffs(const SmoothFunction& f, double a, double b, int N) {
    detail::require_positive_dilation(a);
    if (N < 0) throw ConfigurationError("expansion order N must be non-negative");
    std::vector<double> terms(N + 1, 0.0);
    for (int j = 0; j <= N; j += 2)
        terms[j] = mexican_hat_small_a_gamma_coefficient(j / 2) * f.derivative(j, b) * std::pow(a, j + 0.5) /
                   detail::factorial(j);
    return ExpansionResult::from_terms(a, b, std::move(terms));
}

struct CoefficientComparison {
    int order = 0;
    double gamma_coefficient = 0.0;
    double oracle_moment = 0.0;
    bool mismatch = false;
};

/// Row per order 0..N: the Gamma coefficient (even orders) next to the computed moment.
inline std::vector<CoefficientComparison> compare_small_a_coefficients(const MomentSequence& oracle, int N,
                                                                       double tol = 1e-9) {
    std::vector<CoefficientComparison> rows;
    for (int j = 0; j <= N; ++j) {
        const double coeff = (j % 2 == 0) ? mexican_hat_small_a_gamma_coefficient(j / 2) : 0.0;
        const double mu = oracle.at(j);
        rows.push_back({j, coeff, mu, std::abs(coeff - mu) > tol * std::max(1.0, std::abs(mu))});
    }
    return rows;
}

}  // namespace mwt

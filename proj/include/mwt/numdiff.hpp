#pragma once

// Central finite differences of arbitrary order with Richardson extrapolation
// (Ridders' Neville tableau). Used as an independent check of closed-form
// derivatives and for derivatives of numerically defined transforms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "mwt/errors.hpp"

namespace mwt {

template <class Value>
struct DerivativeEstimate {
    Value value{};
    double error = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// n-th central difference divided by h^n. Nodes sit at x + (n/2 - j) h, so the
// truncation error expands in even powers of h for every n.
template <class Value, class Arg, class F>
Value central_difference(F& f, int order, Arg x, Arg h) {
    Value sum{};
    for (int j = 0; j <= order; ++j) {
        const Arg node = x + (static_cast<Arg>(order) / 2 - static_cast<Arg>(j)) * h;
        const double c = ((j % 2) ? -1.0 : 1.0) * binomial(order, j);
        sum += static_cast<Value>(static_cast<Arg>(c)) * static_cast<Value>(f(node));
    }
    using std::pow;
    return sum / static_cast<Value>(pow(h, order));
}

}  // namespace detail

/// order-th derivative of f at x. The first step is h0; the step shrinks by
/// `shrink` per level and the extrapolation stops once the error estimate grows.
template <class Value, class Arg = double, class F>
DerivativeEstimate<Value> central_derivative(F&& f, int order, Arg x, Arg h0, int levels = 12,
                                             Arg shrink = static_cast<Arg>(1.4)) {
    if (order < 0) throw ConfigurationError("derivative order must be non-negative");
    if (order == 0) return {static_cast<Value>(f(x)), 0.0};
    if (!(h0 > 0)) throw ConfigurationError("finite-difference step must be positive");

    using std::abs;
    const Arg shrink2 = shrink * shrink;
    std::vector<std::vector<Value>> table(levels, std::vector<Value>(levels));
    DerivativeEstimate<Value> best;
    Arg h = h0;
    table[0][0] = detail::central_difference<Value, Arg>(f, order, x, h);
    best.value = table[0][0];
    for (int i = 1; i < levels; ++i) {
        h /= shrink;
        table[0][i] = detail::central_difference<Value, Arg>(f, order, x, h);
        Arg factor = shrink2;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * static_cast<Value>(factor) - table[j - 1][i - 1]) /
                          static_cast<Value>(factor - 1);
            factor *= shrink2;
            const double err = std::max(static_cast<double>(abs(table[j][i] - table[j - 1][i])),
                                        static_cast<double>(abs(table[j][i] - table[j - 1][i - 1])));
            if (err <= best.error) {
                best.error = err;
                best.value = table[j][i];
            }
        }
        if (static_cast<double>(abs(table[i][i] - table[i - 1][i - 1])) >= 2.0 * best.error) break;
    }
    return best;
}

/// Fixed Richardson ladder: steps h0, h0/shrink, ..., fully extrapolated. No
/// data-dependent stopping, so the caller must pick h0 and levels so the smallest
/// step stays well above the roundoff of the working precision.
template <class Value, class Arg = double, class F>
DerivativeEstimate<Value> richardson_derivative(F&& f, int order, Arg x, Arg h0, int levels = 6,
                                                Arg shrink = static_cast<Arg>(2)) {
    if (order < 0) throw ConfigurationError("derivative order must be non-negative");
    if (order == 0) return {static_cast<Value>(f(x)), 0.0};
    if (!(h0 > 0) || levels < 2) throw ConfigurationError("Richardson ladder needs h0 > 0 and levels >= 2");
    using std::abs;
    std::vector<Value> row(levels), prev(levels);
    Arg h = h0;
    for (int i = 0; i < levels; ++i, h /= shrink) row[i] = detail::central_difference<Value, Arg>(f, order, x, h);
    const Arg shrink2 = shrink * shrink;
    Arg factor = shrink2;
    Value last_diagonal = row[levels - 1];
    for (int j = 1; j < levels; ++j, factor *= shrink2) {
        prev = row;
        for (int i = j; i < levels; ++i)
            row[i] = (prev[i] * static_cast<Value>(factor) - prev[i - 1]) / static_cast<Value>(factor - 1);
        if (j == levels - 1) last_diagonal = prev[levels - 1];
    }
    return {row[levels - 1], static_cast<double>(abs(row[levels - 1] - last_diagonal))};
}

}  // namespace mwt

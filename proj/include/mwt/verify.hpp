#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mwt/errors.hpp"
#include "mwt/wavelets.hpp"

namespace mwt {

/// Remainders smaller than this sit in quadrature noise and are left out of fits.
inline constexpr double kRemainderFloor = 1e-14;
inline constexpr int kSeminormGridPoints = 4096;

struct OrderFitReport {
    std::vector<double> a_grid;
    std::vector<double> abs_remainders;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<int> excluded_points;
};

/// Least-squares line through (log a, log |r|).
inline OrderFitReport remainder_order_fit(std::span<const double> a_grid, std::span<const double> remainders,
                                          double floor = kRemainderFloor) {
    if (a_grid.size() != remainders.size())
        throw ConfigurationError("a_grid and remainders must have the same length");
    if (a_grid.size() < 4) throw ConfigurationError("order fit needs at least 4 grid points");
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        if (!(a_grid[i] > 0.0)) throw ConfigurationError("a_grid entries must be positive");
    const double ratio = a_grid[1] / a_grid[0];
    if (ratio < 2.0 * (1.0 - 1e-12)) throw ConfigurationError("a_grid must be geometric with ratio >= 2");
    for (std::size_t i = 1; i < a_grid.size(); ++i)
        if (std::abs(a_grid[i] / a_grid[i - 1] - ratio) > 1e-9 * ratio)
            throw ConfigurationError("a_grid must be geometric with a constant ratio");

    OrderFitReport rep;
    rep.a_grid.assign(a_grid.begin(), a_grid.end());
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        const double r = std::abs(remainders[i]);
        rep.abs_remainders.push_back(r);
        if (!(r >= floor) || !std::isfinite(r)) {
            rep.excluded_points.push_back(static_cast<int>(i));
            continue;
        }
        xs.push_back(std::log(a_grid[i]));
        ys.push_back(std::log(r));
    }
    if (xs.size() < 3)
        throw InsufficientDataError("only " + std::to_string(xs.size()) +
                                    " remainders lie above the noise floor; need at least 3");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    rep.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return rep;
}

/// sup |g| over [lo, hi]: uniform grid, then golden-section refinement around the
/// best grid point.
template <class G>
double grid_sup(G&& g, double lo, double hi, int points = kSeminormGridPoints, bool refine = true) {
    if (!(lo < hi)) throw DomainError("grid_sup needs lo < hi");
    if (points < 2) throw ConfigurationError("grid_sup needs at least 2 points");
    const double step = (hi - lo) / (points - 1);
    int best_i = 0;
    double best = -1.0;
    for (int i = 0; i < points; ++i) {
        const double v = std::abs(g(lo + i * step));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (!refine) return best;

    double left = lo + std::max(best_i - 1, 0) * step;
    double right = lo + std::min(best_i + 1, points - 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = right - inv_phi * (right - left);
    double x2 = left + inv_phi * (right - left);
    double f1 = std::abs(g(x1)), f2 = std::abs(g(x2));
    for (int it = 0; it < 80 && right - left > 1e-15 * std::max(1.0, std::abs(left)); ++it) {
        if (f1 < f2) {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + inv_phi * (right - left);
            f2 = std::abs(g(x2));
        } else {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - inv_phi * (right - left);
            f1 = std::abs(g(x1));
        }
    }
    return std::max({best, f1, f2});
}

/// sup over the window of | d^alpha/dx^alpha psi_q((x - b)/a) |, where psi_q is psi
/// minus its Taylor polynomial of degree q-1 at 0. For b >= 0 the window is
/// b/a - M < x < b + M; b < 0 is reflected onto that case.
inline double seminorm_value(const Wavelet& w, int q, double b, double M, int alpha, double a,
                             int points = kSeminormGridPoints) {
    if (q < 0 || alpha < 0) throw ConfigurationError("q and alpha must be non-negative");
    if (!(a > 0.0)) throw DomainError("dilation a must be positive");
    if (!(M > 0.0)) throw DomainError("window half-width M must be positive");
    const bool reflected = b < 0.0;
    const double bb = reflected ? -b : b;
    const double lo = bb / a - M;
    const double hi = bb + M;
    if (!(lo < hi)) throw DomainError("seminorm window is empty: b + M <= b/a - M");

    const TaylorPolynomial p = q > 0 ? taylor_polynomial(w, q - 1, 0.0) : TaylorPolynomial{0.0, {}};
    const double chain = std::pow(a, -alpha);
    auto g = [&](double x) {
        double y = (x - bb) / a;
        if (reflected) y = -y;
        const double poly = q > 0 ? p.derivative(alpha, y) : 0.0;
        return chain * (w.derivative(alpha, y) - poly);
    };
    return grid_sup(g, lo, hi, points);
}

/// Fits the decay of seminorm_value over a_grid; the expected slope is -q.
inline OrderFitReport seminorm_decay_check(const Wavelet& w, int q, double b, double M, int alpha,
                                           std::span<const double> a_grid) {
    std::vector<double> sups;
    sups.reserve(a_grid.size());
    for (double a : a_grid) sups.push_back(seminorm_value(w, q, b, M, alpha, a));
    return remainder_order_fit(a_grid, sups);
}

/// start, start*ratio, ..., count entries.
inline std::vector<double> geometric_grid(double start, double ratio, int count) {
    if (!(start > 0.0) || !(ratio > 0.0) || count < 1)
        throw ConfigurationError("geometric grid needs start > 0, ratio > 0, count >= 1");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = start * std::pow(ratio, i);
    return g;
}

}  // namespace mwt

#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration in the style of QUADPACK's QAG.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "mwt/errors.hpp"

namespace mwt {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    /// Half-width used when a caller has to truncate the real line.
    double truncation_T = 12.0;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw ConfigurationError("quadrature tolerances must be strictly positive");
        if (max_subdivisions < 1)
            throw ConfigurationError("max_subdivisions must be at least 1");
        if (!(truncation_T > 0.0))
            throw ConfigurationError("truncation_T must be strictly positive");
    }
};

template <class Real>
struct QuadratureResult {
    Real value{};
    Real err_estimate{};
    int subdivisions = 0;
    /// The error estimate reached the rounding floor of the rule before the tolerance.
    bool roundoff_limited = false;
};

namespace detail {

// Kronrod abscissae and weights; every second abscissa is a Gauss node.
inline constexpr std::array<long double, 8> kXgk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kWgk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<long double, 4> kWg = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class Real>
struct Segment {
    Real lo, hi, value, err;
    bool frozen;  // at the rounding floor, bisection cannot help
};

template <class Real, class F>
Segment<Real> gauss_kronrod_15(F& g, Real lo, Real hi) {
    const Real center = (lo + hi) / 2;
    const Real half = (hi - lo) / 2;
    const Real f_center = static_cast<Real>(g(center));

    std::array<Real, 7> f1{}, f2{};
    Real res_k = f_center * static_cast<Real>(kWgk[7]);
    Real res_g = f_center * static_cast<Real>(kWg[3]);
    Real res_abs = std::abs(res_k);
    for (int j = 0; j < 7; ++j) {
        const Real dx = half * static_cast<Real>(kXgk[j]);
        f1[j] = static_cast<Real>(g(center - dx));
        f2[j] = static_cast<Real>(g(center + dx));
        const Real sum = f1[j] + f2[j];
        res_k += static_cast<Real>(kWgk[j]) * sum;
        res_abs += static_cast<Real>(kWgk[j]) * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) res_g += static_cast<Real>(kWg[j / 2]) * sum;
    }
    const Real mean = res_k / 2;
    Real res_asc = static_cast<Real>(kWgk[7]) * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j)
        res_asc += static_cast<Real>(kWgk[j]) * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const Real value = res_k * half;
    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    Real err = std::abs((res_k - res_g) * half);
    if (res_asc != 0 && err != 0) err = res_asc * std::min<Real>(1, std::pow(200 * err / res_asc, Real(1.5)));

    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real floor = 50 * eps * res_abs;
    bool frozen = false;
    if (res_abs > std::numeric_limits<Real>::min() / (50 * eps) && err <= floor) {
        err = floor;
        frozen = true;
    }
    // Intervals that cannot be split any further are frozen too.
    if (std::abs(half) <= 100 * eps * std::max<Real>(std::abs(center), 1)) frozen = true;
    return {lo, hi, value, err, frozen};
}

}  // namespace detail

/// Integrates g over the finite interval [lo, hi] until the summed error estimate
/// drops below max(abs_tol, rel_tol * |value|). Throws NonConvergenceError carrying
/// the best estimate when the subdivision budget runs out.
template <class Real = double, class F>
QuadratureResult<Real> integrate(F&& g, Real lo, Real hi, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(lo < hi) || !std::isfinite(static_cast<double>(lo)) || !std::isfinite(static_cast<double>(hi)))
        throw DomainError("integrate requires finite lo < hi");

    using Seg = detail::Segment<Real>;
    auto by_error = [](const Seg& l, const Seg& r) { return l.err < r.err; };
    std::priority_queue<Seg, std::vector<Seg>, decltype(by_error)> active(by_error);

    auto first = detail::gauss_kronrod_15<Real>(g, lo, hi);
    Real total = first.value;
    Real active_err = 0;  // error still reducible by bisection
    Real frozen_err = 0;  // error at the rounding floor
    auto file = [&](const Seg& s) {
        if (s.frozen) {
            frozen_err += s.err;
        } else {
            active.push(s);
            active_err += s.err;
        }
    };
    file(first);

    const Real abs_tol = static_cast<Real>(spec.abs_tol);
    const Real rel_tol = static_cast<Real>(spec.rel_tol);
    int subdivisions = 1;
    while (active_err + frozen_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        // Once the floor dominates, more bisection cannot meet the tolerance.
        if (active.empty() || (frozen_err > std::max(abs_tol, rel_tol * std::abs(total)) && active_err <= frozen_err))
            return {total, active_err + frozen_err, subdivisions, true};
        if (subdivisions >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge on [" << static_cast<double>(lo) << ", "
                << static_cast<double>(hi) << "] within " << spec.max_subdivisions
                << " subdivisions (estimate " << static_cast<double>(total) << ", error "
                << static_cast<double>(active_err + frozen_err) << ")";
            throw NonConvergenceError(msg.str(), static_cast<double>(total),
                                      static_cast<double>(active_err + frozen_err));
        }
        const Seg worst = active.top();
        active.pop();
        active_err = std::max<Real>(0, active_err - worst.err);
        const Real mid = (worst.lo + worst.hi) / 2;
        const auto left = detail::gauss_kronrod_15<Real>(g, worst.lo, mid);
        const auto right = detail::gauss_kronrod_15<Real>(g, mid, worst.hi);
        ++subdivisions;
        total += (left.value + right.value) - worst.value;
        file(left);
        file(right);
    }
    const Real total_err = active_err + frozen_err;
    return {total, total_err, subdivisions, false};
}

/// Integrates over [-T, T] and widens by doubling until the added tails are
/// negligible; throws NonConvergenceError when the tails never settle.
template <class Real = double, class F>
QuadratureResult<Real> integrate_full_line(F&& g, Real T, const QuadratureSpec& spec = {},
                                           int max_doublings = 6) {
    auto core = integrate<Real>(g, -T, T, spec);
    for (int k = 0; k <= max_doublings; ++k) {
        const Real wider = 2 * T;
        const auto left = integrate<Real>(g, -wider, -T, spec);
        const auto right = integrate<Real>(g, T, wider, spec);
        const Real tails = left.value + right.value;
        core.value += tails;
        core.err_estimate += left.err_estimate + right.err_estimate;
        core.subdivisions += left.subdivisions + right.subdivisions;
        core.roundoff_limited = core.roundoff_limited || left.roundoff_limited || right.roundoff_limited;
        const Real tol = std::max(static_cast<Real>(spec.abs_tol), static_cast<Real>(spec.rel_tol) * std::abs(core.value));
        if (std::abs(tails) <= tol) return core;
        T = wider;
    }
    std::ostringstream msg;
    msg << "integrand tails do not vanish up to |x| = " << static_cast<double>(T)
        << "; the pairing diverges or the truncation is insufficient";
    throw NonConvergenceError(msg.str(), static_cast<double>(core.value), static_cast<double>(core.err_estimate));
}

}  // namespace mwt

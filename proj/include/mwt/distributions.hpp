#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74's pchip calls isnan unqualified; <math.h> puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "mwt/errors.hpp"
#include "mwt/growth.hpp"
#include "mwt/quadrature.hpp"

namespace mwt {

/// weight * delta^(derivative_order)(x - location).
struct PointMass {
    double location = 0.0;
    int derivative_order = 0;
    double weight = 1.0;
};

struct Support {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Support compact(double lo, double hi) { return {lo, hi}; }
    static Support full_line() { return {}; }
    bool is_full_line() const { return !std::isfinite(lo) || !std::isfinite(hi); }
};

/// A generalized function: a finite combination of (derivatives of) point masses,
/// or a density. The growth class is declared by the caller and never inferred.
class DistributionInput {
public:
    enum class Kind { point_masses, density };
    using Density = std::function<double(double)>;

    static DistributionInput masses(std::vector<PointMass> masses, GrowthClass growth = Compact{},
                                    std::string name = "point-masses") {
        for (const auto& m : masses)
            if (m.derivative_order < 0) throw ConfigurationError("point-mass derivative order must be >= 0");
        DistributionInput d(Kind::point_masses, std::move(name), std::move(growth));
        d.masses_ = std::move(masses);
        d.validate();
        return d;
    }

    static DistributionInput delta(double location = 0.0, double weight = 1.0, GrowthClass growth = Compact{}) {
        return masses({{location, 0, weight}}, std::move(growth), "delta");
    }

    static DistributionInput delta_derivative(double location, int order, double weight = 1.0,
                                              GrowthClass growth = Compact{}) {
        return masses({{location, order, weight}}, std::move(growth), "delta-derivative");
    }

    static DistributionInput density(std::string name, Density f, Support support, GrowthClass growth) {
        if (!(support.lo < support.hi)) throw ConfigurationError("density support must satisfy lo < hi");
        DistributionInput d(Kind::density, std::move(name), std::move(growth));
        d.density_ = std::move(f);
        d.support_ = support;
        d.validate();
        return d;
    }

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const GrowthClass& growth() const noexcept { return growth_; }
    const std::vector<PointMass>& point_masses() const noexcept { return masses_; }
    const Support& support() const noexcept { return support_; }
    int max_derivative_order() const {
        int k = 0;
        for (const auto& m : masses_) k = std::max(k, m.derivative_order);
        return k;
    }

    double density(double x) const {
        if (kind_ != Kind::density) throw UnsupportedInputError("'" + name_ + "' has no pointwise density");
        if (x < support_.lo || x > support_.hi) return 0.0;
        return density_(x);
    }

    std::optional<int> max_valid_order() const { return mwt::max_valid_order(growth_); }

    /// f(x - c).
    DistributionInput shifted(double c) const {
        DistributionInput d = *this;
        if (kind_ == Kind::point_masses) {
            for (auto& m : d.masses_) m.location += c;
        } else {
            d.density_ = [f = density_, c](double x) { return f(x - c); };
            d.support_ = {support_.lo + c, support_.hi + c};
        }
        return d;
    }

    DistributionInput with_growth(GrowthClass growth) const {
        DistributionInput d = *this;
        d.growth_ = std::move(growth);
        d.validate();
        return d;
    }

private:
    DistributionInput(Kind kind, std::string name, GrowthClass growth)
        : kind_(kind), name_(std::move(name)), growth_(std::move(growth)) {}

    void validate() const {
        if (std::holds_alternative<Compact>(growth_) && kind_ == Kind::density && support_.is_full_line())
            throw ConfigurationError("compact growth class requires a finite support for '" + name_ + "'");
        if (const auto* p = std::get_if<PowerGrowth>(&growth_); p && !std::isfinite(p->gamma))
            throw ConfigurationError("power growth class needs a finite gamma");
    }

    Kind kind_;
    std::string name_;
    GrowthClass growth_;
    std::vector<PointMass> masses_;
    Density density_;
    Support support_;
};

inline DistributionInput gaussian_density(GrowthClass growth = SubExponential{}) {
    return DistributionInput::density(
        "gaussian", [](double x) { return std::exp(-x * x / 2.0); }, Support::full_line(), std::move(growth));
}

/// exp(-1/(1-t^2)) with t = (x - center)/width; smooth with compact support.
inline DistributionInput bump_density(double center = 0.5, double width = 1.0, GrowthClass growth = Compact{}) {
    if (!(width > 0.0)) throw ConfigurationError("bump width must be positive");
    return DistributionInput::density(
        "bump",
        [center, width](double x) {
            const double t = (x - center) / width;
            return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
        },
        Support::compact(center - width, center + width), std::move(growth));
}

/// The Mexican-Hat profile treated as a density.
inline DistributionInput mexican_hat_density(GrowthClass growth = SubExponential{}) {
    return DistributionInput::density(
        "mexican-hat", [](double x) { return (1.0 - x * x) * std::exp(-x * x / 2.0); }, Support::full_line(),
        std::move(growth));
}

/// Reads a two-column (x, f(x)) table with strictly increasing x and interpolates
/// it by a piecewise cubic Hermite (PCHIP) curve. The support is the data range.
inline DistributionInput load_density_file(const std::string& path, GrowthClass growth = Compact{}) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open density file '" + path + "'");
    std::vector<double> xs, ys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream row(line);
        double x = 0.0, y = 0.0;
        if (!(row >> x)) continue;
        if (!(row >> y))
            throw ConfigurationError(path + ":" + std::to_string(lineno) + ": expected two numeric columns");
        if (!xs.empty() && !(x > xs.back()))
            throw ConfigurationError(path + ":" + std::to_string(lineno) + ": x values must be strictly increasing");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 4) throw ConfigurationError("density file '" + path + "' needs at least 4 samples");
    const Support support = Support::compact(xs.front(), xs.back());
    auto spline =
        std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(xs), std::move(ys));
    return DistributionInput::density(
        "file:" + path, [spline](double x) { return (*spline)(x); }, support, std::move(growth));
}

enum class MomentProvenance { closed_form, quadrature };

inline const char* to_string(MomentProvenance p) {
    return p == MomentProvenance::closed_form ? "closed_form" : "quadrature";
}

struct MomentSequence {
    std::map<int, double> values;
    std::map<int, MomentProvenance> provenance;
    std::optional<int> max_valid_order;
    GrowthClass growth = Compact{};
    /// Why the sequence stops short of the requested order, if it does.
    std::string absent_reason;

    bool has(int alpha) const { return values.count(alpha) != 0; }

    double at(int alpha) const {
        const auto it = values.find(alpha);
        if (it == values.end())
            throw MomentDivergenceError("moment " + std::to_string(alpha) + " is not available for growth class " +
                                        describe(growth) + (absent_reason.empty() ? "" : ": " + absent_reason));
        return it->second;
    }

    /// Largest k such that moments 0..k are all present; -1 when none are.
    int contiguous_order() const {
        int k = -1;
        while (has(k + 1)) ++k;
        return k;
    }
};

namespace detail {

inline double falling_factorial(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
    return r;
}

// Truncation half-width for Gaussian-factor moment integrands x^alpha f(x).
inline double moment_truncation(int alpha) { return 9.0 + std::sqrt(2.0 * alpha * std::log(40.0)); }

}  // namespace detail

/// Integral of density(x) * g(x) over the declared support. Full-line densities
/// are truncated at [-T, T] and widened until the tails vanish.
template <class G>
QuadratureResult<double> integrate_against(const DistributionInput& d, G&& g, const QuadratureSpec& spec,
                                           double T) {
    auto integrand = [&](double x) { return d.density(x) * g(x); };
    const Support& s = d.support();
    if (!s.is_full_line()) return integrate<double>(integrand, s.lo, s.hi, spec);
    return integrate_full_line<double>(integrand, T, spec);
}

/// mu_alpha = <f, x^alpha>, with <delta^(k)(. - c), phi> = (-1)^k phi^(k)(c).
inline double moment(const DistributionInput& d, int alpha, const QuadratureSpec& spec = {}) {
    if (alpha < 0) throw ConfigurationError("moment order must be non-negative");
    if (const auto cap = d.max_valid_order(); cap && alpha > *cap)
        throw MomentDivergenceError("moment " + std::to_string(alpha) + " diverges for growth class " +
                                    describe(d.growth()) + "; usable orders end at N=[[gamma]]-1=" +
                                    std::to_string(*cap));
    if (d.kind() == DistributionInput::Kind::point_masses) {
        double sum = 0.0;
        for (const auto& m : d.point_masses()) {
            if (alpha < m.derivative_order) continue;
            const double sign = (m.derivative_order % 2) ? -1.0 : 1.0;
            sum += m.weight * sign * detail::falling_factorial(alpha, m.derivative_order) *
                   std::pow(m.location, alpha - m.derivative_order);
        }
        return sum;
    }
    try {
        return integrate_against(d, [alpha](double x) { return std::pow(x, alpha); }, spec,
                                 detail::moment_truncation(alpha))
            .value;
    } catch (const NonConvergenceError& e) {
        throw MomentDivergenceError("moment " + std::to_string(alpha) + " of '" + d.name() + "' (growth class " +
                                    describe(d.growth()) + ") does not converge: " + e.what());
    }
}

/// Moments 0..up_to, stopping at the growth-class cap or at the first divergent quadrature.
inline MomentSequence moment_sequence(const DistributionInput& d, int up_to, const QuadratureSpec& spec = {}) {
    if (up_to < 0) throw ConfigurationError("up_to must be non-negative");
    MomentSequence seq;
    seq.growth = d.growth();
    seq.max_valid_order = d.max_valid_order();
    const auto provenance = d.kind() == DistributionInput::Kind::point_masses ? MomentProvenance::closed_form
                                                                              : MomentProvenance::quadrature;
    int last = up_to;
    if (seq.max_valid_order && *seq.max_valid_order < up_to) {
        last = *seq.max_valid_order;
        seq.absent_reason = "orders above N=[[gamma]]-1=" + std::to_string(*seq.max_valid_order) +
                            " diverge for growth class " + describe(d.growth());
    }
    for (int alpha = 0; alpha <= last; ++alpha) {
        try {
            seq.values[alpha] = moment(d, alpha, spec);
            seq.provenance[alpha] = provenance;
        } catch (const MomentDivergenceError& e) {
            seq.absent_reason = e.what();
            break;
        }
    }
    return seq;
}

}  // namespace mwt

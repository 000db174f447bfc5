#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

namespace mwt {

/// E' : compact support.
struct Compact {};
/// P' : slower than any exponential.
struct SubExponential {};
/// O'_gamma : derivatives bounded by |x|^gamma.
struct PowerGrowth {
    double gamma = 0.0;
};
/// O'_c : every power class at once.
struct AllPower {};
/// O'_M : Fourier transforms land in O_c.
struct TemperedFourier {};

using GrowthClass = std::variant<Compact, SubExponential, PowerGrowth, AllPower, TemperedFourier>;

/// Highest usable expansion order for power growth gamma: floor(gamma) - 1.
/// A negative result means no order is valid.
inline int truncation_limit(double gamma) { return static_cast<int>(std::floor(gamma)) - 1; }

inline std::string describe(const GrowthClass& g) {
    struct Visitor {
        std::string operator()(Compact) const { return "compact (E')"; }
        std::string operator()(SubExponential) const { return "sub-exponential (P')"; }
        std::string operator()(const PowerGrowth& p) const {
            std::ostringstream os;
            os << "power gamma=" << p.gamma << " (O'_gamma)";
            return os.str();
        }
        std::string operator()(AllPower) const { return "all-power (O'_c)"; }
        std::string operator()(TemperedFourier) const { return "tempered-Fourier (O'_M)"; }
    };
    return std::visit(Visitor{}, g);
}

/// Only the power class caps the moment orders; the others are unbounded.
inline std::optional<int> max_valid_order(const GrowthClass& g) {
    if (const auto* p = std::get_if<PowerGrowth>(&g)) return truncation_limit(p->gamma);
    return std::nullopt;
}

}  // namespace mwt

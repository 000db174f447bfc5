#pragma once

// Name-based construction of wavelets, smooth functions and distribution inputs
// for the scenario runner and the command line.

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mwt/distributions.hpp"
#include "mwt/errors.hpp"
#include "mwt/growth.hpp"
#include "mwt/wavelets.hpp"

namespace mwt::cli {

/// A user-facing input problem; the CLI maps it to exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_double(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

inline std::optional<long long> parse_integer(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    long long v = 0;
    const char* first = t.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

/// key -> (value, line); line 0 when the value did not come from a file.
struct Entry {
    std::string value;
    int line = 0;
};
using KeyValues = std::map<std::string, Entry>;

/// Typed access to a KeyValues block that tracks which keys were read, so that
/// leftovers can be reported as unknown.
class Fields {
public:
    Fields(const KeyValues& kv, std::string where) : kv_(kv), where_(std::move(where)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        const auto it = kv_.find(key);
        const int line = it == kv_.end() ? 0 : it->second.line;
        throw UsageError(anchor(line) + message);
    }

    std::string anchor(int line) const {
        return line > 0 ? where_ + ":" + std::to_string(line) + ": " : where_ + ": ";
    }

    std::optional<std::string> text(const std::string& key) {
        used_.insert(key);
        const auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        return it->second.value;
    }

    std::string required_text(const std::string& key) {
        auto v = text(key);
        if (!v) throw UsageError(anchor(0) + "missing required key '" + key + "'");
        return *v;
    }

    std::optional<double> number(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        const auto v = parse_double(*t);
        if (!v) fail(key, "'" + key + "' expects a decimal number, got '" + *t + "'");
        return v;
    }

    double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }

    double required_number(const std::string& key) {
        const auto v = number(key);
        if (!v) throw UsageError(anchor(0) + "missing required key '" + key + "'");
        return *v;
    }

    std::optional<long long> integer(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        const auto v = parse_integer(*t);
        if (!v) fail(key, "'" + key + "' expects an integer, got '" + *t + "'");
        return v;
    }

    int line_of(const std::string& key) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? 0 : it->second.line;
    }

    void reject_unknown() const {
        for (const auto& [key, entry] : kv_)
            if (!used_.count(key)) throw UsageError(anchor(entry.line) + "unknown key '" + key + "'");
    }

private:
    const KeyValues& kv_;
    std::string where_;
    std::set<std::string> used_;
};

inline Wavelet make_wavelet(const std::string& name) {
    if (name == "mexican-hat") return mexican_hat();
    throw UsageError("unknown wavelet '" + name + "' (built-in: mexican-hat)");
}

/// Smooth test functions: gaussian, mexican-hat, monomial-<k>.
inline SmoothFunction make_function(const std::string& name) {
    if (name == "gaussian") return gaussian();
    if (name == "mexican-hat") return mexican_hat();
    if (name.rfind("monomial-", 0) == 0) {
        const auto k = parse_integer(name.substr(9));
        if (k && *k >= 0 && *k <= 64) return monomial(static_cast<int>(*k));
    }
    throw UsageError("unknown smooth function '" + name + "' (built-in: gaussian, mexican-hat, monomial-<k>)");
}

inline GrowthClass parse_growth(Fields& f, GrowthClass fallback) {
    const auto name = f.text("growth");
    const auto gamma = f.number("gamma");
    if (!name) {
        if (gamma) f.fail("gamma", "'gamma' is only meaningful with growth = power");
        return fallback;
    }
    if (*name == "compact") return Compact{};
    if (*name == "sub_exponential") return SubExponential{};
    if (*name == "all_power") return AllPower{};
    if (*name == "tempered_fourier") return TemperedFourier{};
    if (*name == "power") {
        if (!gamma) f.fail("growth", "growth = power needs a finite 'gamma'");
        return PowerGrowth{*gamma};
    }
    f.fail("growth", "unknown growth class '" + *name +
                         "' (compact, sub_exponential, power, all_power, tempered_fourier)");
}

inline std::vector<PointMass> parse_masses(Fields& f) {
    const std::string spec = f.required_text("masses");
    std::vector<PointMass> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto end = spec.find(';', start);
        const std::string item = trim(spec.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (!item.empty()) {
            const auto c1 = item.find(':');
            const auto c2 = c1 == std::string::npos ? std::string::npos : item.find(':', c1 + 1);
            if (c2 == std::string::npos) f.fail("masses", "mass '" + item + "' must read location:order:weight");
            const auto loc = parse_double(item.substr(0, c1));
            const auto ord = parse_integer(item.substr(c1 + 1, c2 - c1 - 1));
            const auto wt = parse_double(item.substr(c2 + 1));
            if (!loc || !ord || !wt || *ord < 0)
                f.fail("masses", "mass '" + item + "' must read location:order:weight with order >= 0");
            out.push_back({*loc, static_cast<int>(*ord), *wt});
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (out.empty()) f.fail("masses", "'masses' lists no point masses");
    return out;
}

/// Builds the distribution described by a key/value block (see list_builtins()).
inline DistributionInput make_input(const KeyValues& kv, const std::string& where) {
    Fields f(kv, where);
    const std::string kind = f.required_text("kind");
    std::optional<DistributionInput> d;
    try {
        if (kind == "delta") {
            const double loc = f.number_or("location", 0.0);
            const double w = f.number_or("weight", 1.0);
            d = DistributionInput::delta(loc, w, parse_growth(f, Compact{}));
        } else if (kind == "delta-derivative") {
            const double loc = f.number_or("location", 0.0);
            const auto order = f.integer("order").value_or(1);
            if (order < 0) f.fail("order", "'order' must be non-negative");
            const double w = f.number_or("weight", 1.0);
            d = DistributionInput::delta_derivative(loc, static_cast<int>(order), w, parse_growth(f, Compact{}));
        } else if (kind == "point-masses") {
            auto masses = parse_masses(f);
            d = DistributionInput::masses(std::move(masses), parse_growth(f, Compact{}));
        } else if (kind == "gaussian") {
            d = gaussian_density(parse_growth(f, SubExponential{}));
        } else if (kind == "bump") {
            const double c = f.number_or("center", 0.5);
            const double w = f.number_or("width", 1.0);
            if (!(w > 0.0)) f.fail("width", "'width' must be positive");
            d = bump_density(c, w, parse_growth(f, Compact{}));
        } else if (kind == "mexican-hat") {
            d = mexican_hat_density(parse_growth(f, SubExponential{}));
        } else if (kind == "file") {
            const std::string path = f.required_text("path");
            d = load_density_file(path, parse_growth(f, Compact{}));
        } else {
            f.fail("kind", "unknown input kind '" + kind +
                               "' (delta, delta-derivative, point-masses, gaussian, bump, mexican-hat, file)");
        }
        if (const auto shift = f.number("shift"); shift && *shift != 0.0) d = d->shifted(*shift);
    } catch (const UsageError&) {
        throw;
    } catch (const ConfigurationError& e) {
        throw UsageError(f.anchor(f.line_of("kind")) + e.what());
    }
    f.reject_unknown();
    return *d;
}

/// "kind" or "kind:key=value,key=value" as used on the command line.
inline KeyValues parse_input_spec(const std::string& spec) {
    KeyValues kv;
    const auto colon = spec.find(':');
    kv["kind"] = {trim(spec.substr(0, colon)), 0};
    if (colon == std::string::npos) return kv;
    std::size_t start = colon + 1;
    while (start < spec.size()) {
        const auto end = spec.find(',', start);
        const std::string item = spec.substr(start, end == std::string::npos ? std::string::npos : end - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("input spec item '" + item + "' must read key=value");
        kv[trim(item.substr(0, eq))] = {trim(item.substr(eq + 1)), 0};
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return kv;
}

}  // namespace mwt::cli

#pragma once

// Scenario files: '#' comments, [section] headers and key = value lines.
//
//   [scenario]  name, mode, wavelet, b, N, function, q, alpha, M, h
//   [input]     kind plus kind-specific keys (see list_builtins())
//   [a_grid]    start, ratio, count
//   [quadrature] abs_tol, rel_tol, max_subdivisions, truncation_T
//   [checks]    max_slope, min_slope, max_abs_remainder, agreement_rel_tol, duality_tol

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mwt/cli/csv.hpp"
#include "mwt/cli/inputs.hpp"
#include "mwt/distributions.hpp"
#include "mwt/expansion.hpp"
#include "mwt/growth.hpp"
#include "mwt/quadrature.hpp"
#include "mwt/transform.hpp"
#include "mwt/verify.hpp"
#include "mwt/wavelets.hpp"

namespace mwt::cli {

enum class Mode { large_a, small_a, fourier_check, seminorm, moments };

inline std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "large_a") return Mode::large_a;
    if (s == "small_a") return Mode::small_a;
    if (s == "fourier_check") return Mode::fourier_check;
    if (s == "seminorm") return Mode::seminorm;
    if (s == "moments") return Mode::moments;
    return std::nullopt;
}

struct GridSpec {
    double start = 1.0;
    double ratio = 2.0;
    int count = 0;
};

/// A threshold that may be explicitly switched off with "none".
struct Threshold {
    std::optional<double> value;
    bool disabled = false;
};

struct Checks {
    Threshold max_slope;
    Threshold min_slope;
    std::optional<double> max_abs_remainder;
    double agreement_rel_tol = 1e-7;
    double duality_tol = 1e-6;
};

struct Scenario {
    std::string source;
    std::string name;
    Mode mode = Mode::large_a;
    std::string wavelet = "mexican-hat";
    /// Absent only for small_a, where the wavelet's own profile is used.
    std::optional<KeyValues> input;
    std::string function = "gaussian";
    GridSpec a_grid;
    double b = 0.0;
    int N = 0;
    int q = 1;
    int alpha = 0;
    double M = 1.0;
    double h = 0.5;
    QuadratureSpec quadrature;
    Checks checks;
};

struct ScenarioDocument {
    std::map<std::string, KeyValues> sections;
    std::map<std::string, int> section_lines;
};

inline ScenarioDocument parse_document(std::string_view text, const std::string& source) {
    ScenarioDocument doc;
    std::string current;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where + "malformed section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            static const std::vector<std::string> known{"scenario", "input", "a_grid", "quadrature", "checks"};
            if (std::find(known.begin(), known.end(), current) == known.end())
                throw UsageError(where + "unknown section [" + current + "]");
            if (doc.sections.count(current)) throw UsageError(where + "duplicate section [" + current + "]");
            doc.sections[current];
            doc.section_lines[current] = lineno;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(where + "expected 'key = value', got '" + line + "'");
        if (current.empty()) throw UsageError(where + "key outside of any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError(where + "empty key");
        auto& sec = doc.sections[current];
        if (sec.count(key)) throw UsageError(where + "duplicate key '" + key + "'");
        sec[key] = {value, lineno};
    }
    return doc;
}

namespace detail {

inline Threshold parse_threshold(Fields& f, const std::string& key) {
    const auto t = f.text(key);
    if (!t) return {};
    if (*t == "none") return {std::nullopt, true};
    const auto v = parse_double(*t);
    if (!v) f.fail(key, "'" + key + "' expects a number or 'none', got '" + *t + "'");
    return {*v, false};
}

inline bool is_order_fit_mode(Mode m) { return m == Mode::large_a || m == Mode::small_a || m == Mode::seminorm; }

}  // namespace detail

/// Parses and validates a scenario; every problem is a UsageError anchored at source:line.
inline Scenario parse_scenario(std::string_view text, const std::string& source) {
    const ScenarioDocument doc = parse_document(text, source);
    auto section_anchor = [&](const std::string& sec) {
        const auto it = doc.section_lines.find(sec);
        return it == doc.section_lines.end() ? source : source + ":" + std::to_string(it->second);
    };
    static const KeyValues empty;
    auto section = [&](const std::string& sec) -> const KeyValues& {
        const auto it = doc.sections.find(sec);
        return it == doc.sections.end() ? empty : it->second;
    };
    if (!doc.sections.count("scenario")) throw UsageError(source + ": missing [scenario] section");

    Scenario s;
    s.source = source;
    Fields sc(section("scenario"), source);
    auto require = [&](Fields& f, const std::string& sec, const std::string& key) {
        if (!f.has(key)) throw UsageError(section_anchor(sec) + ": [" + sec + "] is missing required key '" + key + "'");
    };

    require(sc, "scenario", "name");
    s.name = *sc.text("name");
    if (s.name.empty() || s.name.find_first_of("/\\ ") != std::string::npos)
        sc.fail("name", "'name' must be non-empty without spaces or path separators");
    require(sc, "scenario", "mode");
    const auto mode = parse_mode(*sc.text("mode"));
    if (!mode)
        sc.fail("mode", "unknown mode '" + *sc.text("mode") + "' (large_a, small_a, fourier_check, seminorm, moments)");
    s.mode = *mode;
    s.wavelet = sc.text("wavelet").value_or("mexican-hat");
    try {
        make_wavelet(s.wavelet);
    } catch (const UsageError& e) {
        sc.fail("wavelet", e.what());
    }
    s.b = sc.number_or("b", 0.0);
    if (!std::isfinite(s.b)) sc.fail("b", "'b' must be finite");

    const bool needs_N = s.mode == Mode::large_a || s.mode == Mode::small_a || s.mode == Mode::moments;
    if (needs_N) require(sc, "scenario", "N");
    const auto N = sc.integer("N");
    s.N = static_cast<int>(N.value_or(4));
    if (s.N < 0 || s.N > kDefaultMaxDerivativeOrder)
        sc.fail("N", "'N' must lie in [0, " + std::to_string(kDefaultMaxDerivativeOrder) + "]");

    if (s.mode == Mode::small_a) {
        s.function = sc.text("function").value_or("gaussian");
        try {
            make_function(s.function);
        } catch (const UsageError& e) {
            sc.fail("function", e.what());
        }
    }
    if (s.mode == Mode::seminorm) {
        require(sc, "scenario", "q");
        s.q = static_cast<int>(*sc.integer("q"));
        s.alpha = static_cast<int>(sc.integer("alpha").value_or(0));
        s.M = sc.number_or("M", 1.0);
        if (s.q < 0) sc.fail("q", "'q' must be non-negative");
        if (s.alpha < 0) sc.fail("alpha", "'alpha' must be non-negative");
        if (!(s.M > 0.0)) sc.fail("M", "'M' must be positive");
    }
    if (s.mode == Mode::fourier_check) {
        s.h = sc.number_or("h", 0.5);
        if (!(s.h > 0.0)) sc.fail("h", "'h' must be positive");
    }
    sc.reject_unknown();

    // [input]
    if (doc.sections.count("input")) {
        s.input = section("input");
        const auto d = make_input(*s.input, source);
        // Truncation rule for power growth, enforced before any work is done.
        const bool uses_moments = s.mode == Mode::large_a || s.mode == Mode::small_a;
        if (uses_moments) {
            if (const auto* p = std::get_if<PowerGrowth>(&d.growth())) {
                const int cap = truncation_limit(p->gamma);
                if (s.N > cap) {
                    std::ostringstream msg;
                    msg << "N=" << s.N << " exceeds the truncation rule N=[[gamma]]-1=" << cap
                        << " for power growth gamma=" << p->gamma
                        << (cap < 0 ? "; no expansion order is valid" : "");
                    sc.fail("N", msg.str());
                }
            }
        }
    } else if (s.mode != Mode::small_a && s.mode != Mode::seminorm) {
        throw UsageError(source + ": missing [input] section");
    }

    // [a_grid]
    if (s.mode != Mode::moments) {
        if (!doc.sections.count("a_grid")) throw UsageError(source + ": missing [a_grid] section");
        Fields g(section("a_grid"), source);
        require(g, "a_grid", "start");
        require(g, "a_grid", "ratio");
        require(g, "a_grid", "count");
        s.a_grid.start = *g.number("start");
        s.a_grid.ratio = *g.number("ratio");
        s.a_grid.count = static_cast<int>(*g.integer("count"));
        if (!(s.a_grid.start > 0.0)) g.fail("start", "'start' must be positive");
        if (!(s.a_grid.ratio > 1.0)) g.fail("ratio", "'ratio' must exceed 1");
        const int min_count = detail::is_order_fit_mode(s.mode) ? 4 : 1;
        if (s.a_grid.count < min_count || s.a_grid.count > 64)
            g.fail("count", "'count' must lie in [" + std::to_string(min_count) + ", 64] for this mode");
        if (detail::is_order_fit_mode(s.mode) && s.a_grid.ratio < 2.0)
            g.fail("ratio", "order fits need a grid ratio of at least 2");
        g.reject_unknown();
    } else if (doc.sections.count("a_grid")) {
        throw UsageError(section_anchor("a_grid") + ": [a_grid] is not used by mode 'moments'");
    }

    // [quadrature]
    {
        Fields q(section("quadrature"), source);
        s.quadrature.abs_tol = q.number_or("abs_tol", s.quadrature.abs_tol);
        s.quadrature.rel_tol = q.number_or("rel_tol", s.quadrature.rel_tol);
        s.quadrature.truncation_T = q.number_or("truncation_T", s.quadrature.truncation_T);
        if (const auto m = q.integer("max_subdivisions")) s.quadrature.max_subdivisions = static_cast<int>(*m);
        try {
            s.quadrature.validate();
        } catch (const ConfigurationError& e) {
            throw UsageError(section_anchor("quadrature") + ": " + e.what());
        }
        q.reject_unknown();
    }

    // [checks]
    {
        Fields c(section("checks"), source);
        s.checks.max_slope = detail::parse_threshold(c, "max_slope");
        s.checks.min_slope = detail::parse_threshold(c, "min_slope");
        s.checks.max_abs_remainder = c.number("max_abs_remainder");
        s.checks.agreement_rel_tol = c.number_or("agreement_rel_tol", s.checks.agreement_rel_tol);
        s.checks.duality_tol = c.number_or("duality_tol", s.checks.duality_tol);
        c.reject_unknown();
    }
    return s;
}

struct RunOutcome {
    int exit_code = 0;
    std::vector<std::string> failures;
    std::vector<std::filesystem::path> files;
};

namespace detail {

struct Runner {
    const Scenario& s;
    std::filesystem::path out_dir;
    std::ostream& log;
    RunOutcome outcome;

    std::filesystem::path file(const std::string& suffix) const { return out_dir / (s.name + "_" + suffix + ".csv"); }

    void emit(const CsvTable& t, const std::string& suffix) {
        const auto path = file(suffix);
        t.write(path);
        outcome.files.push_back(path);
    }

    void fail(const std::string& check, const std::string& detail) { outcome.failures.push_back(check + " | " + detail); }

    std::vector<double> grid() const {
        auto g = geometric_grid(s.a_grid.start, s.a_grid.ratio, s.a_grid.count);
        return g;
    }

    // Writes the fit table and applies slope thresholds; returns the fit when one exists.
    std::optional<OrderFitReport> fit_and_check(const std::vector<double>& as, const std::vector<double>& values,
                                                std::optional<double> max_slope, std::optional<double> min_slope) {
        CsvTable fit({"slope", "intercept", "r_squared"});
        std::optional<OrderFitReport> rep;
        try {
            rep = remainder_order_fit(as, values);
            fit.add_row({rep->slope, rep->intercept, rep->r_squared});
        } catch (const InsufficientDataError& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            fit.add_row({nan, nan, nan});
            if (max_slope || min_slope) fail("order fit", e.what());
            else log << "note: " << e.what() << "\n";
        }
        emit(fit, "fit");
        if (rep) {
            log << "fitted slope " << format_double(rep->slope) << " (r^2 " << format_double(rep->r_squared) << ")\n";
            if (max_slope && !(rep->slope <= *max_slope))
                fail("max_slope", "slope " + format_double(rep->slope) + " > " + format_double(*max_slope));
            if (min_slope && !(rep->slope >= *min_slope))
                fail("min_slope", "slope " + format_double(rep->slope) + " < " + format_double(*min_slope));
        }
        return rep;
    }

    std::optional<double> resolve(const Threshold& t, std::optional<double> fallback) const {
        if (t.disabled) return std::nullopt;
        if (t.value) return t.value;
        return fallback;
    }

    void check_remainders(const std::vector<double>& remainders) {
        if (!s.checks.max_abs_remainder) return;
        for (std::size_t i = 0; i < remainders.size(); ++i)
            if (!(std::abs(remainders[i]) <= *s.checks.max_abs_remainder))
                fail("max_abs_remainder", "a=" + format_double(grid()[i]) + " remainder " + format_double(remainders[i]));
    }

    void large_a() {
        const auto f = make_input(*s.input, s.source);
        const auto w = make_wavelet(s.wavelet);
        const auto moments = moment_sequence(f, s.N, s.quadrature);
        const auto as = grid();
        CsvTable terms({"a", "alpha", "term", "partial_sum"});
        CsvTable rems({"a", "N", "reference", "partial_sum", "remainder"});
        std::vector<double> remainders;
        for (double a : as) {
            auto e = expansion_large_a(moments, w, a, s.b, s.N);
            e.set_reference(cwt_direct(f, w, a, s.b, s.quadrature).value);
            for (int k = 0; k <= s.N; ++k) terms.add_row({a, static_cast<long long>(k), e.terms[k], e.partial_sums[k]});
            rems.add_row({a, static_cast<long long>(s.N), *e.reference, e.partial_sums[s.N], e.remainders[s.N]});
            remainders.push_back(e.remainders[s.N]);
        }
        emit(terms, "terms");
        emit(rems, "remainders");
        check_remainders(remainders);
        fit_and_check(as, remainders, resolve(s.checks.max_slope, -(s.N + 0.5) + 0.3), resolve(s.checks.min_slope, std::nullopt));
    }

    void small_a() {
        const auto f = make_function(s.function);
        const DistributionInput psi =
            s.input ? make_input(*s.input, s.source) : DistributionInput(mexican_hat_density());
        // A few extra moments locate the next non-vanishing term beyond N.
        const auto moments = moment_sequence(psi, s.N + 8, s.quadrature);
        const auto as = grid();
        CsvTable terms({"a", "alpha", "term", "partial_sum"});
        CsvTable rems({"a", "N", "reference", "partial_sum", "remainder"});
        std::vector<double> remainders;
        for (double a : as) {
            auto e = expansion_small_a(moments, f, a, s.b, s.N);
            e.set_reference(small_a_reference(psi, f, a, s.b, s.quadrature));
            for (int k = 0; k <= s.N; ++k) terms.add_row({a, static_cast<long long>(k), e.terms[k], e.partial_sums[k]});
            rems.add_row({a, static_cast<long long>(s.N), *e.reference, e.partial_sums[s.N], e.remainders[s.N]});
            remainders.push_back(e.remainders[s.N]);
        }
        emit(terms, "terms");
        emit(rems, "remainders");
        check_remainders(remainders);

        std::optional<double> expected;
        double scale = 0.0;
        for (const auto& [k, v] : moments.values) scale = std::max(scale, std::abs(v));
        for (int k = s.N + 1; k <= moments.contiguous_order(); ++k)
            if (std::abs(moments.at(k)) > 1e-10 * std::max(scale, 1.0)) {
                expected = k + 0.5;
                break;
            }
        if (expected) log << "next surviving term: a^" << format_double(*expected) << "\n";
        fit_and_check(as, remainders, resolve(s.checks.max_slope, std::nullopt),
                      resolve(s.checks.min_slope, expected ? std::optional<double>(*expected - 0.3) : std::nullopt));

        if (psi.name() == "mexican-hat" && psi.kind() == DistributionInput::Kind::density) {
            CsvTable cmp({"alpha", "gamma_coefficient", "oracle_moment", "mismatch"});
            std::string flagged;
            for (const auto& row : compare_small_a_coefficients(moments, s.N)) {
                cmp.add_row({static_cast<long long>(row.order), row.gamma_coefficient, row.oracle_moment,
                             static_cast<long long>(row.mismatch)});
                if (row.mismatch) flagged += (flagged.empty() ? "" : ", ") + std::to_string(row.order);
            }
            emit(cmp, "gamma_coeffs");
            if (!flagged.empty())
                log << "Gamma-coefficient series differs from the computed moments at orders " << flagged
                    << " (reported, not a failure)\n";
        }
    }

    void fourier_check() {
        const auto f = make_input(*s.input, s.source);
        const auto w = make_wavelet(s.wavelet);
        const FourierPairing pairing(w, s.quadrature);
        log << "Fourier convention: " << kFourierConvention << "\n";
        log << "calibrated Parseval constant: " << format_double(pairing.constant()) << "\n";
        CsvTable table({"a", "b", "direct", "fourier", "abs_diff"});
        for (double a : grid()) {
            const double direct = cwt_direct(f, w, a, s.b, s.quadrature).value;
            const double fourier = pairing.transform(f, a, s.b).value;
            const double diff = std::abs(direct - fourier);
            table.add_row({a, s.b, direct, fourier, diff});
            if (!(diff <= s.checks.agreement_rel_tol * (1.0 + std::abs(direct))))
                fail("agreement", "a=" + format_double(a) + " |direct - fourier| = " + format_double(diff));
        }
        emit(table, "fourier");

        CsvTable duality({"alpha", "lhs_re", "lhs_im", "pinned_re", "pinned_im", "quoted_re", "quoted_im"});
        for (int k = 0; k <= s.N; ++k) {
            const auto c = fourier_moment_check(f, k, s.h, s.quadrature);
            duality.add_row({static_cast<long long>(k), c.lhs.real(), c.lhs.imag(), c.rhs_pinned.real(),
                             c.rhs_pinned.imag(), c.rhs.real(), c.rhs.imag()});
            const double gap = std::abs(c.lhs - c.rhs_pinned);
            if (!(gap <= s.checks.duality_tol * std::max(1.0, std::abs(c.moment))))
                fail("duality", "alpha=" + std::to_string(k) + " |D^alpha F(0) - (-i)^alpha mu| = " + format_double(gap));
        }
        emit(duality, "duality");
    }

    void seminorm() {
        const auto w = make_wavelet(s.wavelet);
        const auto as = grid();
        CsvTable table({"a", "sup"});
        std::vector<double> sups;
        for (double a : as) {
            sups.push_back(seminorm_value(w, s.q, s.b, s.M, s.alpha, a));
            table.add_row({a, sups.back()});
        }
        emit(table, "seminorm");
        fit_and_check(as, sups, resolve(s.checks.max_slope, -s.q + 0.3), resolve(s.checks.min_slope, std::nullopt));
    }

    void moments() {
        const auto f = make_input(*s.input, s.source);
        const auto seq = moment_sequence(f, s.N, s.quadrature);
        CsvTable table({"alpha", "value", "provenance"});
        for (const auto& [k, v] : seq.values)
            table.add_row({static_cast<long long>(k), v, std::string(to_string(seq.provenance.at(k)))});
        emit(table, "moments");
        if (!seq.absent_reason.empty()) log << "note: " << seq.absent_reason << "\n";
    }
};

}  // namespace detail

/// Runs a validated scenario, writing CSV artifacts into out_dir. Exit code 0 when
/// every check passes, 1 otherwise (with a failure table on `log`).
inline RunOutcome run_scenario(const Scenario& s, const std::filesystem::path& out_dir, std::ostream& log) {
    std::filesystem::create_directories(out_dir);
    detail::Runner r{s, out_dir, log, {}};
    log << "scenario " << s.name << "\n";
    try {
        switch (s.mode) {
            case Mode::large_a: r.large_a(); break;
            case Mode::small_a: r.small_a(); break;
            case Mode::fourier_check: r.fourier_check(); break;
            case Mode::seminorm: r.seminorm(); break;
            case Mode::moments: r.moments(); break;
        }
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        r.fail("runtime", e.what());
    }
    if (r.outcome.failures.empty()) {
        log << "PASS " << s.name << "\n";
        r.outcome.exit_code = 0;
    } else {
        log << "FAIL " << s.name << "\n";
        log << "check | detail\n";
        for (const auto& f : r.outcome.failures) log << f << "\n";
        r.outcome.exit_code = 1;
    }
    return r.outcome;
}

}  // namespace mwt::cli

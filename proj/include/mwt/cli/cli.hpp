#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwt/cli/builtin_scenarios.hpp"
#include "mwt/cli/csv.hpp"
#include "mwt/cli/inputs.hpp"
#include "mwt/cli/scenario.hpp"

namespace mwt::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline std::string list_builtins() {
    std::ostringstream os;
    os << "wavelets:\n"
       << "  mexican-hat        (1 - x^2) exp(-x^2/2), zero mean\n"
       << "smooth functions (small_a 'function'):\n"
       << "  gaussian, mexican-hat, monomial-<k>\n"
       << "input kinds:\n"
       << "  delta              location=0 weight=1\n"
       << "  delta-derivative   location=0 order=1 weight=1\n"
       << "  point-masses       masses=location:order:weight;...\n"
       << "  gaussian           density exp(-x^2/2) on the real line\n"
       << "  bump               center=0.5 width=1, smooth with compact support\n"
       << "  mexican-hat        density (1 - x^2) exp(-x^2/2) on the real line\n"
       << "  file               path=<two-column table>, piecewise cubic interpolation\n"
       << "  (every kind accepts growth=compact|sub_exponential|power|all_power|tempered_fourier,\n"
       << "   gamma=<real> with growth=power, and shift=<real>)\n"
       << "scenarios:\n";
    for (const auto& s : kBuiltinScenarios) os << "  " << s.name << "  " << s.summary << "\n";
    return os.str();
}

inline std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read scenario file '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads a scenario from a path, or from the built-in table when no such file exists.
inline Scenario load_scenario(const std::string& ref) {
    if (std::filesystem::exists(ref)) return parse_scenario(read_text_file(ref), ref);
    std::string name = ref;
    if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
    if (const auto b = find_builtin_scenario(name)) return parse_scenario(b->text, "builtin:" + std::string(b->name));
    throw UsageError("no scenario file or built-in scenario named '" + ref + "'");
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moment asymptotic expansions of continuous wavelet transforms"};
    app.require_subcommand(1);
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "run a scenario file or built-in scenario");
    std::string scenario_ref;
    run->add_option("scenario", scenario_ref, "scenario file or built-in name")->required();
    run->add_option("--out-dir", out_dir, "directory for CSV artifacts");

    auto* list = app.add_subcommand("list", "list built-in wavelets, input kinds and scenarios");

    auto* moments = app.add_subcommand("moments", "print the moment sequence of an input");
    std::string moments_input;
    int up_to = 4;
    std::string moments_dir;
    moments->add_option("input", moments_input, "input spec, e.g. bump:center=0.5,width=1")->required();
    moments->add_option("--up-to", up_to, "highest moment order")->check(CLI::NonNegativeNumber);
    moments->add_option("--out-dir", moments_dir, "also write moments.csv here");

    auto* cwt = app.add_subcommand("cwt", "evaluate the wavelet transform at one (a, b)");
    std::string cwt_input, wavelet = "mexican-hat", method = "direct", cwt_dir;
    double a = 1.0, b = 0.0;
    cwt->add_option("input", cwt_input, "input spec, e.g. delta:location=0")->required();
    cwt->add_option("--a", a, "dilation a > 0")->required();
    cwt->add_option("--b", b, "translation b")->required();
    cwt->add_option("--wavelet", wavelet, "wavelet name");
    cwt->add_option("--method", method, "direct | fourier | both")->check(CLI::IsMember({"direct", "fourier", "both"}));
    cwt->add_option("--out-dir", cwt_dir, "also write cwt.csv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*list) {
            out << list_builtins();
            return kExitPass;
        }
        if (*run) {
            const Scenario s = load_scenario(scenario_ref);
            return run_scenario(s, out_dir, out).exit_code;
        }
        if (*moments) {
            const auto d = make_input(parse_input_spec(moments_input), "input");
            const auto seq = moment_sequence(d, up_to);
            CsvTable table({"alpha", "value", "provenance"});
            for (const auto& [k, v] : seq.values)
                table.add_row({static_cast<long long>(k), v, std::string(to_string(seq.provenance.at(k)))});
            out << table.str();
            if (!seq.absent_reason.empty()) err << "note: " << seq.absent_reason << "\n";
            if (!moments_dir.empty()) {
                std::filesystem::create_directories(moments_dir);
                table.write(std::filesystem::path(moments_dir) / "moments.csv");
            }
            return kExitPass;
        }
        if (*cwt) {
            if (!(a > 0.0)) throw UsageError("--a must be positive");
            const auto d = make_input(parse_input_spec(cwt_input), "input");
            const auto w = make_wavelet(wavelet);
            CsvTable table({"a", "b", "value", "method"});
            if (method == "direct" || method == "both") {
                const auto p = cwt_direct(d, w, a, b);
                table.add_row({p.a, p.b, p.value, std::string(to_string(p.method))});
            }
            if (method == "fourier" || method == "both") {
                const auto p = cwt_fourier(d, w, a, b);
                table.add_row({p.a, p.b, p.value, std::string(to_string(p.method))});
            }
            out << table.str();
            if (!cwt_dir.empty()) {
                std::filesystem::create_directories(cwt_dir);
                table.write(std::filesystem::path(cwt_dir) / "cwt.csv");
            }
            return kExitPass;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TruncationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace mwt::cli

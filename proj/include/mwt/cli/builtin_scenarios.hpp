#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mwt::cli {

struct BuiltinScenario {
    std::string_view name;
    std::string_view summary;
    std::string_view text;
};

// Kept byte-identical to the files under scenarios/ (checked by the test suite).
inline constexpr std::array<BuiltinScenario, 7> kBuiltinScenarios{{
    {"mexican-hat-compact-large-a",
     "Mexican-Hat against a compact smooth bump, quadratic large-a expansion",
     R"(# Mexican-Hat wavelet, compactly supported smooth bump, N = 2 large-a series.
[scenario]
name = mexican-hat-compact-large-a
mode = large_a
wavelet = mexican-hat
b = 1
N = 2

[input]
kind = bump
center = 0.5
width = 1
growth = compact

[a_grid]
start = 16
ratio = 2
count = 7

[quadrature]
abs_tol = 1e-15
rel_tol = 1e-14
)"},
    {"mexican-hat-gaussian-large-a",
     "Mexican-Hat against a Gaussian (sub-exponential class), cubic large-a expansion",
     R"(# Mexican-Hat wavelet, Gaussian input of sub-exponential growth, N = 3 large-a series.
[scenario]
name = mexican-hat-gaussian-large-a
mode = large_a
wavelet = mexican-hat
b = 1
N = 3

[input]
kind = gaussian
growth = sub_exponential

[a_grid]
start = 16
ratio = 2
count = 7

[quadrature]
abs_tol = 1e-15
rel_tol = 1e-14
)"},
    {"mexican-hat-gaussian-small-a",
     "Mexican-Hat as the distribution, Gaussian test function, small-a expansion",
     R"(# Small-a series: the Mexican-Hat supplies the moments, a Gaussian is the test function.
[scenario]
name = mexican-hat-gaussian-small-a
mode = small_a
wavelet = mexican-hat
function = gaussian
b = 0.5
N = 4

[input]
kind = mexican-hat

[a_grid]
start = 0.025
ratio = 2
count = 5

[quadrature]
abs_tol = 1e-15
rel_tol = 1e-14
)"},
    {"delta-exactness",
     "Point mass at the origin: the large-a series is exact",
     R"(# A single point mass has moments {1, 0, 0, ...}; the series equals the transform.
[scenario]
name = delta-exactness
mode = large_a
wavelet = mexican-hat
b = 1
N = 3

[input]
kind = delta
location = 0

[a_grid]
start = 1
ratio = 10
count = 4

[checks]
max_slope = none
max_abs_remainder = 1e-12
)"},
    {"fourier-crosscheck",
     "Direct versus frequency-side transform of a Gaussian, plus the moment duality",
     R"(# Direct and Fourier-side transforms must agree; D^k F(0) = (-i)^k mu_k for k <= N.
[scenario]
name = fourier-crosscheck
mode = fourier_check
wavelet = mexican-hat
b = 1
N = 4
h = 0.5

[input]
kind = gaussian

[a_grid]
start = 0.5
ratio = 2
count = 4

[quadrature]
abs_tol = 1e-14
rel_tol = 1e-13
)"},
    {"seminorm-decay",
     "Decay of the windowed seminorm of psi minus its quadratic Taylor part",
     R"(# sup over (b/a - M, b + M) of |d/dx psi_3((x - b)/a)| should fall like a^-3 or faster.
[scenario]
name = seminorm-decay
mode = seminorm
wavelet = mexican-hat
q = 3
alpha = 1
b = 2
M = 1

[a_grid]
start = 16
ratio = 2
count = 7
)"},
    {"power-growth-rejected",
     "Power growth gamma = 0.5 admits no expansion order; the run is rejected",
     R"(# gamma = 0.5 gives floor(gamma) - 1 = -1, so asking for N = 2 is a usage error.
[scenario]
name = power-growth-rejected
mode = large_a
wavelet = mexican-hat
b = 0
N = 2

[input]
kind = gaussian
growth = power
gamma = 0.5

[a_grid]
start = 16
ratio = 2
count = 4
)"},
}};

inline std::optional<BuiltinScenario> find_builtin_scenario(std::string_view name) {
    for (const auto& s : kBuiltinScenarios)
        if (s.name == name) return s;
    return std::nullopt;
}

}  // namespace mwt::cli

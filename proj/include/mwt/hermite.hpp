#pragma once

#include <vector>

namespace mwt {

/// Probabilists' Hermite polynomial He_n(x) by He_{n+1} = x He_n - n He_{n-1}.
template <class Real>
Real hermite_he(int n, Real x) {
    if (n <= 0) return Real(1);
    Real prev = 1;
    Real cur = x;
    for (int k = 1; k < n; ++k) {
        const Real next = x * cur - static_cast<Real>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// He_0(x) .. He_n(x).
template <class Real>
std::vector<Real> hermite_he_all(int n, Real x) {
    std::vector<Real> out(n + 1);
    out[0] = 1;
    if (n >= 1) out[1] = x;
    for (int k = 1; k < n; ++k) out[k + 1] = x * out[k] - static_cast<Real>(k) * out[k - 1];
    return out;
}

}  // namespace mwt

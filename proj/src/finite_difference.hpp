#pragma once

#include <array>
#include <cstddef>
#include <functional>

#include "cartan/jet.hpp"

// Central finite differences in long double: an oracle for jet derivatives
// that shares no code with the jet arithmetic.

namespace cartan::detail {

template <std::size_t N>
using FdFunction = std::function<long double(const std::array<long double, N>&)>;

// Weights of the second-order central stencil for a k-th derivative,
// nodes at offsets -2..2 (times h).
inline const std::array<long double, 5>& central_stencil(int k) {
    static const std::array<std::array<long double, 5>, 5> table{{
        {0.0L, 0.0L, 1.0L, 0.0L, 0.0L},
        {0.0L, -0.5L, 0.0L, 0.5L, 0.0L},
        {0.0L, 1.0L, -2.0L, 1.0L, 0.0L},
        {-0.5L, 1.0L, 0.0L, -1.0L, 0.5L},
        {1.0L, -4.0L, 6.0L, -4.0L, 1.0L},
    }};
    return table[k];
}

template <std::size_t N>
long double tensor_difference(const FdFunction<N>& f, const std::array<long double, N>& at,
                              const MultiIndex& mu, long double h) {
    // Sum over the tensor-product stencil; skip zero weights.
    long double total = 0.0L;
    std::array<int, N> offset{};
    auto rec = [&](auto&& self, std::size_t var, long double weight) -> void {
        if (var == N) {
            std::array<long double, N> p = at;
            for (std::size_t v = 0; v < N; ++v) p[v] += offset[v] * h;
            total += weight * f(p);
            return;
        }
        const auto& w = central_stencil(mu[var]);
        for (int k = -2; k <= 2; ++k) {
            if (w[k + 2] == 0.0L) continue;
            offset[var] = k;
            self(self, var + 1, weight * w[k + 2]);
        }
        offset[var] = 0;
    };
    rec(rec, 0, 1.0L);
    int order = 0;
    for (std::size_t v = 0; v < N; ++v) order += mu[v];
    long double scale = 1.0L;
    for (int k = 0; k < order; ++k) scale *= h;
    return total / scale;
}

/// d^mu f at `at`, Richardson-extrapolated from steps h and h/2.
template <std::size_t N>
long double finite_difference(const FdFunction<N>& f, const std::array<long double, N>& at,
                              const MultiIndex& mu, long double h) {
    const long double coarse = tensor_difference<N>(f, at, mu, h);
    const long double fine = tensor_difference<N>(f, at, mu, h / 2);
    return (4.0L * fine - coarse) / 3.0L;
}

/// Step used per derivative order.
inline long double fd_step(int order) {
    switch (order) {
        case 0:
        case 1:
        case 2: return 2e-3L;
        default: return 1e-2L;
    }
}

}  // namespace cartan::detail

#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "cartan/errors.hpp"
#include "cartan/jet.hpp"
#include "cartan/metric.hpp"

// One transcription of the polar fundamental function, shared by the scalar
// (double / long double) and jet evaluation paths.

namespace cartan::detail {

template <class T>
T checked_root(const T& v, const char* what) {
    if constexpr (std::is_floating_point_v<T>) {
        if (v < 0) {
            if (v >= -static_cast<T>(kRadicandClamp)) return T(0);
            throw DomainError(std::string("negative ") + what, static_cast<double>(v));
        }
        return std::sqrt(v);
    } else {
        if (!(v.value() > 0.0))
            throw DomainError(std::string("non-positive ") + what + " (jet evaluation needs an interior point)",
                              v.value());
        return sqrt(v);
    }
}

template <class T>
T fstar_polar_expr(double a, double c, const T& x, const T& r, const T& t) {
    const T x2 = x * x;
    const T q_norm = checked_root(T(r * r + t * t / x2), "fiber norm radicand");
    const T base = x2 + 2.0 * c;
    const T radicand = 1.0 - 16.0 * a * t / (q_norm * base * base);
    return 0.25 * base * q_norm * (1.0 + checked_root(radicand, "F* radicand"));
}

}  // namespace cartan::detail

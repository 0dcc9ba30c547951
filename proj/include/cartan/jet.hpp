#pragma once

#include <array>
#include <span>

namespace cartan {

/// Exponents of a monomial in up to four variables. Entries past the jet's
/// variable count must be zero.
using MultiIndex = std::array<int, 4>;

namespace detail {
struct JetLayout;
}

/**
 * Truncated multivariate Taylor expansion of a scalar function at a point.
 *
 * Coefficients are stored in Taylor convention (the coefficient of the
 * monomial h^mu is d^mu f / mu!) in a dense, degree-graded layout of at most
 * C(4+4, 4) = 70 entries. Every jet carries its variable count and
 * truncation order; arithmetic between jets of different shape throws
 * ArgumentError instead of promoting.
 *
 * The graded layout is prefix-stable: the first size(k) coefficients of an
 * order-n jet are exactly the order-k truncation.
 */
class Jet {
public:
    static constexpr int kMaxVars = 4;
    static constexpr int kMaxOrder = 4;
    static constexpr int kMaxCoeffs = 70;

    /// Zero jet.
    Jet(int num_vars, int max_order);

    static Jet constant(double value, int num_vars, int max_order);

    int num_vars() const noexcept;
    int max_order() const noexcept;
    int size() const noexcept;

    /// Constant term (the function value at the expansion point).
    double value() const noexcept { return coeffs_[0]; }

    /// Raw Taylor coefficient of h^mu; zero for indices above max_order.
    double coeff(const MultiIndex& mu) const;
    void set_coeff(const MultiIndex& mu, double value);

    std::span<const double> coeffs() const noexcept;

    bool same_shape(const Jet& other) const noexcept { return layout_ == other.layout_; }

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Jet& other);
    Jet& operator+=(double s) noexcept;
    Jet& operator-=(double s) noexcept;
    Jet& operator*=(double s) noexcept;

    Jet operator-() const;

private:
    friend Jet multiply(const Jet& a, const Jet& b);
    friend Jet differentiate(const Jet& a, int index);
    friend Jet truncate(const Jet& a, int order);

    void require_same_shape(const Jet& other) const;

    const detail::JetLayout* layout_;
    std::array<double, kMaxCoeffs> coeffs_{};
};

/// Jet of the coordinate function x_index at a point where x_index = value.
Jet seed_variable(int index, double value, int num_vars, int max_order);

/// Truncated Cauchy product.
Jet multiply(const Jet& a, const Jet& b);

/// f(a) for an analytic f, given the Taylor coefficients f^(k)(a0)/k! of f
/// at a0 = a.value() for k = 0..max_order. Missing trailing coefficients
/// are treated as zero.
Jet compose(const Jet& a, std::span<const double> taylor);

Jet reciprocal(const Jet& a);
Jet sqrt(const Jet& a);
/// a^p. Integer p admits any nonzero constant term (any constant term for
/// p >= 0); non-integer p requires a positive one.
Jet pow(const Jet& a, double p);

/// Partial derivative d^mu f at the expansion point (factorials applied).
double extract(const Jet& a, const MultiIndex& mu);

/// Jet of d f / d x_index, one order lower.
Jet differentiate(const Jet& a, int index);

/// Drop every coefficient above `order`.
Jet truncate(const Jet& a, int order);

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
inline Jet operator/(const Jet& a, const Jet& b) { return multiply(a, reciprocal(b)); }

inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return -a + s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
inline Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

}  // namespace cartan

#pragma once

#include <array>
#include <string>
#include <utility>

#include "cartan/jet.hpp"

namespace cartan {

/// Rotation rate `a` of the frame and energy parameter `c` of the level
/// set {H = -c}.
struct MetricParams {
    double a = 1.0;
    double c = 2.0;
};

/// Polar chart on the cotangent bundle: momentum radius x = |p|, momentum
/// angle y, and dual fiber coordinates (r, t) with
///   |q|^2 = r^2 + t^2 / x^2,   <p_perp, q> = -t.
struct PhasePoint {
    double x = 1.0;
    double y = 0.0;
    double r = 0.0;
    double t = 1.0;
};

using Vec2 = std::array<double, 2>;

/// Cartesian fiber data of the Minkowski family: base point p, fiber
/// covector q, and half-offset C (2C = |p|^2/2 + c in the Kepler setting).
struct CartesianFiberPoint {
    Vec2 p{};
    Vec2 q{};
    double C = 1.0;
};

inline double dot(const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; }
inline Vec2 perp(const Vec2& p) { return {p[1], -p[0]}; }
double norm(const Vec2& v);

/// Radicands in [-kRadicandClamp, 0) are treated as 0 (boundary of Sigma);
/// anything lower is a domain error.
inline constexpr double kRadicandClamp = 1e-12;

/// F*_p(q) = C|q| (1 + sqrt(1 + a<p_perp, q>/(|q| C^2))), i.e. the Minkowski
/// fundamental function with p replaced by a*p.
double fstar_cartesian(const CartesianFiberPoint& pt, double a);

/// F*_{c,a}(x, y, r, t). Never reads y.
double fstar_polar(const MetricParams& params, const PhasePoint& pt);

/// Jet of F*_{c,a} in the three variables (x, r, t), in that order, at `pt`.
Jet fstar_polar_jet(const MetricParams& params, const PhasePoint& pt, int max_order);

/// Same formula applied to caller-seeded jets (any variable layout).
Jet fstar_polar_jet(const MetricParams& params, const Jet& x, const Jet& r, const Jet& t);

/// L* = (F*)^2 / 2.
double lstar(const MetricParams& params, const PhasePoint& pt);
Jet lstar_jet(const MetricParams& params, const PhasePoint& pt, int max_order);

enum class DomainReason {
    ok,
    invalid_params,      // a < 0 or c <= 0
    subcritical_energy,  // a > 0 and c <= (3/2) a^(2/3): no bounded component
    chart_singularity,   // x == 0
    zero_fiber,          // (r, t) == (0, 0)
    negative_radicand,   // inner radicand of F* below -kRadicandClamp
};

struct DomainStatus {
    DomainReason reason = DomainReason::ok;
    std::string message;
    double value = 0.0;  // offending quantity, when there is one

    bool ok() const noexcept { return reason == DomainReason::ok; }
    explicit operator bool() const noexcept { return ok(); }
};

const char* to_string(DomainReason reason);

/// Critical energy (3/2) a^(2/3): the bounded component exists for c above it.
double critical_energy(double a);

DomainStatus validate_params(const MetricParams& params);
DomainStatus validate_domain(const MetricParams& params, const PhasePoint& pt);

/// Inner radicand 1 - 16 a t / (|q| (x^2 + 2c)^2) of the polar form.
double fstar_radicand(const MetricParams& params, const PhasePoint& pt);

/// Convexity certificate a|p| < (|p|^2/4 + c/2)^2 at momentum radius |p| = x.
bool convexity_certificate(const MetricParams& params, double x);

/// g(x) = x^4 + 6x^2 - 16x + 9; nonnegative with its minimum 0 at x = 1,
/// which is what makes the certificate hold for every |p| when c > critical.
double certificate_polynomial(double x);

/// Map (a, c, pt) to the a = 1 member: ((1, c a^(-2/3)), (x a^(-1/3), y,
/// r a^(1/3), t)), so that F*_{c,a}(pt) = a^(1/3) F*_{c',1}(pt').
std::pair<MetricParams, PhasePoint> scaling_reduce(const MetricParams& params, const PhasePoint& pt);

}  // namespace cartan

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cartan/jet.hpp"
#include "cartan/metric.hpp"

namespace cartan {

// Symbols (cotangent side, L* = F*^2 / 2):
//   g^{11} = L*_rr, g^{12} = L*_rt, g^{22} = L*_tt      cometric
//   g      = g^{11} g^{22} - (g^{12})^2                  its determinant
//   g_{ij}                                               inverse (metric)
//   (u, v) = (L*_r, L*_t)                                tangent fiber coords
//   G, H_spray                                           spray coefficients
// H_spray is the second spray coefficient, unrelated to the Hamiltonian.

/// User-supplied Cartan fundamental function F*(x, y, r, t), evaluated on
/// jets seeded in the four variables (x, y, r, t).
using FundamentalFunction =
    std::function<Jet(const Jet& x, const Jet& y, const Jet& r, const Jet& t)>;

struct CometricBlock {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;
    double det = 0.0;
    double inv11 = 0.0, inv12 = 0.0, inv22 = 0.0;
};

struct SprayPair {
    double G = 0.0;
    double H_spray = 0.0;
};

enum class SampleStatus { ok, domain_error, singular_v };

const char* to_string(SampleStatus status);

struct CurvatureSample {
    PhasePoint point;
    std::optional<double> K;  // engaged iff status == ok
    SampleStatus status = SampleStatus::ok;
    std::string reason;       // short machine-readable code when status != ok
    std::string message;

    bool ok() const noexcept { return status == SampleStatus::ok; }
};

/// |v t| below this is reported as singular_v.
inline constexpr double kSingularDenominator = 1e-12;

// Rotating Kepler family. Points outside validate_domain throw DomainError
// (flag_curvature reports them through the sample status instead).

CometricBlock cometric_at(const MetricParams& params, const PhasePoint& pt);
std::pair<double, double> legendre_fiber(const MetricParams& params, const PhasePoint& pt);
SprayPair spray_coeffs(const MetricParams& params, const PhasePoint& pt);
CurvatureSample flag_curvature(const MetricParams& params, const PhasePoint& pt);

// Generic metric through the callback; the y-derivative terms are live.

CometricBlock cometric_at(const FundamentalFunction& fstar, const PhasePoint& pt);
std::pair<double, double> legendre_fiber(const FundamentalFunction& fstar, const PhasePoint& pt);
SprayPair spray_coeffs(const FundamentalFunction& fstar, const PhasePoint& pt);
CurvatureSample flag_curvature(const FundamentalFunction& fstar, const PhasePoint& pt);

/// Closed-form flag curvature of F*_{c,1} at (x, 0, 0, x), evaluated in
/// extended precision. Throws DomainError when
/// x^4 + 4x^2 c + 4c^2 - 16x < 0 or a denominator factor vanishes.
double flag_curvature_closed_form(double c, double x);

/// alpha^2 = x^4 + 4x^2 c + 4c^2 - 16x.
double closed_form_radicand(double c, double x);

}  // namespace cartan

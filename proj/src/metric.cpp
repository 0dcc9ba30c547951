#include "cartan/metric.hpp"

#include <cmath>
#include <sstream>

#include "cartan/errors.hpp"
#include "fstar_expr.hpp"

namespace cartan {

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

double fstar_cartesian(const CartesianFiberPoint& pt, double a) {
    const double qn = norm(pt.q);
    if (qn == 0.0) throw DomainError("F* is undefined at q = 0", 0.0);
    const double C = pt.C;
    const double radicand = 1.0 + a * dot(perp(pt.p), pt.q) / (qn * C * C);
    return C * qn * (1.0 + detail::checked_root(radicand, "F* radicand"));
}

namespace {

void require_pointwise_domain(const PhasePoint& pt) {
    if (pt.x == 0.0) throw DomainError("polar chart is singular at x = 0", pt.x);
    if (pt.r == 0.0 && pt.t == 0.0) throw DomainError("F* is undefined at (r, t) = (0, 0)", 0.0);
}

}  // namespace

double fstar_polar(const MetricParams& params, const PhasePoint& pt) {
    require_pointwise_domain(pt);
    return detail::fstar_polar_expr(params.a, params.c, pt.x, pt.r, pt.t);
}

Jet fstar_polar_jet(const MetricParams& params, const Jet& x, const Jet& r, const Jet& t) {
    if (x.value() == 0.0) throw DomainError("polar chart is singular at x = 0", 0.0);
    return detail::fstar_polar_expr(params.a, params.c, x, r, t);
}

Jet fstar_polar_jet(const MetricParams& params, const PhasePoint& pt, int max_order) {
    require_pointwise_domain(pt);
    return fstar_polar_jet(params, seed_variable(0, pt.x, 3, max_order),
                           seed_variable(1, pt.r, 3, max_order), seed_variable(2, pt.t, 3, max_order));
}

double lstar(const MetricParams& params, const PhasePoint& pt) {
    const double f = fstar_polar(params, pt);
    return 0.5 * f * f;
}

Jet lstar_jet(const MetricParams& params, const PhasePoint& pt, int max_order) {
    const Jet f = fstar_polar_jet(params, pt, max_order);
    return 0.5 * (f * f);
}

const char* to_string(DomainReason reason) {
    switch (reason) {
        case DomainReason::ok: return "ok";
        case DomainReason::invalid_params: return "invalid_params";
        case DomainReason::subcritical_energy: return "subcritical_energy";
        case DomainReason::chart_singularity: return "chart_singularity";
        case DomainReason::zero_fiber: return "zero_fiber";
        case DomainReason::negative_radicand: return "negative_radicand";
    }
    return "unknown";
}

double critical_energy(double a) { return 1.5 * std::cbrt(a * a); }

DomainStatus validate_params(const MetricParams& params) {
    std::ostringstream msg;
    if (!(params.a >= 0.0) || !(params.c > 0.0)) {
        msg << "parameters need a >= 0 and c > 0 (got a = " << params.a << ", c = " << params.c << ")";
        return {DomainReason::invalid_params, msg.str(), params.a < 0.0 ? params.a : params.c};
    }
    if (params.a > 0.0 && !(params.c > critical_energy(params.a))) {
        msg << "c = " << params.c << " is not above the critical energy 3/2 a^(2/3) = "
            << critical_energy(params.a) << " (c <= 3/2 a^(2/3): no bounded component)";
        return {DomainReason::subcritical_energy, msg.str(), params.c};
    }
    return {};
}

double fstar_radicand(const MetricParams& params, const PhasePoint& pt) {
    const double qn = std::sqrt(pt.r * pt.r + pt.t * pt.t / (pt.x * pt.x));
    const double base = pt.x * pt.x + 2.0 * params.c;
    return 1.0 - 16.0 * params.a * pt.t / (qn * base * base);
}

DomainStatus validate_domain(const MetricParams& params, const PhasePoint& pt) {
    if (auto status = validate_params(params); !status) return status;
    if (pt.x == 0.0) return {DomainReason::chart_singularity, "polar chart is singular at x = 0", pt.x};
    if (pt.r == 0.0 && pt.t == 0.0)
        return {DomainReason::zero_fiber, "fiber direction (r, t) = (0, 0)", 0.0};
    const double radicand = fstar_radicand(params, pt);
    if (radicand < -kRadicandClamp) {
        std::ostringstream msg;
        msg << "F* radicand " << radicand << " is negative";
        return {DomainReason::negative_radicand, msg.str(), radicand};
    }
    return {};
}

bool convexity_certificate(const MetricParams& params, double x) {
    const double rhs = x * x / 4.0 + params.c / 2.0;
    return params.a * std::abs(x) < rhs * rhs;
}

double certificate_polynomial(double x) { return ((x * x + 6.0) * x - 16.0) * x + 9.0; }

std::pair<MetricParams, PhasePoint> scaling_reduce(const MetricParams& params, const PhasePoint& pt) {
    if (!(params.a > 0.0)) throw ArgumentError("scaling reduction needs a > 0");
    const double s = std::cbrt(params.a);  // a^(1/3)
    MetricParams reduced{1.0, params.c / (s * s)};
    PhasePoint mapped{pt.x / s, pt.y, pt.r * s, pt.t};
    return {reduced, mapped};
}

}  // namespace cartan

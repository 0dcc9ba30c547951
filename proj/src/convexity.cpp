#include "cartan/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

double hp_value(const CartesianFiberPoint& pt) {
    const double qn = norm(pt.q);
    if (qn == 0.0) throw DomainError("H_p is undefined at q = 0", 0.0);
    return dot(perp(pt.p), pt.q) - 1.0 / qn + 2.0 * pt.C;
}

LambdaRoots lambda_roots(const CartesianFiberPoint& pt) {
    const double qn = norm(pt.q);
    if (qn == 0.0) throw DomainError("lambda roots are undefined at q = 0", 0.0);
    const double C = pt.C;
    if (!(norm(pt.p) < C * C)) {
        std::ostringstream msg;
        msg << "hypothesis |p| < C^2 violated: |p| = " << norm(pt.p) << ", C^2 = " << C * C;
        throw PreconditionError(msg.str());
    }
    LambdaRoots roots;
    double s = dot(perp(pt.p), pt.q);
    if (s < 0.0) {
        // Reflecting q across the line of p negates <p_perp, q> and keeps |q|.
        s = -s;
        roots.sign_flipped = true;
    }
    const double x = s / (qn * C * C);  // in [0, 1) under the hypothesis
    const double scale = C * qn;
    roots.lambda0 = scale * (1.0 + std::sqrt(1.0 + x));
    roots.lambda_plus = -scale * (1.0 + std::sqrt(1.0 - x));
    roots.lambda_minus = -scale * (1.0 - std::sqrt(1.0 - x));
    roots.minus_degenerate = (s == 0.0);
    if (roots.minus_degenerate) roots.lambda_minus = 0.0;
    return roots;
}

double f_of_t(double a_lem, double t) {
    const double s = std::sin(t);
    return a_lem * a_lem + 2.0 * a_lem * std::cos(t) + 1.0 - 3.0 * a_lem * a_lem * s * s;
}

double hessian_form_matrix(const CartesianFiberPoint& pt) {
    const auto& [p1, p2] = pt.p;
    const auto& [q1, q2] = pt.q;
    const double qn = norm(pt.q);
    if (qn == 0.0) throw DomainError("Hessian form is undefined at q = 0", 0.0);
    const double q2n = qn * qn;
    const double q3 = q2n * qn;
    const double q5 = q3 * q2n;

    const double v1 = p1 - q2 / q3;
    const double v2 = p2 + q1 / q3;
    const double h11 = (q2n - 3.0 * q1 * q1) / q5;
    const double h12 = -3.0 * q1 * q2 / q5;
    const double h22 = (q2n - 3.0 * q2 * q2) / q5;
    return q5 * (v1 * (h11 * v1 + h12 * v2) + v2 * (h12 * v1 + h22 * v2));
}

double hessian_form_reduced(const CartesianFiberPoint& pt) {
    const double qn = norm(pt.q);
    if (qn == 0.0) throw DomainError("Hessian form is undefined at q = 0", 0.0);
    const double pn2 = dot(pt.p, pt.p);
    const double q2n = qn * qn;
    const double pq = dot(pt.p, pt.q);
    return (pn2 * q2n * q2n + 2.0 * qn * dot(perp(pt.p), pt.q) + 1.0 - 3.0 * q2n * pq * pq) / q2n;
}

double hessian_form(const CartesianFiberPoint& pt) {
    const double matrix = hessian_form_matrix(pt);
    const double reduced = hessian_form_reduced(pt);
    const double scale = std::max(std::abs(matrix), std::abs(reduced));
    if (std::abs(matrix - reduced) > 1e-10 * scale) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Hessian form routes disagree: matrix " << matrix << " vs reduced " << reduced;
        throw ConsistencyError(msg.str());
    }
    return matrix;
}

ConvexityReport verify_convexity(const Vec2& p, double C, double a, int n) {
    if (!(a * norm(p) < C * C)) {
        std::ostringstream msg;
        msg << "convexity hypothesis a|p| < C^2 violated: a|p| = " << a * norm(p) << ", C^2 = " << C * C;
        throw PreconditionError(msg.str());
    }
    ConvexityReport report;
    report.n = std::max(n, 0);
    if (report.n == 0) return report;

    const Vec2 ap{a * p[0], a * p[1]};
    report.min_form = std::numeric_limits<double>::infinity();
    bool all_positive = true;
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const Vec2 dir{std::cos(theta), std::sin(theta)};
        const double lambda = fstar_cartesian({p, dir, C}, a);
        const CartesianFiberPoint on_sigma{ap, {dir[0] / lambda, dir[1] / lambda}, C};
        const double form = hessian_form(on_sigma);
        if (form < report.min_form) {
            report.min_form = form;
            report.argmin_direction = theta;
            report.argmin_point = on_sigma.q;
        }
        if (!(form > 0.0) && all_positive) {
            all_positive = false;
            report.failure_point = on_sigma.q;
        }
    }
    report.verdict = all_positive;
    return report;
}

}  // namespace cartan

#pragma once

#include <optional>

#include "cartan/metric.hpp"

namespace cartan {

/// H_p(q) = <p_perp, q> - 1/|q| + 2C.
double hp_value(const CartesianFiberPoint& pt);

/// The three real solutions of H_p(q / lambda) = 0, computed after
/// normalizing to <p_perp, q> >= 0.
struct LambdaRoots {
    double lambda0 = 0.0;       // > 0; lambda0^-1 q lies on the bounded component
    double lambda_plus = 0.0;   // <= 0, |lambda_plus| > C|q|
    double lambda_minus = 0.0;  // <= 0, |lambda_minus| < C|q|
    bool sign_flipped = false;  // q was reflected across p to make <p_perp, q> >= 0
    bool minus_degenerate = false;  // <p_perp, q> = 0: lambda_minus = 0, branch at infinity
};

/// Requires |p| < C^2 and q != 0; throws PreconditionError / DomainError.
LambdaRoots lambda_roots(const CartesianFiberPoint& pt);

/// f(t) = a^2 + 2a cos t + 1 - 3a^2 sin^2 t, the reduced convexity function
/// with a = |p||q|^2.
double f_of_t(double a_lem, double t);

/// |q|^5 <v, Hess H_p(q) v> for the tangent v = -(grad H_p)_perp, from the
/// explicit gradient and Hessian.
double hessian_form_matrix(const CartesianFiberPoint& pt);

/// Same quantity from the reduced expression
/// |q|^-2 (|p|^2|q|^4 + 2|q|<p_perp, q> + 1 - 3|q|^2 <p, q>^2).
double hessian_form_reduced(const CartesianFiberPoint& pt);

/// Matrix-route value; throws ConsistencyError if the reduced expression
/// disagrees by more than 1e-10 relative.
double hessian_form(const CartesianFiberPoint& pt);

struct ConvexityReport {
    int n = 0;
    double min_form = 0.0;
    double argmin_direction = 0.0;  // angle of q/|q|, radians
    Vec2 argmin_point{};            // the point of Sigma_p attaining min_form
    /// Empty when n == 0; otherwise true iff every sampled form is > 0.
    std::optional<bool> verdict;
    std::optional<Vec2> failure_point;  // first sample with form <= 0
};

/// Sample n equally spaced directions, rescale each onto Sigma_{a p} with the
/// fundamental function, and evaluate the Hessian form there.
ConvexityReport verify_convexity(const Vec2& p, double C, double a, int n);

}  // namespace cartan

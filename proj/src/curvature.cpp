#include "cartan/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

const char* to_string(SampleStatus status) {
    switch (status) {
        case SampleStatus::ok: return "ok";
        case SampleStatus::domain_error: return "domain_error";
        case SampleStatus::singular_v: return "singular_v";
    }
    return "unknown";
}

namespace {

// Jet of L* together with the slot of each coordinate; y is absent (-1) for
// metrics that do not depend on it.
struct LstarJet {
    Jet value;
    int ix = 0;
    int iy = -1;
    int ir = 1;
    int it = 2;
};

// d/d(var) lowering the order by one; a missing variable gives the zero jet.
Jet d(const Jet& j, int var) {
    if (var < 0) return Jet(j.num_vars(), j.max_order() - 1);
    return differentiate(j, var);
}

void require_domain(const MetricParams& params, const PhasePoint& pt) {
    if (auto status = validate_domain(params, pt); !status) throw DomainError(status.message, status.value);
}

LstarJet kepler_lstar(const MetricParams& params, const PhasePoint& pt, int order) {
    require_domain(params, pt);
    return {lstar_jet(params, pt, order), 0, -1, 1, 2};
}

LstarJet callback_lstar(const FundamentalFunction& fstar, const PhasePoint& pt, int order) {
    const Jet f = fstar(seed_variable(0, pt.x, 4, order), seed_variable(1, pt.y, 4, order),
                        seed_variable(2, pt.r, 4, order), seed_variable(3, pt.t, 4, order));
    if (f.num_vars() != 4 || f.max_order() != order)
        throw ArgumentError("fundamental function returned a jet of the wrong shape");
    return {0.5 * (f * f), 0, 1, 2, 3};
}

// Cometric jets g^{ij} and their inverse g_{ij}, all at the order of the
// second fiber derivatives of L*.
struct CometricJets {
    Jet up11, up12, up22;
    Jet det;
    Jet lo11, lo12, lo22;
};

CometricJets cometric_jets(const LstarJet& L) {
    const Jet Lr = d(L.value, L.ir);
    const Jet Lt = d(L.value, L.it);
    Jet up11 = d(Lr, L.ir);
    Jet up12 = d(Lr, L.it);
    Jet up22 = d(Lt, L.it);
    Jet det = up11 * up22 - up12 * up12;
    if (!(det.value() > 0.0)) {
        std::ostringstream msg;
        msg << "cometric is not positive definite (det = " << det.value() << ")";
        throw DomainError(msg.str(), det.value());
    }
    const Jet inv_det = reciprocal(det);
    Jet lo11 = up22 * inv_det;
    Jet lo12 = -(up12 * inv_det);
    Jet lo22 = up11 * inv_det;
    return {std::move(up11), std::move(up12), std::move(up22), std::move(det),
            std::move(lo11), std::move(lo12), std::move(lo22)};
}

CometricBlock block_of(const CometricJets& g) {
    return {g.up11.value(), g.up12.value(), g.up22.value(), g.det.value(),
            g.lo11.value(), g.lo12.value(), g.lo22.value()};
}

std::pair<double, double> legendre_of(const LstarJet& L, const PhasePoint& pt) {
    const CometricBlock g = block_of(cometric_jets(L));
    const double u = d(L.value, L.ir).value();
    const double v = d(L.value, L.it).value();
    const double r_back = g.inv11 * u + g.inv12 * v;
    const double t_back = g.inv12 * u + g.inv22 * v;
    const double scale = std::max({std::abs(pt.r), std::abs(pt.t), 1.0});
    if (std::abs(r_back - pt.r) > 1e-10 * scale || std::abs(t_back - pt.t) > 1e-10 * scale) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Legendre reconstruction failed: (" << r_back << ", " << t_back << ") vs (" << pt.r
            << ", " << pt.t << ")";
        throw ConsistencyError(msg.str());
    }
    return {u, v};
}

// Spray coefficients as jets two orders below L*:
//   2G = (g11 L_x + g12 L_y) - (g11 L_rx + g12 L_ry) r - (g12 L_rx + g22 L_ry) t
//   2H = (g12 L_x + g22 L_y) - (g12 L_tx + g22 L_ty) t - (g11 L_tx + g12 L_ty) r
// with g^{ij} the cometric, and r = L_u, t = L_v on the tangent side.
struct SprayJets {
    Jet G, H;
};

struct BaseDerivatives {
    Jet Lrx, Ltx, Lry, Lty;
};

SprayJets spray_jets(const LstarJet& L, const PhasePoint& pt, const CometricJets& g, BaseDerivatives& base) {
    const int order = L.value.max_order() - 2;
    const Jet Lx = truncate(d(L.value, L.ix), order);
    const Jet Ly = truncate(d(L.value, L.iy), order);
    const Jet Lr = d(L.value, L.ir);
    const Jet Lt = d(L.value, L.it);
    base = {d(Lr, L.ix), d(Lt, L.ix), d(Lr, L.iy), d(Lt, L.iy)};
    const int n = L.value.num_vars();
    const Jet r = seed_variable(L.ir, pt.r, n, order);
    const Jet t = seed_variable(L.it, pt.t, n, order);

    const Jet two_G = (g.up11 * Lx + g.up12 * Ly) - r * (g.up11 * base.Lrx + g.up12 * base.Lry) -
                      t * (g.up12 * base.Lrx + g.up22 * base.Lry);
    const Jet two_H = (g.up12 * Lx + g.up22 * Ly) - t * (g.up12 * base.Ltx + g.up22 * base.Lty) -
                      r * (g.up11 * base.Ltx + g.up12 * base.Lty);
    return {0.5 * two_G, 0.5 * two_H};
}

SprayPair spray_of(const LstarJet& L, const PhasePoint& pt) {
    const CometricJets g = cometric_jets(L);
    BaseDerivatives base{Jet(1, 0), Jet(1, 0), Jet(1, 0), Jet(1, 0)};
    const SprayJets s = spray_jets(L, pt, g, base);
    return {s.G.value(), s.H.value()};
}

/**
 * Flag curvature of a Cartan surface from an order-4 jet of L*:
 *
 *   K = ((G_xv - G_yu) v + 2 G G_uu + 2 H G_uv - G_u G_u - G_v H_u) / (v L_v)
 *
 * Tangent-side derivatives are rewritten on the cotangent side,
 *   d/du = g_11 d/dr + g_21 d/dt,   d/dv = g_12 d/dr + g_22 d/dt,
 * and base derivatives at fixed (u, v) pick up the fiber motion
 *   (dr/dx)_{u,v} = -(g_11 L*_rx + g_12 L*_tx),
 *   (dt/dx)_{u,v} = -(g_21 L*_rx + g_22 L*_tx),
 * (same with y). v = L*_t and L_v = t.
 */
double curvature_of(const LstarJet& L, const PhasePoint& pt) {
    const CometricJets g = cometric_jets(L);  // order 2
    BaseDerivatives base{Jet(1, 0), Jet(1, 0), Jet(1, 0), Jet(1, 0)};
    const SprayJets spray = spray_jets(L, pt, g, base);  // order 2

    const double g11 = g.lo11.value();
    const double g12 = g.lo12.value();
    const double g22 = g.lo22.value();

    // G_u, G_v as order-1 jets.
    const Jet Gr = d(spray.G, L.ir);
    const Jet Gt = d(spray.G, L.it);
    const Jet lo11 = truncate(g.lo11, 1);
    const Jet lo12 = truncate(g.lo12, 1);
    const Jet lo22 = truncate(g.lo22, 1);
    const Jet Gu = Gr * lo11 + Gt * lo12;
    const Jet Gv = Gr * lo12 + Gt * lo22;

    const double Gu_r = d(Gu, L.ir).value();
    const double Gu_t = d(Gu, L.it).value();
    const double Guu = Gu_r * g11 + Gu_t * g12;
    const double Guv = Gu_r * g12 + Gu_t * g22;

    const double Lrx = base.Lrx.value(), Ltx = base.Ltx.value();
    const double Lry = base.Lry.value(), Lty = base.Lty.value();
    const double dr_dx = -(g11 * Lrx + g12 * Ltx);
    const double dt_dx = -(g12 * Lrx + g22 * Ltx);
    const double dr_dy = -(g11 * Lry + g12 * Lty);
    const double dt_dy = -(g12 * Lry + g22 * Lty);

    const double Gvx = d(Gv, L.ix).value() + d(Gv, L.ir).value() * dr_dx + d(Gv, L.it).value() * dt_dx;
    const double Guy = d(Gu, L.iy).value() + Gu_r * dr_dy + Gu_t * dt_dy;

    const double Hu = d(spray.H, L.ir).value() * g11 + d(spray.H, L.it).value() * g12;

    const double G = spray.G.value();
    const double H = spray.H.value();
    const double v = d(L.value, L.it).value();
    const double denominator = v * pt.t;
    if (std::abs(denominator) < kSingularDenominator) {
        std::ostringstream msg;
        msg << "v * L_v = " << denominator << " is too close to zero";
        throw DomainError(msg.str(), denominator);
    }
    const double numerator =
        (Gvx - Guy) * v + 2.0 * G * Guu + 2.0 * H * Guv - Gu.value() * Gu.value() - Gv.value() * Hu;
    return numerator / denominator;
}

CurvatureSample sample_from(const PhasePoint& pt, auto&& build_jet) {
    CurvatureSample sample;
    sample.point = pt;
    LstarJet L{Jet(1, 0)};
    try {
        L = build_jet();
    } catch (const DomainError& e) {
        sample.status = SampleStatus::domain_error;
        sample.reason = "domain";
        sample.message = e.what();
        return sample;
    }
    const double v = d(L.value, L.it).value();
    if (std::abs(v * pt.t) < kSingularDenominator) {
        std::ostringstream msg;
        msg << "v * L_v = " << v * pt.t << " is too close to zero";
        sample.status = SampleStatus::singular_v;
        sample.reason = "singular_v";
        sample.message = msg.str();
        return sample;
    }
    try {
        sample.K = curvature_of(L, pt);
    } catch (const DomainError& e) {
        sample.status = SampleStatus::domain_error;
        sample.reason = "degenerate_cometric";
        sample.message = e.what();
    }
    return sample;
}

}  // namespace

CometricBlock cometric_at(const MetricParams& params, const PhasePoint& pt) {
    return block_of(cometric_jets(kepler_lstar(params, pt, 2)));
}

std::pair<double, double> legendre_fiber(const MetricParams& params, const PhasePoint& pt) {
    return legendre_of(kepler_lstar(params, pt, 2), pt);
}

SprayPair spray_coeffs(const MetricParams& params, const PhasePoint& pt) {
    return spray_of(kepler_lstar(params, pt, 2), pt);
}

CurvatureSample flag_curvature(const MetricParams& params, const PhasePoint& pt) {
    if (auto status = validate_domain(params, pt); !status) {
        CurvatureSample sample;
        sample.point = pt;
        sample.status = SampleStatus::domain_error;
        sample.reason = to_string(status.reason);
        sample.message = status.message;
        return sample;
    }
    return sample_from(pt, [&] { return LstarJet{lstar_jet(params, pt, 4), 0, -1, 1, 2}; });
}

CometricBlock cometric_at(const FundamentalFunction& fstar, const PhasePoint& pt) {
    return block_of(cometric_jets(callback_lstar(fstar, pt, 2)));
}

std::pair<double, double> legendre_fiber(const FundamentalFunction& fstar, const PhasePoint& pt) {
    return legendre_of(callback_lstar(fstar, pt, 2), pt);
}

SprayPair spray_coeffs(const FundamentalFunction& fstar, const PhasePoint& pt) {
    return spray_of(callback_lstar(fstar, pt, 2), pt);
}

CurvatureSample flag_curvature(const FundamentalFunction& fstar, const PhasePoint& pt) {
    return sample_from(pt, [&] { return callback_lstar(fstar, pt, 4); });
}

namespace {

// Closed-form curvature of F*_{c,1} along (r, t) = (0, x):
//   K = 2 P(x, c, alpha) / ((x^2 + 2c + alpha)
//         (x^2 alpha + 2c alpha + x^4 + 4x^2 c + 4c^2 - 8x)
//         (x^4 + 4x^2 c + 4c^2 - 16x)^2),
//   alpha = sqrt(x^4 + 4x^2 c + 4c^2 - 16x),
// with P given monomial by monomial below.
struct Monomial {
    int coeff;
    int x_pow;
    int c_pow;
    int alpha_pow;
};

constexpr std::array<Monomial, 49> kBracket{{
    {5824, 2, 4, 0},   {-5888, 3, 5, 0},  {-3840, 2, 1, 0},  {-2240, 1, 6, 0},  {-6320, 5, 4, 0},
    {-384, 2, 0, 1},   {1120, 6, 5, 0},   {2, 14, 1, 0},     {28, 12, 2, 0},    {-6528, 5, 1, 0},
    {256, 0, 8, 0},    {-864, 1, 5, 1},   {-1872, 3, 4, 1},  {896, 2, 7, 0},    {-1296, 7, 0, 0},
    {204, 10, 0, 0},   {-768, 0, 5, 0},   {-9, 13, 0, 0},    {2096, 8, 1, 0},   {-160, 11, 1, 0},
    {-1060, 9, 2, 0},  {-3520, 7, 3, 0},  {11520, 4, 3, 0},  {3840, 1, 3, 0},   {7584, 6, 2, 0},
    {-5952, 3, 2, 0},  {-648, 7, 2, 1},   {-126, 9, 1, 1},   {-1120, 3, 1, 1},  {2448, 4, 2, 1},
    {1152, 1, 2, 1},   {1920, 4, 0, 0},   {168, 10, 3, 0},   {1344, 4, 6, 0},   {560, 8, 4, 0},
    {1032, 6, 1, 1},   {-1584, 5, 3, 1},  {1632, 2, 3, 1},   {128, 0, 7, 1},    {384, 2, 6, 1},
    {-9, 11, 0, 1},    {2, 12, 1, 1},     {132, 8, 0, 1},    {320, 6, 4, 1},    {120, 8, 3, 1},
    {24, 10, 2, 1},    {480, 4, 5, 1},    {-528, 5, 0, 1},   {-384, 0, 4, 1},
}};

using Extended = long double;

Extended ipow(Extended base, int e) {
    Extended out = 1;
    for (int k = 0; k < e; ++k) out *= base;
    return out;
}

Extended radicand_ext(Extended c, Extended x) {
    return x * x * x * x + 4 * x * x * c + 4 * c * c - 16 * x;
}

}  // namespace

double closed_form_radicand(double c, double x) {
    return static_cast<double>(radicand_ext(c, x));
}

double flag_curvature_closed_form(double c, double x) {
    const Extended ce = c;
    const Extended xe = x;
    const Extended rad = radicand_ext(ce, xe);
    if (rad < 0) throw DomainError("closed form: alpha radicand is negative", static_cast<double>(rad));
    const Extended alpha = std::sqrt(rad);

    Extended bracket = 0;
    for (const auto& m : kBracket)
        bracket += m.coeff * ipow(xe, m.x_pow) * ipow(ce, m.c_pow) * ipow(alpha, m.alpha_pow);

    const Extended x2 = xe * xe;
    const Extended f1 = x2 + 2 * ce + alpha;
    const Extended f2 = x2 * alpha + 2 * ce * alpha + x2 * x2 + 4 * x2 * ce + 4 * ce * ce - 8 * xe;
    const Extended denominator = f1 * f2 * rad * rad;
    if (denominator == 0)
        throw DomainError("closed form: a denominator factor vanishes", static_cast<double>(f1 * f2));
    return static_cast<double>(2 * bracket / denominator);
}

}  // namespace cartan

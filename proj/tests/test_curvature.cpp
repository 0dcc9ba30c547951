#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cartan/curvature.hpp"
#include "cartan/errors.hpp"
#include "cartan/metric.hpp"

using namespace cartan;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

using F = boost::multiprecision::cpp_bin_float_50;

// Independent transcription of the closed form along (r, t) = (0, x), in 50 digits.
double closed_form_oracle(double c_in, double x_in) {
    const F x(x_in), c(c_in);
    using boost::multiprecision::pow;
    const F rad = pow(x, 4) + 4 * x * x * c + 4 * c * c - 16 * x;
    const F A = boost::multiprecision::sqrt(rad);
    const F num =
        F(5824) * pow(x, 2) * pow(c, 4) + F(-5888) * pow(x, 3) * pow(c, 5) + F(-3840) * pow(x, 2) * c +
        F(-2240) * x * pow(c, 6) + F(-6320) * pow(x, 5) * pow(c, 4) + F(-384) * pow(x, 2) * A +
        F(1120) * pow(x, 6) * pow(c, 5) + F(2) * pow(x, 14) * c + F(28) * pow(x, 12) * pow(c, 2) +
        F(-6528) * pow(x, 5) * c + F(256) * pow(c, 8) + F(-864) * x * pow(c, 5) * A +
        F(-1872) * pow(x, 3) * pow(c, 4) * A + F(896) * pow(x, 2) * pow(c, 7) + F(-1296) * pow(x, 7) +
        F(204) * pow(x, 10) + F(-768) * pow(c, 5) + F(-9) * pow(x, 13) + F(2096) * pow(x, 8) * c +
        F(-160) * pow(x, 11) * c + F(-1060) * pow(x, 9) * pow(c, 2) + F(-3520) * pow(x, 7) * pow(c, 3) +
        F(11520) * pow(x, 4) * pow(c, 3) + F(3840) * x * pow(c, 3) + F(7584) * pow(x, 6) * pow(c, 2) +
        F(-5952) * pow(x, 3) * pow(c, 2) + F(-648) * pow(x, 7) * pow(c, 2) * A + F(-126) * pow(x, 9) * c * A +
        F(-1120) * pow(x, 3) * c * A + F(2448) * pow(x, 4) * pow(c, 2) * A + F(1152) * x * pow(c, 2) * A +
        F(1920) * pow(x, 4) + F(168) * pow(x, 10) * pow(c, 3) + F(1344) * pow(x, 4) * pow(c, 6) +
        F(560) * pow(x, 8) * pow(c, 4) + F(1032) * pow(x, 6) * c * A + F(-1584) * pow(x, 5) * pow(c, 3) * A +
        F(1632) * pow(x, 2) * pow(c, 3) * A + F(128) * pow(c, 7) * A + F(384) * pow(x, 2) * pow(c, 6) * A +
        F(-9) * pow(x, 11) * A + F(2) * pow(x, 12) * c * A + F(132) * pow(x, 8) * A +
        F(320) * pow(x, 6) * pow(c, 4) * A + F(120) * pow(x, 8) * pow(c, 3) * A +
        F(24) * pow(x, 10) * pow(c, 2) * A + F(480) * pow(x, 4) * pow(c, 5) * A + F(-528) * pow(x, 5) * A +
        F(-384) * pow(c, 4) * A;
    const F den = (x * x + 2 * c + A) * (x * x * A + 2 * c * A + pow(x, 4) + 4 * x * x * c + 4 * c * c - 8 * x) *
                  rad * rad;
    return static_cast<double>(2 * num / den);
}

// Round sphere in stereographic-type coordinates: cometric (x^2 + y^2 + 2c)^2 / 4 * identity.
FundamentalFunction round_sphere(double c) {
    return [c](const Jet& x, const Jet& y, const Jet& r, const Jet& t) {
        return 0.5 * (x * x + y * y + 2.0 * c) * sqrt(r * r + t * t);
    };
}

// F* = e^x |(r, t)|, built with compose for the exponential.
Jet exp_jet(const Jet& x) {
    std::vector<double> taylor(x.max_order() + 1);
    double factorial = 1.0;
    for (int k = 0; k <= x.max_order(); ++k) {
        if (k > 0) factorial *= k;
        taylor[k] = std::exp(x.value()) / factorial;
    }
    return compose(x, taylor);
}

FundamentalFunction conformally_flat() {
    return [](const Jet& x, const Jet&, const Jet& r, const Jet& t) { return exp_jet(x) * sqrt(r * r + t * t); };
}

}  // namespace

TEST(ClosedForm, MatchesExtendedPrecisionOracle) {
    EXPECT_LT(rel(flag_curvature_closed_form(2.0, 1.0), closed_form_oracle(2.0, 1.0)), 1e-14);
    EXPECT_NEAR(closed_form_oracle(2.0, 1.0), 152.0 / 27.0, 1e-14);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(1, 400);
    for (int i = 0; i < 20; ++i) {
        const double c = 1.5 + num(rng) / 100.0;
        const double x = (i % 2 ? -1.0 : 1.0) * num(rng) / 40.0;
        EXPECT_LT(rel(flag_curvature_closed_form(c, x), closed_form_oracle(c, x)), 1e-13) << c << " " << x;
    }
}

TEST(ClosedForm, Radicand) {
    EXPECT_NEAR(closed_form_radicand(2.0, 1.0), 1 + 8 + 16 - 16, 1e-14);
    EXPECT_THROW(flag_curvature_closed_form(1.2, 1.0), DomainError);
}

TEST(Cometric, Synthetic) {
    const FundamentalFunction flat = [](const Jet&, const Jet&, const Jet& r, const Jet& t) { return sqrt(r * r + t * t); };
    const auto g = cometric_at(flat, {0.3, 0.1, 0.6, 0.8});
    EXPECT_NEAR(g.g11, 1.0, 1e-14);
    EXPECT_NEAR(g.g12, 0.0, 1e-14);
    EXPECT_NEAR(g.g22, 1.0, 1e-14);
    EXPECT_NEAR(g.det, 1.0, 1e-14);
    const auto [u, v] = legendre_fiber(flat, {0.3, 0.1, 0.6, 0.8});
    EXPECT_NEAR(u, 0.6, 1e-14);
    EXPECT_NEAR(v, 0.8, 1e-14);
    const auto spray = spray_coeffs(flat, {0.3, 0.1, 0.6, 0.8});
    EXPECT_EQ(spray.G, 0.0);
    EXPECT_EQ(spray.H_spray, 0.0);
    const auto k = flag_curvature(flat, {0.3, 0.1, 0.6, 0.8});
    ASSERT_TRUE(k.ok());
    EXPECT_NEAR(*k.K, 0.0, 1e-12);
}

TEST(Cometric, KeplerPoint) {
    const MetricParams params{1.0, 2.0};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto g0 = cometric_at(params, {1.0, 0.0, 0.0, 1.0});
    EXPECT_GT(g0.det, 0.0);
    for (int i = 0; i < 50; ++i) {
        const double phi = 2 * std::numbers::pi * u(rng);
        const PhasePoint pt{0.3 + 3 * u(rng), 0.0, std::sin(phi), std::cos(phi)};
        const auto g = cometric_at(params, pt);
        EXPECT_GT(g.det, 0.0);
        EXPECT_NEAR(g.inv11 * g.g11 + g.inv12 * g.g12, 1.0, 1e-10);
        EXPECT_NEAR(g.inv11 * g.g12 + g.inv12 * g.g22, 0.0, 1e-10);
        EXPECT_NEAR(g.inv12 * g.g12 + g.inv22 * g.g22, 1.0, 1e-10);

        // Fiber Hessian by central differences of L*.
        const double h = 1e-4;
        auto L = [&](double dr, double dt) { return lstar(params, {pt.x, pt.y, pt.r + dr, pt.t + dt}); };
        const double Lrr = (L(h, 0) - 2 * L(0, 0) + L(-h, 0)) / (h * h);
        const double Lrt = (L(h, h) - L(h, -h) - L(-h, h) + L(-h, -h)) / (4 * h * h);
        EXPECT_NEAR(g.g11, Lrr, 1e-5 * std::max(1.0, std::abs(Lrr)));
        EXPECT_NEAR(g.g12, Lrt, 1e-5 * std::max(1.0, std::abs(Lrt)));

        const auto [lu, lv] = legendre_fiber(params, pt);
        EXPECT_LT(rel(pt.r * lu + pt.t * lv, 2.0 * lstar(params, pt)), 1e-10);
    }
    const auto [u1, v1] = legendre_fiber(params, {1.0, 0.0, 0.0, 1.0});
    EXPECT_GT(v1, 0.0);
    (void)u1;
}

TEST(Spray, ConformallyFlatOracle) {
    // L* = e^(2x)(r^2 + t^2)/2: 2G = e^(4x)(t^2 - r^2), 2H = -2 e^(4x) r t.
    const FundamentalFunction f = conformally_flat();
    for (const PhasePoint pt : {PhasePoint{0.3, 0.0, 0.6, 0.8}, PhasePoint{-0.7, 2.0, -1.1, 0.4}}) {
        const auto spray = spray_coeffs(f, pt);
        const double e4 = std::exp(4 * pt.x);
        EXPECT_NEAR(spray.G, 0.5 * e4 * (pt.t * pt.t - pt.r * pt.r), 1e-12 * e4);
        EXPECT_NEAR(spray.H_spray, -e4 * pt.r * pt.t, 1e-12 * e4);
        const auto k = flag_curvature(f, pt);
        ASSERT_TRUE(k.ok());
        EXPECT_NEAR(*k.K, 0.0, 1e-10);
    }
}

TEST(Spray, KeplerFinite) {
    const auto s = spray_coeffs(MetricParams{0.0, 2.0}, {0.7, 0.0, 0.3, 1.0});
    EXPECT_TRUE(std::isfinite(s.G));
    EXPECT_TRUE(std::isfinite(s.H_spray));
}

TEST(FlagCurvature, RoundSphereGivesTwoC) {
    for (double c : {0.5, 1.0, 2.0}) {
        for (const PhasePoint pt : {PhasePoint{0.3, -0.2, 0.6, 0.8}, PhasePoint{1.5, 0.7, -0.2, 1.0}}) {
            const auto k = flag_curvature(round_sphere(c), pt);
            ASSERT_TRUE(k.ok());
            EXPECT_NEAR(*k.K, 2.0 * c, 1e-10 * c);
        }
    }
}

TEST(FlagCurvature, MatchesClosedForm) {
    const auto k = flag_curvature(MetricParams{1.0, 2.0}, {1.0, 0.0, 0.0, 1.0});
    ASSERT_TRUE(k.ok());
    EXPECT_LT(rel(*k.K, flag_curvature_closed_form(2.0, 1.0)), 1e-8);
    for (double c : {1.51, 1.65, 2.0, 5.0}) {
        for (int i = 0; i < 40; ++i) {
            const double x = (i % 2 ? -1 : 1) * (0.3 + 9.7 * i / 39.0);
            if (closed_form_radicand(c, x) < 0) continue;
            const auto s = flag_curvature(MetricParams{1.0, c}, {x, 0.0, 0.0, x});
            ASSERT_TRUE(s.ok()) << s.message;
            EXPECT_LT(rel(*s.K, closed_form_oracle(c, x)), 1e-8) << c << " " << x;
        }
    }
}

TEST(FlagCurvature, MoserLimitConstant) {
    const MetricParams params{0.0, 2.0};
    const auto k1 = flag_curvature(params, {0.7, 0.0, 0.0, 1.0});
    const auto k2 = flag_curvature(params, {1.8, 0.3, 0.4, 0.9});
    ASSERT_TRUE(k1.ok() && k2.ok());
    EXPECT_LT(rel(*k1.K, *k2.K), 1e-6);
}

TEST(FlagCurvature, Invariances) {
    const MetricParams params{1.0, 1.7};
    const PhasePoint pt{0.9, 0.0, 0.4, -0.8};
    const auto k = flag_curvature(params, pt);
    ASSERT_TRUE(k.ok());
    for (double lambda : {0.3, 2.0, 7.5}) {
        const auto moved = flag_curvature(params, {pt.x, 1.3, lambda * pt.r, lambda * pt.t});
        ASSERT_TRUE(moved.ok());
        EXPECT_LT(rel(*moved.K, *k.K), 1e-9);
    }
}

TEST(FlagCurvature, Statuses) {
    const auto sub = flag_curvature(MetricParams{1.0, 1.4}, {1.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(sub.status, SampleStatus::domain_error);
    EXPECT_EQ(sub.reason, "subcritical_energy");
    EXPECT_FALSE(sub.K.has_value());
    EXPECT_NE(sub.message.find("c <= 3/2"), std::string::npos);

    const auto chart = flag_curvature(MetricParams{1.0, 2.0}, {0.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(chart.status, SampleStatus::domain_error);
    EXPECT_EQ(chart.reason, "chart_singularity");

    const auto singular = flag_curvature(MetricParams{1.0, 2.0}, {1.0, 0.0, 1.0, 0.0});
    EXPECT_EQ(singular.status, SampleStatus::singular_v);
    EXPECT_FALSE(singular.K.has_value());
    EXPECT_STREQ(to_string(SampleStatus::singular_v), "singular_v");
}

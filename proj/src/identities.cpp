#include "cartan/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cartan/curvature.hpp"
#include "cartan/jet.hpp"
#include "cartan/metric.hpp"
#include "finite_difference.hpp"
#include "fstar_expr.hpp"

namespace cartan {

namespace {

using std::pow;
using std::sqrt;

double rel_dev(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    MetricParams params() {
        const double a = uniform(0.1, 4.0);
        return {a, critical_energy(a) * (1.0 + uniform(0.02, 2.0))};
    }

    PhasePoint point(const MetricParams& params) {
        for (;;) {
            const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
            const double phi = uniform(0.0, 2.0 * std::numbers::pi);
            const double rho = uniform(0.3, 3.0);
            const PhasePoint pt{sign * uniform(0.2, 4.0), uniform(-std::numbers::pi, std::numbers::pi),
                                rho * std::sin(phi), rho * std::cos(phi)};
            if (validate_domain(params, pt)) return pt;
        }
    }

    // Admissible point whose curvature evaluates cleanly (away from v t = 0).
    PhasePoint curvature_point(const MetricParams& params) {
        for (;;) {
            PhasePoint pt = point(params);
            if (std::abs(pt.t) < 0.05) continue;
            if (flag_curvature(params, pt).ok()) return pt;
        }
    }

private:
    std::mt19937_64 rng_;
};

IdentityCheck finish(std::string name, double worst, double tol, int cases, std::string detail = {}) {
    return {std::move(name), worst <= tol, worst, tol, cases, std::move(detail)};
}

IdentityCheck fstar_homogeneity(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const double lambda = i == 0 ? 2.5 : s.uniform(0.1, 10.0);
        const double scaled = fstar_polar(params, {pt.x, pt.y, lambda * pt.r, lambda * pt.t});
        worst = std::max(worst, rel_dev(scaled, lambda * fstar_polar(params, pt)));
    }
    return finish("F* fiber 1-homogeneity", worst, 1e-12, n);
}

IdentityCheck lstar_euler(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const Jet L = lstar_jet(params, pt, 1);
        const double euler = pt.r * extract(L, {0, 1, 0, 0}) + pt.t * extract(L, {0, 0, 1, 0});
        worst = std::max(worst, rel_dev(euler, 2.0 * L.value()));
    }
    return finish("L* Euler identity r L*_r + t L*_t = 2 L*", worst, 1e-10, n);
}

IdentityCheck fstar_y_invariance(Sampler& s, int n) {
    int mismatches = 0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const double other_y = s.uniform(-10.0, 10.0);
        if (fstar_polar(params, pt) != fstar_polar(params, {pt.x, other_y, pt.r, pt.t})) ++mismatches;
    }
    return finish("F* y-invariance (bit-identical)", mismatches, 0.0, n);
}

IdentityCheck scaling_identity(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const auto [reduced, mapped] = scaling_reduce(params, pt);
        worst = std::max(worst, rel_dev(fstar_polar(params, pt), std::cbrt(params.a) * fstar_polar(reduced, mapped)));
    }
    return finish("scaling F*_{c,a} = a^(1/3) F*_{c a^(-2/3),1}", worst, 1e-12, n);
}

IdentityCheck cartesian_polar(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const double cy = std::cos(pt.y), sy = std::sin(pt.y);
        const CartesianFiberPoint cart{{pt.x * cy, pt.x * sy},
                                       {cy * pt.r - sy * pt.t / pt.x, sy * pt.r + cy * pt.t / pt.x},
                                       (pt.x * pt.x / 2.0 + params.c) / 2.0};
        worst = std::max(worst, rel_dev(fstar_cartesian(cart, params.a), fstar_polar(params, pt)));
    }
    return finish("Cartesian and polar F* agree", worst, 1e-12, n);
}

IdentityCheck non_reversibility(Sampler& s, int n) {
    // For a > 0 some point must distinguish q from -q; for a = 0 none may.
    double max_gap = 0.0;
    double worst_a0 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.point(params);
        const PhasePoint flipped{pt.x, pt.y, -pt.r, -pt.t};
        if (validate_domain(params, flipped))
            max_gap = std::max(max_gap, rel_dev(fstar_polar(params, pt), fstar_polar(params, flipped)));
        const MetricParams inertial{0.0, params.c};
        worst_a0 = std::max(worst_a0, rel_dev(fstar_polar(inertial, pt), fstar_polar(inertial, flipped)));
    }
    std::ostringstream detail;
    detail << "largest a>0 asymmetry " << max_gap;
    IdentityCheck check = finish("F* non-reversible for a > 0, reversible for a = 0", worst_a0, 1e-15, n, detail.str());
    check.passed = check.passed && max_gap > 1e-3;
    return check;
}

// Smooth test functions for the derivative cross-check, written once and
// evaluated both on jets and on long doubles.
struct TestFunction2 {
    template <class T>
    T operator()(const T& x, const T& y) const {
        return sqrt(1.0 + x * x + 3.0 * y * y) / (2.0 + x * y);
    }
};

struct TestFunction3 {
    template <class T>
    T operator()(const T& x, const T& y, const T& z) const {
        return pow(T(1.5 + x * y + z * z), 1.7) + 1.0 / (3.0 + x);
    }
};

struct TestFunction4 {
    template <class T>
    T operator()(const T& x, const T& y, const T& z, const T& w) const {
        return x * y * z * w + sqrt(4.0 + x + 2.0 * y + w * w) * z - pow(T(2.0 + x * x + y * z), -2.0);
    }
};

struct KeplerLstar {
    MetricParams params{1.0, 2.0};
    template <class T>
    T operator()(const T& x, const T& r, const T& t) const {
        const T f = detail::fstar_polar_expr(params.a, params.c, x, r, t);
        return 0.5 * f * f;
    }
};

template <std::size_t N, class F>
void compare_with_fd(const F& func, const std::array<double, N>& at, double& worst_low, double& worst_high,
                     int& cases_low, int& cases_high) {
    Jet jet(static_cast<int>(N), 4);
    [&]<std::size_t... I>(std::index_sequence<I...>) {
        jet = func(seed_variable(static_cast<int>(I), at[I], static_cast<int>(N), 4)...);
    }(std::make_index_sequence<N>{});

    const detail::FdFunction<N> scalar = [&](const std::array<long double, N>& p) {
        return [&]<std::size_t... I>(std::index_sequence<I...>) { return func(p[I]...); }(std::make_index_sequence<N>{});
    };
    std::array<long double, N> at_ld{};
    for (std::size_t v = 0; v < N; ++v) at_ld[v] = at[v];

    // Every multi-index of degree 1..4.
    MultiIndex mu{};
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var == N) {
            const int order = mu[0] + mu[1] + mu[2] + mu[3];
            if (order == 0) return;
            const double exact = extract(jet, mu);
            const double fd = static_cast<double>(detail::finite_difference<N>(scalar, at_ld, mu, detail::fd_step(order)));
            // Relative, with a unit floor so vanishing derivatives compare absolutely.
            const double dev = std::abs(exact - fd) / std::max({std::abs(exact), std::abs(fd), 1.0});
            double& worst = order <= 2 ? worst_low : worst_high;
            worst = std::max(worst, dev);
            ++(order <= 2 ? cases_low : cases_high);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            mu[var] = e;
            self(self, var + 1, remaining - e);
        }
        mu[var] = 0;
    };
    rec(rec, 0, 4);
}

std::vector<IdentityCheck> jet_vs_fd() {
    double low = 0.0, high = 0.0;
    int n_low = 0, n_high = 0;
    compare_with_fd<2>(TestFunction2{}, {0.3, -0.7}, low, high, n_low, n_high);
    compare_with_fd<3>(TestFunction3{}, {0.4, 0.5, -0.2}, low, high, n_low, n_high);
    compare_with_fd<4>(TestFunction4{}, {0.2, -0.3, 0.5, 0.7}, low, high, n_low, n_high);
    compare_with_fd<3>(KeplerLstar{}, {1.2, 0.3, 0.8}, low, high, n_low, n_high);
    compare_with_fd<3>(KeplerLstar{{1.0, 1.55}}, {-0.8, -0.4, 0.6}, low, high, n_low, n_high);
    return {finish("jet vs finite differences, orders 1-2", low, 1e-5, n_low),
            finish("jet vs finite differences, orders 3-4", high, 1e-3, n_high)};
}

IdentityCheck curvature_invariance(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto params = s.params();
        const auto pt = s.curvature_point(params);
        const double lambda = s.uniform(0.2, 5.0);
        const PhasePoint moved{pt.x, s.uniform(-10.0, 10.0), lambda * pt.r, lambda * pt.t};
        const auto k0 = flag_curvature(params, pt);
        const auto k1 = flag_curvature(params, moved);
        if (!k1.ok()) return finish("K y-invariance and fiber 0-homogeneity", 1.0, 1e-9, i, k1.message);
        worst = std::max(worst, rel_dev(*k0.K, *k1.K));
    }
    return finish("K y-invariance and fiber 0-homogeneity", worst, 1e-9, n);
}

IdentityCheck closed_form_agreement(Sampler& s, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c = critical_energy(1.0) * (1.0 + s.uniform(0.005, 3.0));
        const double x = (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.3, 10.0);
        const auto sample = flag_curvature(MetricParams{1.0, c}, PhasePoint{x, 0.0, 0.0, x});
        if (!sample.ok()) return finish("K matches closed form along (0, x)", 1.0, 1e-8, i, sample.message);
        worst = std::max(worst, rel_dev(*sample.K, flag_curvature_closed_form(c, x)));
    }
    return finish("K matches closed form along (0, x)", worst, 1e-8, n);
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const IdentityOptions& options) {
    Sampler sampler(options.seed);
    const int n = std::max(options.samples, 1);
    std::vector<IdentityCheck> checks;
    checks.push_back(fstar_homogeneity(sampler, n));
    checks.push_back(lstar_euler(sampler, n));
    checks.push_back(fstar_y_invariance(sampler, n));
    checks.push_back(scaling_identity(sampler, n));
    checks.push_back(cartesian_polar(sampler, n));
    checks.push_back(non_reversibility(sampler, n));
    for (auto& c : jet_vs_fd()) checks.push_back(std::move(c));
    checks.push_back(curvature_invariance(sampler, n));
    checks.push_back(closed_form_agreement(sampler, n));
    return checks;
}

}  // namespace cartan

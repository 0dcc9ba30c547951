#include "cartan/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cartan/errors.hpp"

namespace cartan {
namespace detail {

struct ProductTerm {
    int lhs;
    int rhs;
    int out;
};

struct JetLayout {
    int num_vars = 0;
    int max_order = 0;
    std::vector<MultiIndex> indices;
    std::vector<int> degree;
    std::array<int, 625> position{};  // base-5 key -> slot, -1 if absent
    std::vector<ProductTerm> products;
};

namespace {

int key_of(const MultiIndex& mu) { return mu[0] + 5 * mu[1] + 25 * mu[2] + 125 * mu[3]; }

// All multi-indices of total degree d in n variables, in a fixed order that
// does not depend on the truncation order.
void append_degree(int n, int d, std::vector<MultiIndex>& out) {
    MultiIndex mu{};
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n - 1) {
            mu[var] = remaining;
            out.push_back(mu);
            mu[var] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            mu[var] = e;
            self(self, var + 1, remaining - e);
        }
        mu[var] = 0;
    };
    rec(rec, 0, d);
}

JetLayout build_layout(int n, int order) {
    JetLayout layout;
    layout.num_vars = n;
    layout.max_order = order;
    layout.position.fill(-1);
    for (int d = 0; d <= order; ++d) append_degree(n, d, layout.indices);
    for (std::size_t i = 0; i < layout.indices.size(); ++i) {
        const auto& mu = layout.indices[i];
        layout.position[key_of(mu)] = static_cast<int>(i);
        layout.degree.push_back(mu[0] + mu[1] + mu[2] + mu[3]);
    }
    const int size = static_cast<int>(layout.indices.size());
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (layout.degree[i] + layout.degree[j] > order) continue;
            MultiIndex sum{};
            for (int v = 0; v < 4; ++v) sum[v] = layout.indices[i][v] + layout.indices[j][v];
            layout.products.push_back({i, j, layout.position[key_of(sum)]});
        }
    }
    return layout;
}

struct LayoutTable {
    std::array<std::array<JetLayout, Jet::kMaxOrder + 1>, Jet::kMaxVars> table;
    LayoutTable() {
        for (int n = 1; n <= Jet::kMaxVars; ++n)
            for (int k = 0; k <= Jet::kMaxOrder; ++k) table[n - 1][k] = build_layout(n, k);
    }
};

const JetLayout* layout_for(int num_vars, int max_order) {
    static const LayoutTable layouts;
    if (num_vars < 1 || num_vars > Jet::kMaxVars)
        throw ArgumentError("jet variable count must be in 1..4, got " + std::to_string(num_vars));
    if (max_order < 0 || max_order > Jet::kMaxOrder)
        throw ArgumentError("jet order must be in 0..4, got " + std::to_string(max_order));
    return &layouts.table[num_vars - 1][max_order];
}

int slot_of(const JetLayout& layout, const MultiIndex& mu) {
    int degree = 0;
    for (int v = 0; v < 4; ++v) {
        if (mu[v] < 0 || (v >= layout.num_vars && mu[v] != 0))
            throw ArgumentError("multi-index does not match the jet's variables");
        degree += mu[v];
    }
    if (degree > layout.max_order)
        throw ArgumentError("multi-index degree " + std::to_string(degree) +
                            " exceeds jet order " + std::to_string(layout.max_order));
    return layout.position[key_of(mu)];
}

}  // namespace
}  // namespace detail

Jet::Jet(int num_vars, int max_order) : layout_(detail::layout_for(num_vars, max_order)) {}

Jet Jet::constant(double value, int num_vars, int max_order) {
    Jet j(num_vars, max_order);
    j.coeffs_[0] = value;
    return j;
}

int Jet::num_vars() const noexcept { return layout_->num_vars; }
int Jet::max_order() const noexcept { return layout_->max_order; }
int Jet::size() const noexcept { return static_cast<int>(layout_->indices.size()); }

std::span<const double> Jet::coeffs() const noexcept {
    return {coeffs_.data(), static_cast<std::size_t>(size())};
}

double Jet::coeff(const MultiIndex& mu) const { return coeffs_[detail::slot_of(*layout_, mu)]; }

void Jet::set_coeff(const MultiIndex& mu, double value) {
    coeffs_[detail::slot_of(*layout_, mu)] = value;
}

void Jet::require_same_shape(const Jet& other) const {
    if (layout_ != other.layout_)
        throw ArgumentError("incompatible jets: (" + std::to_string(num_vars()) + " vars, order " +
                            std::to_string(max_order()) + ") vs (" +
                            std::to_string(other.num_vars()) + " vars, order " +
                            std::to_string(other.max_order()) + ")");
}

Jet& Jet::operator+=(const Jet& other) {
    require_same_shape(other);
    for (int i = 0, n = size(); i < n; ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& other) {
    require_same_shape(other);
    for (int i = 0, n = size(); i < n; ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

Jet& Jet::operator*=(const Jet& other) { return *this = multiply(*this, other); }

Jet& Jet::operator+=(double s) noexcept {
    coeffs_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) noexcept {
    coeffs_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) noexcept {
    for (int i = 0, n = size(); i < n; ++i) coeffs_[i] *= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet out = *this;
    out *= -1.0;
    return out;
}

Jet seed_variable(int index, double value, int num_vars, int max_order) {
    if (index < 0 || index >= num_vars)
        throw ArgumentError("seed index " + std::to_string(index) + " out of range for " +
                            std::to_string(num_vars) + " variables");
    Jet j = Jet::constant(value, num_vars, max_order);
    if (max_order >= 1) {
        MultiIndex mu{};
        mu[index] = 1;
        j.set_coeff(mu, 1.0);
    }
    return j;
}

Jet multiply(const Jet& a, const Jet& b) {
    a.require_same_shape(b);
    Jet out(a.num_vars(), a.max_order());
    for (const auto& term : a.layout_->products)
        out.coeffs_[term.out] += a.coeffs_[term.lhs] * b.coeffs_[term.rhs];
    return out;
}

Jet compose(const Jet& a, std::span<const double> taylor) {
    // Horner in h = a - a0, which has no constant term, so h^k vanishes
    // beyond the truncation order.
    Jet h = a;
    h -= a.value();
    const int order = std::min<int>(a.max_order(), static_cast<int>(taylor.size()) - 1);
    Jet out = Jet::constant(order >= 0 ? taylor[order] : 0.0, a.num_vars(), a.max_order());
    for (int k = order - 1; k >= 0; --k) {
        out = multiply(out, h);
        out += taylor[k];
    }
    return out;
}

namespace {

// Taylor coefficients of s -> s^p at a0: binom(p, k) a0^(p-k).
std::array<double, Jet::kMaxOrder + 1> power_series(double a0, double p, int order) {
    std::array<double, Jet::kMaxOrder + 1> c{};
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        c[k] = binom * std::pow(a0, p - k);
        binom *= (p - k) / (k + 1);
    }
    return c;
}

}  // namespace

Jet reciprocal(const Jet& a) {
    const double a0 = a.value();
    if (a0 == 0.0) throw DomainError("reciprocal of a jet with zero constant term", a0);
    auto c = power_series(a0, -1.0, a.max_order());
    return compose(a, std::span<const double>(c.data(), a.max_order() + 1));
}

Jet sqrt(const Jet& a) {
    const double a0 = a.value();
    if (!(a0 > 0.0)) throw DomainError("sqrt of a jet with non-positive constant term", a0);
    auto c = power_series(a0, 0.5, a.max_order());
    return compose(a, std::span<const double>(c.data(), a.max_order() + 1));
}

Jet pow(const Jet& a, double p) {
    const double a0 = a.value();
    const bool integer = std::floor(p) == p;
    if (integer) {
        if (p < 0.0 && a0 == 0.0) throw DomainError("negative power of a jet with zero constant term", a0);
        if (p >= 0.0 && a0 == 0.0) {
            // a0^(p-k) is singular for k > p; expand by repeated products.
            Jet out = Jet::constant(1.0, a.num_vars(), a.max_order());
            for (int k = 0; k < static_cast<int>(p); ++k) out = multiply(out, a);
            return out;
        }
    } else if (!(a0 > 0.0)) {
        throw DomainError("non-integer power of a jet with non-positive constant term", a0);
    }
    auto c = power_series(a0, p, a.max_order());
    return compose(a, std::span<const double>(c.data(), a.max_order() + 1));
}

double extract(const Jet& a, const MultiIndex& mu) {
    double factorial = 1.0;
    for (int v = 0; v < 4; ++v)
        for (int k = 2; k <= mu[v]; ++k) factorial *= k;
    return a.coeff(mu) * factorial;
}

Jet differentiate(const Jet& a, int index) {
    if (index < 0 || index >= a.num_vars())
        throw ArgumentError("derivative index " + std::to_string(index) + " out of range");
    if (a.max_order() == 0) throw ArgumentError("cannot differentiate an order-0 jet");
    Jet out(a.num_vars(), a.max_order() - 1);
    const auto& target = *out.layout_;
    for (std::size_t i = 0; i < target.indices.size(); ++i) {
        MultiIndex up = target.indices[i];
        up[index] += 1;
        out.coeffs_[i] = up[index] * a.coeffs_[a.layout_->position[detail::key_of(up)]];
    }
    return out;
}

Jet truncate(const Jet& a, int order) {
    if (order > a.max_order())
        throw ArgumentError("cannot truncate an order-" + std::to_string(a.max_order()) +
                            " jet to order " + std::to_string(order));
    Jet out(a.num_vars(), order);
    for (int i = 0, n = out.size(); i < n; ++i) out.coeffs_[i] = a.coeffs_[i];
    return out;
}

}  // namespace cartan

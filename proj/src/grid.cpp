#include "wavefront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavefront {

void validate(const Grid& g) {
    if (!(g.dx > 0.0)) throw std::domain_error("grid: dx must be > 0");
    if (g.n < 3) throw std::domain_error("grid: n must be >= 3");
    if (!std::isfinite(g.x_min) || !std::isfinite(g.x_max()))
        throw std::domain_error("grid: extent must be finite");
}

Grid make_grid(double x_min, double x_max, double dx) {
    if (!(dx > 0.0) || !(x_max > x_min)) throw std::domain_error("grid: need x_max > x_min and dx > 0");
    int n = static_cast<int>(std::round((x_max - x_min) / dx)) + 1;
    Grid g{x_min, dx, n};
    validate(g);
    return g;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values, ExtensionPolicy policy)
    : grid_(grid), values_(std::move(values)), policy_(policy) {
    validate(grid_);
    if (static_cast<int>(values_.size()) != grid_.n)
        throw std::domain_error("gridfunction: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::domain_error("gridfunction: values must be finite");
}

GridFunction GridFunction::constant(const Grid& g, double v, ExtensionPolicy policy) {
    return GridFunction(g, std::vector<double>(static_cast<size_t>(g.n), v), policy);
}

double GridFunction::left_extension_value() const {
    return policy_.left == Extension::Zero ? 0.0 : values_.front();
}

double GridFunction::right_extension_value() const {
    return policy_.right == Extension::Zero ? 0.0 : values_.back();
}

double GridFunction::value_at(double x) const {
    if (x < grid_.x_min) return left_extension_value();
    if (x > grid_.x_max()) return right_extension_value();
    double t = (x - grid_.x_min) / grid_.dx;
    double fl = std::floor(t);
    int j = static_cast<int>(fl);
    double frac = t - fl;
    // Snap to nodes so grid-multiple translations stay exact.
    if (frac < 1e-12) return values_[static_cast<size_t>(std::min(j, grid_.n - 1))];
    if (frac > 1.0 - 1e-12) return values_[static_cast<size_t>(std::min(j + 1, grid_.n - 1))];
    return (1.0 - frac) * values_[static_cast<size_t>(j)] + frac * values_[static_cast<size_t>(j + 1)];
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::is_nondecreasing(double slack) const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] < values_[i - 1] - slack) return false;
    return true;
}

GridFunction translate(const GridFunction& u, double y) {
    const Grid& g = u.grid();
    std::vector<double> out(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) out[static_cast<size_t>(i)] = u.value_at(g.x(i) - y);
    return u.with_values(std::move(out));
}

double weighted_sup_norm(const GridFunction& u) {
    const Grid& g = u.grid();
    if (!g.contains_zero()) throw std::domain_error("weighted_sup_norm: grid must contain 0");
    int n_max = static_cast<int>(std::ceil(std::max(-g.x_min, g.x_max())));
    double norm = 0.0;
    double w = 1.0;
    for (int m = 1; m <= n_max; ++m) {
        w *= 0.5;
        // sup over |x| <= m of a piecewise-linear function: interior nodes
        // plus the interval endpoints (extension values once past the grid).
        double s = std::max(std::abs(u.value_at(-m)), std::abs(u.value_at(m)));
        int i_lo = static_cast<int>(std::ceil((-m - g.x_min) / g.dx - 1e-12));
        int i_hi = static_cast<int>(std::floor((m - g.x_min) / g.dx + 1e-12));
        i_lo = std::max(i_lo, 0);
        i_hi = std::min(i_hi, g.n - 1);
        for (int i = i_lo; i <= i_hi; ++i) s = std::max(s, std::abs(u[i]));
        norm += w * s;
    }
    return norm;
}

Ordering compare(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid())) throw std::domain_error("compare: grid mismatch");
    bool le = true, ge = true;
    for (int i = 0; i < u.size(); ++i) {
        if (u[i] > v[i]) le = false;
        if (u[i] < v[i]) ge = false;
    }
    if (le && ge) return Ordering::Equal;
    if (le) return Ordering::Leq;
    if (ge) return Ordering::Geq;
    return Ordering::Incomparable;
}

double sup_abs_diff(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid())) throw std::domain_error("sup_abs_diff: grid mismatch");
    double m = 0.0;
    for (int i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

double max_excess(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid())) throw std::domain_error("max_excess: grid mismatch");
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < u.size(); ++i) m = std::max(m, u[i] - v[i]);
    return m;
}

}  // namespace wavefront

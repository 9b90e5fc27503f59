#include "wavefront/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavefront {

Kernel Kernel::dirac() {
    Kernel k;
    k.kind_ = KernelKind::Dirac;
    return k;
}

Kernel Kernel::gaussian(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("kernel: gaussian alpha must be > 0");
    Kernel k;
    k.kind_ = KernelKind::Gaussian;
    k.alpha_ = alpha;
    k.cutoff_ = 8.0 * std::sqrt(2.0 * alpha);  // tail mass < 1e-14
    return k;
}

Kernel Kernel::tabulated(double dx, std::vector<double> half_values) {
    if (!(dx > 0.0) || half_values.size() < 2)
        throw std::domain_error("kernel: tabulated needs dx > 0 and >= 2 samples");
    for (double v : half_values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::domain_error("kernel: values must be nonnegative");
    Kernel k;
    k.kind_ = KernelKind::Tabulated;
    k.table_dx_ = dx;
    k.cutoff_ = dx * static_cast<double>(half_values.size() - 1);
    k.table_ = std::move(half_values);
    return k;
}

double Kernel::density(double x) const {
    switch (kind_) {
        case KernelKind::Gaussian:
            return std::exp(-x * x / (4.0 * alpha_)) / std::sqrt(4.0 * std::numbers::pi * alpha_);
        case KernelKind::Tabulated: {
            double ax = std::abs(x);
            if (ax > cutoff_) return 0.0;
            double t = ax / table_dx_;
            size_t j = static_cast<size_t>(std::floor(t));
            if (j + 1 >= table_.size()) return table_.back();
            double frac = t - static_cast<double>(j);
            return (1.0 - frac) * table_[j] + frac * table_[j + 1];
        }
        case KernelKind::Dirac:
            break;
    }
    throw std::domain_error("kernel: dirac has no pointwise density");
}

std::vector<double> Kernel::weights(double dx) const {
    if (kind_ == KernelKind::Dirac) return {1.0};
    if (kind_ == KernelKind::Tabulated && std::abs(dx - table_dx_) > 1e-12)
        throw std::domain_error("kernel: tabulated step does not match grid step");
    int m = static_cast<int>(std::ceil(cutoff_ / dx - 1e-12));
    std::vector<double> w(static_cast<size_t>(2 * m + 1));
    double sum = 0.0;
    for (int j = -m; j <= m; ++j) {
        double v = density(j * dx) * dx;
        w[static_cast<size_t>(j + m)] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;  // mass exactly 1
    return w;
}

double Kernel::khat(double rho) const {
    switch (kind_) {
        case KernelKind::Dirac:
            return 1.0;
        case KernelKind::Gaussian: {
            double e = alpha_ * rho * rho;
            if (e > 700.0) throw std::range_error("khat: exponential moment overflow");
            return std::exp(e);
        }
        case KernelKind::Tabulated: {
            if (std::exp(std::abs(rho) * cutoff_) * density(cutoff_) > 1e-14)
                throw std::domain_error("khat: tabulated tail not decayed at the cutoff");
            auto w = weights(table_dx_);
            int m = (static_cast<int>(w.size()) - 1) / 2;
            double s = 0.0;
            for (int j = -m; j <= m; ++j) {
                double e = rho * j * table_dx_;
                if (e > 700.0) throw std::range_error("khat: exponential moment overflow");
                s += std::exp(e) * w[static_cast<size_t>(j + m)];
            }
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

GridFunction convolve(const Kernel& k, const GridFunction& u) {
    if (k.is_dirac()) return u;
    const Grid& g = u.grid();
    double half_width = 0.5 * (g.x_max() - g.x_min);
    if (k.cutoff() > half_width) throw std::domain_error("convolve: kernel cutoff exceeds grid half-width");
    auto w = k.weights(g.dx);
    int m = (static_cast<int>(w.size()) - 1) / 2;
    double left = u.left_extension_value(), right = u.right_extension_value();
    std::vector<double> out(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        double s = 0.0;
        for (int j = -m; j <= m; ++j) {
            int idx = i - j;
            double v = idx < 0 ? left : (idx >= g.n ? right : u[idx]);
            s += w[static_cast<size_t>(j + m)] * v;
        }
        out[static_cast<size_t>(i)] = s;
    }
    return u.with_values(std::move(out));
}

GridFunction heat_apply(HeatMode mode, double z, double mu, double d, double t,
                        const GridFunction& phi) {
    if (t < 0.0 || mu < 0.0 || !(d > 0.0))
        throw std::domain_error("heat_apply: need t >= 0, mu >= 0, d > 0");
    if (t == 0.0) return phi;
    if (mode == HeatMode::DirichletHalfLine) z = 0.0;

    const Grid& g = phi.grid();
    double sdev = std::sqrt(2.0 * d * t);
    // Tail cutoff where the gaussian factor drops below 1e-16.
    double radius = sdev * std::sqrt(2.0 * 16.0 * std::numbers::ln10);
    // Step <= sdev/2 keeps the full-support trapezoid rule superalgebraic.
    int refine = std::max(1, static_cast<int>(std::ceil(2.0 * g.dx / sdev)));
    double h = g.dx / refine;
    double pref = std::exp(-mu * t) / std::sqrt(4.0 * d * std::numbers::pi * t);
    double inv4dt = 1.0 / (4.0 * d * t);

    // Quadrature nodes are anchored to the grid (y = x_min + k h) so that the
    // pointwise orderings in z and against the whole-line kernel carry over
    // exactly to the discretization; the integrand vanishes at y = -z, so the
    // moving domain edge needs no special endpoint weight.
    std::vector<double> out(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        if (mode != HeatMode::WholeLine && x < -z - 1e-12 * std::max(1.0, std::abs(z))) {
            out[static_cast<size_t>(i)] = 0.0;
            continue;
        }
        double lo = x - radius, hi = x + radius;
        if (mode != HeatMode::WholeLine) lo = std::max(lo, -z);
        long k_lo = static_cast<long>(std::ceil((lo - g.x_min) / h - 1e-12));
        long k_hi = static_cast<long>(std::floor((hi - g.x_min) / h + 1e-12));
        double acc = 0.0;
        for (long k = k_lo; k <= k_hi; ++k) {
            double y = g.x_min + k * h;
            double ker = std::exp(-(x - y) * (x - y) * inv4dt);
            if (mode != HeatMode::WholeLine) {
                double img = x + y + 2.0 * z;
                ker -= std::exp(-img * img * inv4dt);
            }
            acc += phi.value_at(y) * ker;
        }
        out[static_cast<size_t>(i)] = pref * acc * h;
    }
    return phi.with_values(std::move(out));
}

}  // namespace wavefront

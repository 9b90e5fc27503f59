#include "wavefront/fronts.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wavefront {

std::optional<double> level_position(const GridFunction& u, double lambda, Side side) {
    if (!(lambda > 0.0)) throw std::domain_error("level_position: need lambda > 0");
    const Grid& g = u.grid();
    if (side == Side::Rightmost) {
        for (int i = g.n - 1; i >= 0; --i) {
            if (u[i] >= lambda) {
                if (i == g.n - 1) return g.x_max();
                double t = (u[i] - lambda) / (u[i] - u[i + 1]);  // u[i+1] < lambda here
                return g.x(i) + t * g.dx;
            }
        }
        return std::nullopt;
    }
    for (int i = 0; i < g.n; ++i) {
        if (u[i] >= lambda) {
            if (i == 0) return g.x_min;
            double t = (u[i] - lambda) / (u[i] - u[i - 1]);
            return g.x(i) - t * g.dx;
        }
    }
    return std::nullopt;
}

FrontTrace track_front(const RunRecord& run, double level, Side side) {
    FrontTrace tr;
    tr.level = level;
    tr.side = side;
    tr.times = run.times;
    tr.positions.reserve(run.times.size());
    for (size_t i = 0; i < run.times.size(); ++i)
        tr.positions.push_back(level_position(run.snapshot(i), level, side));
    return tr;
}

SpeedFit empirical_speed(const FrontTrace& trace, double t_lo, double t_hi) {
    std::vector<double> ts, xs;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        double t = trace.times[i];
        if (t < t_lo || t > t_hi) continue;
        if (!trace.positions[i]) throw std::domain_error("empirical_speed: absent front position in window");
        ts.push_back(t);
        xs.push_back(*trace.positions[i]);
    }
    size_t n = ts.size();
    if (n < 5) throw std::domain_error("empirical_speed: fewer than 5 points in window");
    double tm = 0.0, xm = 0.0;
    for (size_t i = 0; i < n; ++i) {
        tm += ts[i];
        xm += xs[i];
    }
    tm /= n;
    xm /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (ts[i] - tm) * (ts[i] - tm);
        sxy += (ts[i] - tm) * (xs[i] - xm);
    }
    double slope = sxy / sxx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double r = xs[i] - xm - slope * (ts[i] - tm);
        ss_res += r * r;
    }
    double se = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
    return {slope, se, static_cast<int>(n)};
}

namespace {

// sup of |u - ref| over the grid portion of [x_lo, x_hi]; nullopt when the
// window contains no sample.
std::optional<double> window_sup(const RunRecord& run, size_t snap, double x_lo, double x_hi,
                                 const std::function<double(double)>& ref) {
    const Grid& g = run.grid;
    int i_lo = static_cast<int>(std::ceil((x_lo - g.x_min) / g.dx - 1e-9));
    int i_hi = static_cast<int>(std::floor((x_hi - g.x_min) / g.dx + 1e-9));
    i_lo = std::max(i_lo, 0);
    i_hi = std::min(i_hi, g.n - 1);
    if (i_lo > i_hi) return std::nullopt;
    double m = 0.0;
    const auto& vals = run.snapshots[snap];
    for (int i = i_lo; i <= i_hi; ++i)
        m = std::max(m, std::abs(vals[static_cast<size_t>(i)] - ref(g.x(i))));
    return m;
}

}  // namespace

Curve interval_convergence(const RunRecord& run, const GridFunction& reference, double c_lo,
                           double c_hi, double eps) {
    Curve curve;
    // Degenerate window: every interval is empty, so the curve is too.
    if (!(c_lo + eps < c_hi - eps)) return curve;
    for (size_t k = 0; k < run.times.size(); ++k) {
        double t = run.times[k];
        auto s = window_sup(run, k, t * (c_lo + eps), t * (c_hi - eps),
                            [&](double x) { return reference.value_at(x); });
        if (!s) continue;
        curve.t.push_back(t);
        curve.value.push_back(*s);
    }
    return curve;
}

Curve interval_convergence(const RunRecord& run, double r_star, double c_lo, double c_hi,
                           double eps) {
    return interval_convergence(run, GridFunction::constant(run.grid, r_star), c_lo, c_hi, eps);
}

Curve tail_decay_behind(const RunRecord& run, double c, double eps) {
    Curve curve;
    const Grid& g = run.grid;
    for (size_t k = 0; k < run.times.size(); ++k) {
        double t = run.times[k];
        auto s = window_sup(run, k, g.x_min, t * (c - eps), [](double) { return 0.0; });
        curve.t.push_back(t);
        curve.value.push_back(s.value_or(0.0));
    }
    return curve;
}

Curve tail_decay_outside_cone(const RunRecord& run, double c_minus, double c_plus, double eps) {
    Curve curve;
    const Grid& g = run.grid;
    for (size_t k = 0; k < run.times.size(); ++k) {
        double t = run.times[k];
        auto left = window_sup(run, k, g.x_min, t * (-c_minus - eps), [](double) { return 0.0; });
        auto right = window_sup(run, k, t * (c_plus + eps), g.x_max(), [](double) { return 0.0; });
        curve.t.push_back(t);
        curve.value.push_back(std::max(left.value_or(0.0), right.value_or(0.0)));
    }
    return curve;
}

}  // namespace wavefront

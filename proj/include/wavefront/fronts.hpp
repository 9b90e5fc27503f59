#pragma once

#include <optional>
#include <vector>

#include "wavefront/evolve.hpp"
#include "wavefront/grid.hpp"

namespace wavefront {

enum class Side { Rightmost, Leftmost };

// Largest (rightmost) or smallest (leftmost) x with u(x) >= lambda, refined
// by linear interpolation between the bracketing samples; nullopt when no
// sample reaches lambda.
std::optional<double> level_position(const GridFunction& u, double lambda, Side side);

struct FrontTrace {
    std::vector<double> times;
    std::vector<std::optional<double>> positions;
    double level = 0.0;
    Side side = Side::Rightmost;
};

FrontTrace track_front(const RunRecord& run, double level, Side side);

struct SpeedFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    int n_points = 0;
};

// Least-squares slope of position vs time over [t_lo, t_hi]; needs >= 5
// defined points in the window.
SpeedFit empirical_speed(const FrontTrace& trace, double t_lo, double t_hi);

struct Curve {
    std::vector<double> t;
    std::vector<double> value;
};

// e(t) = sup over x in [t(c_lo+eps), t(c_hi-eps)] of |u(t,x) - r*|; empty
// intervals are skipped.
Curve interval_convergence(const RunRecord& run, double r_star, double c_lo, double c_hi,
                           double eps);
// Same against a reference profile instead of a constant.
Curve interval_convergence(const RunRecord& run, const GridFunction& reference, double c_lo,
                           double c_hi, double eps);

// m(t) = sup of u(t,x) over x <= t(c - eps) (the region swept behind the
// shifting habitat).
Curve tail_decay_behind(const RunRecord& run, double c, double eps);

// m(t) = sup of u(t,x) over x outside t[-c_minus-eps, c_plus+eps].
Curve tail_decay_outside_cone(const RunRecord& run, double c_minus, double c_plus, double eps);

}  // namespace wavefront

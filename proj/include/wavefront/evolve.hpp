#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "wavefront/grid.hpp"
#include "wavefront/kernels.hpp"
#include "wavefront/nonlinearity.hpp"

namespace wavefront {

// u_t = d u_xx - mu u + mu (k * f(. - c t, u(t - tau, .)))
struct ModelA {
    double d = 1.0, mu = 1.0, tau = 0.0, c_shift = 0.0;
    Kernel kernel = Kernel::dirac();
    Reaction f;
};

// u_t = d [k*u - u] - mu u + mu f(x - c t, u(t - tau, x))
struct ModelB {
    double d = 1.0, mu = 1.0, tau = 0.0, c_shift = 0.0;
    Kernel kernel = Kernel::gaussian(1.0);
    Reaction f;
};

// Half line x >= 0, u(t,0) = 0:  u_t = d u_xx - mu u + mu f(u(t - tau, x))
struct ModelC {
    double d = 1.0, mu = 1.0, tau = 0.0;
    Reaction f;  // s-independent
};

// u_t = d u_xx + h(x, u)
struct ModelD {
    double d = 1.0;
    KppReaction h;
};

using ModelSpec = std::variant<ModelA, ModelB, ModelC, ModelD>;

void validate(const ModelSpec& m);
// Habitat drift speed: c_shift for A/B, 0 for C/D.
double shift_speed(const ModelSpec& m);
// r* of the limiting system: u* for A/B/C, u_+* for D.
double upper_state(const ModelSpec& m);

// Ring buffer of the delay window [-tau, 0]; front() is the oldest slice
// (t - tau), back() the current one.
struct DelayHistory {
    std::deque<GridFunction> slices;
    double dt = 0.0;
    double tau() const { return dt * static_cast<double>(slices.size() - 1); }
};

struct State {
    double t = 0.0;
    DelayHistory history;  // single slice when tau = 0
    const GridFunction& current() const { return history.slices.back(); }
    const GridFunction& delayed() const { return history.slices.front(); }
};

// Largest stable explicit step: 0.9 dx^2 / (2d) for A/C/D (Laplacian CFL),
// 0.9/(d + mu Lip(f)) for B, rounded down so tau/dt is an integer.
double stable_dt(const ModelSpec& m, const Grid& g);

// Constant-in-theta history built from one profile.
State make_state(const ModelSpec& m, const GridFunction& phi0, double dt);

// One explicit Euler update; requires dt <= stable_dt and, for tau > 0,
// dt | tau (enforced at state construction).
State step(const ModelSpec& m, State state, double dt);
// Same update without the CFL guard (for deliberately broken operators in
// the hypothesis suite).
State step_unchecked(const ModelSpec& m, State state, double dt);

struct RunRecord {
    Grid grid;
    ExtensionPolicy policy;
    std::vector<double> times;
    std::vector<std::vector<double>> snapshots;
    double min_seen = 0.0;  // over all steps, not just snapshots
    double max_seen = 0.0;
    GridFunction snapshot(size_t i) const {
        return GridFunction(grid, snapshots[i], policy);
    }
    GridFunction final_state() const { return snapshot(snapshots.size() - 1); }
};

using Observer = std::function<void(double t, const GridFunction& u)>;

// Advances to time T with stable_dt, recording every `record_every` time
// units (plus t=0 and t=T). Throws std::runtime_error on blow-up, reporting t.
RunRecord simulate(const ModelSpec& m, const GridFunction& phi0, double T, double record_every,
                   const std::vector<Observer>& observers = {});
RunRecord simulate(const ModelSpec& m, const State& initial, double T, double record_every,
                   const std::vector<Observer>& observers = {});

// Q_{t0} = T_{-c t0} o P[t0, .], acting on single profiles via constant
// history extension. Requires t0 > tau and, when tau > 0, t0 a multiple of tau.
std::function<GridFunction(const GridFunction&)> moving_frame_map(const ModelSpec& m, double c,
                                                                  double t0);

enum class LimitSign { Plus, Minus };

struct LimitFamily {
    LimitSign sign = LimitSign::Plus;
    double t0 = 1.0;
    std::vector<double> ys;
    std::vector<GridFunction> estimates;  // T_{-+y} o Q_{t0} o T_{+-y}[phi]
    std::function<GridFunction(const GridFunction&)> frozen_op;
    GridFunction phi;
};

// Estimates the limiting operators Q_+- by conjugating the frozen-frame
// solution map with translations T_{+-y}. Supports models A, B, D.
LimitFamily limit_operator_estimate(const ModelSpec& m, double t0, const GridFunction& phi,
                                    const std::vector<double>& y_list, LimitSign sign);

}  // namespace wavefront

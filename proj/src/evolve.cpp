#include "wavefront/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavefront {

namespace {

constexpr double kBlowUp = 1e12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double model_tau(const ModelSpec& m) {
    return std::visit(overloaded{[](const ModelA& a) { return a.tau; },
                                 [](const ModelB& b) { return b.tau; },
                                 [](const ModelC& c) { return c.tau; },
                                 [](const ModelD&) { return 0.0; }},
                      m);
}

// Second-order Laplacian with ghost values from the extension policy.
void laplacian(const GridFunction& u, std::vector<double>& lap) {
    const Grid& g = u.grid();
    double inv = 1.0 / (g.dx * g.dx);
    double left = u.left_extension_value(), right = u.right_extension_value();
    for (int i = 0; i < g.n; ++i) {
        double um = i > 0 ? u[i - 1] : left;
        double up = i < g.n - 1 ? u[i + 1] : right;
        lap[static_cast<size_t>(i)] = (um - 2.0 * u[i] + up) * inv;
    }
}

GridFunction euler_update(const ModelSpec& m, const State& st, double dt) {
    const GridFunction& u = st.current();
    const GridFunction& u_del = st.delayed();
    const Grid& g = u.grid();
    std::vector<double> out(static_cast<size_t>(g.n));

    std::visit(
        overloaded{
            [&](const ModelA& a) {
                std::vector<double> lap(static_cast<size_t>(g.n));
                laplacian(u, lap);
                std::vector<double> w(static_cast<size_t>(g.n));
                for (int i = 0; i < g.n; ++i)
                    w[static_cast<size_t>(i)] = a.f.f(g.x(i) - a.c_shift * st.t, u_del[i]);
                GridFunction conv = convolve(a.kernel, u_del.with_values(std::move(w)));
                for (int i = 0; i < g.n; ++i)
                    out[static_cast<size_t>(i)] =
                        u[i] + dt * (a.d * lap[static_cast<size_t>(i)] - a.mu * u[i] + a.mu * conv[i]);
            },
            [&](const ModelB& b) {
                GridFunction ku = convolve(b.kernel, u);
                for (int i = 0; i < g.n; ++i) {
                    double react = b.f.f(g.x(i) - b.c_shift * st.t, u_del[i]);
                    out[static_cast<size_t>(i)] =
                        u[i] + dt * (b.d * (ku[i] - u[i]) - b.mu * u[i] + b.mu * react);
                }
            },
            [&](const ModelC& c) {
                std::vector<double> lap(static_cast<size_t>(g.n));
                laplacian(u, lap);
                for (int i = 0; i < g.n; ++i)
                    out[static_cast<size_t>(i)] =
                        u[i] + dt * (c.d * lap[static_cast<size_t>(i)] - c.mu * u[i] +
                                     c.mu * c.f.f(0.0, u_del[i]));
                out.front() = 0.0;  // hard Dirichlet value
            },
            [&](const ModelD& dd) {
                std::vector<double> lap(static_cast<size_t>(g.n));
                laplacian(u, lap);
                for (int i = 0; i < g.n; ++i)
                    out[static_cast<size_t>(i)] =
                        u[i] + dt * (dd.d * lap[static_cast<size_t>(i)] + dd.h.h(g.x(i), u[i]));
            }},
        m);

    for (double v : out)
        if (!std::isfinite(v) || std::abs(v) > kBlowUp)
            throw std::runtime_error("simulate: blow-up at t=" + std::to_string(st.t + dt));
    return u.with_values(std::move(out));
}

}  // namespace

void validate(const ModelSpec& m) {
    std::visit(overloaded{[](const ModelA& a) {
                              if (!(a.d > 0.0) || !(a.mu > 0.0) || a.tau < 0.0)
                                  throw std::domain_error("model A: need d>0, mu>0, tau>=0");
                          },
                          [](const ModelB& b) {
                              if (!(b.d > 0.0) || !(b.mu > 0.0) || b.tau < 0.0)
                                  throw std::domain_error("model B: need d>0, mu>0, tau>=0");
                              if (b.kernel.is_dirac())
                                  throw std::domain_error(
                                      "model B: kernel must have positive variance (dirac rejected)");
                          },
                          [](const ModelC& c) {
                              if (!(c.d > 0.0) || !(c.mu > 0.0) || c.tau < 0.0)
                                  throw std::domain_error("model C: need d>0, mu>0, tau>=0");
                              for (double u : {0.25, 0.7})
                                  if (std::abs(c.f.f(-7.0, u) - c.f.f(13.0, u)) > 1e-12)
                                      throw std::domain_error("model C: reaction must be s-independent");
                          },
                          [](const ModelD& dd) {
                              if (!(dd.d > 0.0)) throw std::domain_error("model D: need d>0");
                          }},
               m);
}

double shift_speed(const ModelSpec& m) {
    return std::visit(overloaded{[](const ModelA& a) { return a.c_shift; },
                                 [](const ModelB& b) { return b.c_shift; },
                                 [](const ModelC&) { return 0.0; }, [](const ModelD&) { return 0.0; }},
                      m);
}

double upper_state(const ModelSpec& m) {
    return std::visit(overloaded{[](const ModelA& a) { return a.f.u_star; },
                                 [](const ModelB& b) { return b.f.u_star; },
                                 [](const ModelC& c) { return c.f.u_star; },
                                 [](const ModelD& d) { return d.h.u_plus_star; }},
                      m);
}

double stable_dt(const ModelSpec& m, const Grid& g) {
    double raw = std::visit(
        overloaded{[&](const ModelA& a) { return 0.9 * g.dx * g.dx / (2.0 * a.d); },
                   [&](const ModelB& b) { return 0.9 / (b.d + b.mu * b.f.lip_u); },
                   [&](const ModelC& c) { return 0.9 * g.dx * g.dx / (2.0 * c.d); },
                   [&](const ModelD& d) { return 0.9 * g.dx * g.dx / (2.0 * d.d); }},
        m);
    double tau = model_tau(m);
    if (tau > 0.0) {
        int steps = static_cast<int>(std::ceil(tau / raw - 1e-9));
        return tau / steps;
    }
    return raw;
}

State make_state(const ModelSpec& m, const GridFunction& phi0, double dt) {
    double tau = model_tau(m);
    State st;
    st.t = 0.0;
    st.history.dt = dt;
    int m_slices = 1;
    if (tau > 0.0) {
        double ratio = tau / dt;
        int k = static_cast<int>(std::round(ratio));
        if (k < 1 || std::abs(ratio - k) > 1e-9)
            throw std::invalid_argument("make_state: dt must divide tau");
        m_slices = k + 1;
    }
    for (int i = 0; i < m_slices; ++i) st.history.slices.push_back(phi0);
    return st;
}

State step_unchecked(const ModelSpec& m, State state, double dt) {
    GridFunction next = euler_update(m, state, dt);
    state.t += dt;
    state.history.slices.push_back(std::move(next));
    if (state.history.slices.size() > 1) state.history.slices.pop_front();
    return state;
}

State step(const ModelSpec& m, State state, double dt) {
    if (dt > stable_dt(m, state.current().grid()) * (1.0 + 1e-12))
        throw std::invalid_argument("step: dt violates the CFL bound");
    return step_unchecked(m, std::move(state), dt);
}

RunRecord simulate(const ModelSpec& m, const State& initial, double T, double record_every,
                   const std::vector<Observer>& observers) {
    if (!(T >= 0.0)) throw std::domain_error("simulate: need T >= 0");
    const Grid& g = initial.current().grid();
    double dt = initial.history.dt;
    if (dt <= 0.0) dt = stable_dt(m, g);

    RunRecord rec;
    rec.grid = g;
    rec.policy = initial.current().policy();
    rec.min_seen = initial.current().min_value();
    rec.max_seen = initial.current().max_value();

    State st = initial;
    auto record = [&](double t, const GridFunction& u) {
        rec.times.push_back(t);
        rec.snapshots.push_back(u.values());
        for (const auto& obs : observers) obs(t, u);
    };
    record(0.0, st.current());
    if (T == 0.0) return rec;

    long n_steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    long rec_stride =
        record_every > 0.0 ? std::max<long>(1, static_cast<long>(std::round(record_every / dt))) : n_steps;
    for (long k = 1; k <= n_steps; ++k) {
        st = step(m, std::move(st), dt);
        const GridFunction& u = st.current();
        rec.min_seen = std::min(rec.min_seen, u.min_value());
        rec.max_seen = std::max(rec.max_seen, u.max_value());
        if (k % rec_stride == 0 || k == n_steps) record(st.t, u);
    }
    return rec;
}

RunRecord simulate(const ModelSpec& m, const GridFunction& phi0, double T, double record_every,
                   const std::vector<Observer>& observers) {
    validate(m);
    double dt = stable_dt(m, phi0.grid());
    return simulate(m, make_state(m, phi0, dt), T, record_every, observers);
}

std::function<GridFunction(const GridFunction&)> moving_frame_map(const ModelSpec& m, double c,
                                                                  double t0) {
    validate(m);
    double tau = model_tau(m);
    if (!(t0 > tau)) throw std::domain_error("moving_frame_map: need t0 > tau");
    if (tau > 0.0) {
        double ratio = t0 / tau;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw std::domain_error("moving_frame_map: t0 must be a multiple of tau");
    }
    return [m, c, t0, tau](const GridFunction& phi) {
        double dt0 = stable_dt(m, phi.grid());
        double dt = tau > 0.0 ? dt0 : t0 / std::ceil(t0 / dt0 - 1e-9);
        State st = make_state(m, phi, dt);
        long n_steps = static_cast<long>(std::llround(t0 / dt));
        for (long k = 0; k < n_steps; ++k) st = step(m, std::move(st), dt);
        GridFunction result = st.current();
        return c == 0.0 ? result : translate(result, -c * t0);
    };
}

LimitFamily limit_operator_estimate(const ModelSpec& m, double t0, const GridFunction& phi,
                                    const std::vector<double>& y_list, LimitSign sign) {
    if (std::holds_alternative<ModelC>(m))
        throw std::domain_error("limit_operator_estimate: not defined for the half-line model");
    for (size_t i = 0; i < y_list.size(); ++i)
        if (!(y_list[i] > 0.0) || (i > 0 && y_list[i] <= y_list[i - 1]))
            throw std::domain_error("limit_operator_estimate: y_list must be increasing and positive");

    const Grid& g = phi.grid();
    // Support of phi, for the safe-translation precondition.
    double lo = g.x_max(), hi = g.x_min;
    bool nonzero = false;
    for (int i = 0; i < g.n; ++i)
        if (std::abs(phi[i]) > 1e-14) {
            lo = std::min(lo, g.x(i));
            hi = std::max(hi, g.x(i));
            nonzero = true;
        }
    if (!nonzero) lo = hi = 0.0;

    LimitFamily fam;
    fam.sign = sign;
    fam.t0 = t0;
    fam.ys = y_list;
    fam.phi = phi;
    fam.frozen_op = moving_frame_map(m, shift_speed(m), t0);
    for (double y : y_list) {
        double s = sign == LimitSign::Plus ? y : -y;
        if (sign == LimitSign::Plus && hi + y > g.x_max() - 10.0)
            throw std::domain_error("limit_operator_estimate: translated support within 10 units of boundary");
        if (sign == LimitSign::Minus && lo - y < g.x_min + 10.0)
            throw std::domain_error("limit_operator_estimate: translated support within 10 units of boundary");
        fam.estimates.push_back(translate(fam.frozen_op(translate(phi, s)), -s));
    }
    return fam;
}

}  // namespace wavefront

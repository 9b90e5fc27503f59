#include "wavefront/waves.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace wavefront {

GridFunction L_apply(const GridFunction& phi, double c, double d, double mu) {
    if (!(d > 0.0) || !(mu > 0.0)) throw std::domain_error("L_apply: need d, mu > 0");
    if (c == 0.0) return phi;
    const Grid& g = phi.grid();
    const int n = g.n;
    const double beta = (d + mu) / std::abs(c);
    const double z = beta * g.dx;
    const double E = std::exp(-z);
    // Exact integration of the exponential weight against the piecewise-linear
    // phi on one cell: near-node weight A, far-node weight B, A + B = 1 - E.
    const double B = (-std::expm1(-z) - z * E) / z;
    const double A = -std::expm1(-z) - B;

    std::vector<double> out(static_cast<size_t>(n));
    if (c > 0.0) {
        out[static_cast<size_t>(n - 1)] = phi.right_extension_value();
        for (int i = n - 2; i >= 0; --i)
            out[static_cast<size_t>(i)] =
                E * out[static_cast<size_t>(i + 1)] + A * phi[i] + B * phi[i + 1];
        // The grid tail beyond x_max was folded in via the right extension
        // value above; the last node is exactly the tail integral.
    } else {
        out[0] = phi.left_extension_value();
        for (int i = 1; i < n; ++i)
            out[static_cast<size_t>(i)] = E * out[static_cast<size_t>(i - 1)] + A * phi[i] + B * phi[i - 1];
    }
    return phi.with_values(std::move(out));
}

GridFunction K_apply(const GridFunction& phi, double c, const WaveMapParams& p) {
    if (!(p.d > 0.0) || !(p.mu > 0.0) || p.tau < 0.0)
        throw std::domain_error("K_apply: need d, mu > 0 and tau >= 0");
    const Grid& g = phi.grid();
    GridFunction conv = convolve(p.kernel, phi);
    GridFunction shifted = p.tau > 0.0 && c != 0.0 ? translate(phi, -c * p.tau) : phi;
    std::vector<double> out(static_cast<size_t>(g.n));
    double inv = 1.0 / (p.d + p.mu);
    for (int i = 0; i < g.n; ++i)
        out[static_cast<size_t>(i)] = inv * (p.d * conv[i] + p.mu * p.f.f(g.x(i), shifted[i]));
    return phi.with_values(std::move(out));
}

GridFunction nonlocal_wave_map(const GridFunction& phi, double c, const WaveMapParams& p) {
    return L_apply(K_apply(phi, c, p), c, p.d, p.mu);
}

namespace {

double edge_mean(const GridFunction& u, bool left) {
    int k = std::max(1, u.size() / 20);  // outer 5% of samples
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += left ? u[i] : u[u.size() - 1 - i];
    return s / k;
}

}  // namespace

WaveProfile monotone_wave_iterate(const std::function<GridFunction(const GridFunction&)>& map,
                                  const Grid& g, double r_star, double tol, int max_iter,
                                  double c) {
    GridFunction w = GridFunction::constant(g, r_star);
    WaveProfile out;
    out.c = c;
    out.max_iterate_increase = -std::numeric_limits<double>::infinity();

    double diff = std::numeric_limits<double>::infinity();
    int k = 0;
    while (k < max_iter) {
        GridFunction next = map(w);
        ++k;
        double inc = max_excess(next, w);
        out.max_iterate_increase = std::max(out.max_iterate_increase, inc);
        if (k == 1 && inc > 1e-12)
            throw std::invalid_argument("monotone_wave_iterate: first iterate exceeds r*");
        diff = sup_abs_diff(next, w);
        w = std::move(next);
        if (diff < tol) break;
    }
    out.iterations = k;
    out.converged = diff < tol;
    out.residual = sup_abs_diff(map(w), w);
    out.monotone = w.is_nondecreasing(1e-12);
    out.left_value = edge_mean(w, true);
    out.right_value = edge_mean(w, false);
    out.profile = std::move(w);
    return out;
}

ConnectionReport verify_connection(const WaveProfile& w, double r_star, double tol_limits) {
    ConnectionReport rep;
    rep.left_value = w.left_value;
    rep.right_value = w.right_value;
    rep.left_ok = std::abs(w.left_value) <= tol_limits;
    rep.right_ok = std::abs(w.right_value - r_star) <= tol_limits;
    rep.monotone_ok = w.profile.is_nondecreasing(1e-12);
    return rep;
}

namespace {

struct ShootState {
    double w, v;
};

// One RK4 step of W' = V, V' = mu (W - f(W)) / d.
ShootState rk4_step(const ShootState& s, double h, double mu_over_d,
                    const std::function<double(double)>& f) {
    auto rhs = [&](const ShootState& y) {
        return ShootState{y.v, mu_over_d * (y.w - f(y.w))};
    };
    ShootState k1 = rhs(s);
    ShootState k2 = rhs({s.w + 0.5 * h * k1.w, s.v + 0.5 * h * k1.v});
    ShootState k3 = rhs({s.w + 0.5 * h * k2.w, s.v + 0.5 * h * k2.v});
    ShootState k4 = rhs({s.w + h * k3.w, s.v + h * k3.v});
    return {s.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
            s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

}  // namespace

SteadyOracleResult dirichlet_steady_oracle(double d, double mu, const Reaction& f, const Grid& g,
                                           double L, double tol) {
    if (std::abs(g.x_min) > 1e-12) throw std::domain_error("dirichlet_steady_oracle: grid must start at 0");
    for (double u : {0.3, 0.8})
        if (std::abs(f.f(-5.0, u) - f.f(11.0, u)) > 1e-12)
            throw std::domain_error("dirichlet_steady_oracle: reaction must be s-independent");
    if (L > g.x_max() + 1e-9) throw std::domain_error("dirichlet_steady_oracle: L exceeds the grid");

    const double u_star = f.u_star;
    const double mu_over_d = mu / d;
    auto f0 = [&](double u) { return f.f(0.0, u); };
    const double h = g.dx / 4.0;
    const long n_fine = static_cast<long>(std::llround((g.x_max() - g.x_min) / h));

    const double over = u_star * (1.0 + 1e-9);
    // +1 overshoot (W exceeds u*), -1 undershoot (turns back), 0 ran to L.
    auto classify = [&](double sigma) {
        ShootState s{0.0, sigma};
        for (long i = 0; i < n_fine; ++i) {
            s = rk4_step(s, h, mu_over_d, f0);
            if (s.w > over) return +1;
            if (s.v <= 0.0 && s.w < u_star * (1.0 - 1e-9)) return -1;
        }
        return s.w < u_star ? -1 : 0;
    };

    double sig_hi = 10.0 * u_star * std::sqrt(mu_over_d);
    double sig_lo = 1e-12 * sig_hi;
    if (classify(sig_lo) != -1 || classify(sig_hi) != +1)
        throw std::runtime_error("dirichlet_steady_oracle: no bracketing slope in (0, 10 u* sqrt(mu/d))");
    for (int it = 0; it < 120; ++it) {
        double mid = 0.5 * (sig_lo + sig_hi);
        if (mid == sig_lo || mid == sig_hi) break;
        (classify(mid) == +1 ? sig_hi : sig_lo) = mid;
    }
    const double sigma = 0.5 * (sig_lo + sig_hi);

    // Final pass: follow the trajectory to its closest approach to u*, then
    // continue with the exact linearized tail u* - delta e^{-lambda x}.
    double fprime_star = f.df_du(0.0, u_star);
    if (!(fprime_star < 1.0))
        throw std::runtime_error("dirichlet_steady_oracle: u* is not linearly stable (f'(u*) >= 1)");
    const double lambda = std::sqrt(mu_over_d * (1.0 - fprime_star));

    SteadyOracleResult res;
    res.slope0 = sigma;
    res.fine_x.reserve(static_cast<size_t>(n_fine + 1));
    res.fine_w.reserve(static_cast<size_t>(n_fine + 1));
    res.fine_x.push_back(0.0);
    res.fine_w.push_back(0.0);
    ShootState s{0.0, sigma};
    double best_gap = std::numeric_limits<double>::infinity();
    long best_i = -1;
    std::vector<double> traj{0.0};
    for (long i = 1; i <= n_fine; ++i) {
        s = rk4_step(s, h, mu_over_d, f0);
        traj.push_back(s.w);
        double gap = std::abs(u_star - s.w);
        if (gap < best_gap) {
            best_gap = gap;
            best_i = i;
        }
        if (gap > 100.0 * best_gap + 1e-6) break;  // departed the heteroclinic
    }
    if (best_i < 0) throw std::runtime_error("dirichlet_steady_oracle: shooting failed");
    res.glue_x = best_i * h;
    double delta = u_star - traj[static_cast<size_t>(best_i)];
    for (long i = 0; i <= n_fine; ++i) {
        double x = i * h;
        double w = i <= best_i ? traj[static_cast<size_t>(std::min<long>(i, traj.size() - 1))]
                               : u_star - delta * std::exp(-lambda * (x - res.glue_x));
        if (i > 0) {
            res.fine_x.push_back(x);
            res.fine_w.push_back(w);
        }
    }

    std::vector<double> vals(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) vals[static_cast<size_t>(i)] = res.fine_w[static_cast<size_t>(4 * i)];
    res.w = GridFunction(g, std::move(vals), ExtensionPolicy{Extension::Zero, Extension::EdgeConstant});

    if (std::abs(res.w.value_at(L) - u_star) > tol)
        throw std::runtime_error("dirichlet_steady_oracle: W(L) does not match u* within tol");
    return res;
}

GridFunction dirichlet_mild_solution(double d, double mu, double tau, const Reaction& f,
                                     const GridFunction& phi0, double T, double dt) {
    if (!(dt > 0.0) || !(T >= 0.0)) throw std::domain_error("dirichlet_mild_solution: bad T/dt");
    int delay_steps = 0;
    if (tau > 0.0) {
        double ratio = tau / dt;
        delay_steps = static_cast<int>(std::round(ratio));
        if (delay_steps < 1 || std::abs(ratio - delay_steps) > 1e-9)
            throw std::domain_error("dirichlet_mild_solution: dt must divide tau");
    }
    const Grid& g = phi0.grid();
    std::deque<GridFunction> past(static_cast<size_t>(2 * delay_steps + 1), phi0);
    GridFunction v = phi0;

    auto source = [&](const GridFunction& w) {
        std::vector<double> forced(static_cast<size_t>(g.n));
        for (int i = 0; i < g.n; ++i) forced[static_cast<size_t>(i)] = mu * f.f(0.0, w[i]);
        return w.with_values(std::move(forced));
    };
    // Midpoint Duhamel step: v(t+dt) = S(dt)v + dt S(dt/2)[mu f(v(t+dt/2-tau))],
    // with the midpoint state estimated by a half-step predictor. The `past`
    // ring holds half-step states so the delayed midpoint is a stored slice.
    long n = static_cast<long>(std::ceil(T / dt - 1e-9));
    for (long k = 0; k < n; ++k) {
        const GridFunction& del_now = past.front();      // v(t - tau)
        const GridFunction& del_mid = past[1];           // v(t + dt/2 - tau)
        GridFunction v_mid = heat_apply(HeatMode::DirichletHalfLine, 0.0, mu, d, 0.5 * dt, v);
        {
            GridFunction fb = heat_apply(HeatMode::DirichletHalfLine, 0.0, mu, d, 0.25 * dt,
                                         source(del_now));
            std::vector<double> vm(static_cast<size_t>(g.n));
            for (int i = 0; i < g.n; ++i) vm[static_cast<size_t>(i)] = v_mid[i] + 0.5 * dt * fb[i];
            vm.front() = 0.0;
            v_mid = v_mid.with_values(std::move(vm));
        }
        GridFunction a = heat_apply(HeatMode::DirichletHalfLine, 0.0, mu, d, dt, v);
        GridFunction b = heat_apply(HeatMode::DirichletHalfLine, 0.0, mu, d, 0.5 * dt,
                                    source(delay_steps == 0 ? v_mid : del_mid));
        std::vector<double> next(static_cast<size_t>(g.n));
        for (int i = 0; i < g.n; ++i) next[static_cast<size_t>(i)] = a[i] + dt * b[i];
        next.front() = 0.0;
        v = v.with_values(std::move(next));
        past.push_back(v_mid);
        past.push_back(v);
        past.pop_front();
        past.pop_front();
    }
    return v;
}

}  // namespace wavefront

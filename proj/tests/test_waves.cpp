#include <doctest.h>

#include <cmath>

#include "wavefront/hypotheses.hpp"
#include "wavefront/waves.hpp"

using namespace wavefront;

namespace {

// Independent quadrature oracle for L[phi;c] at one point (c > 0): fine
// trapezoid of the exponential weight against the piecewise-linear phi,
// plus the closed-form tail from the right extension value.
double L_oracle_at(const GridFunction& phi, double c, double d, double mu, int i) {
    const Grid& g = phi.grid();
    double beta = (d + mu) / c;
    double x = g.x(i);
    double acc = 0.0;
    int sub = 200;
    for (int j = i; j < g.n - 1; ++j) {
        double h = g.dx / sub;
        for (int q = 0; q <= sub; ++q) {
            double y = g.x(j) + q * h;
            double w = (q == 0 || q == sub) ? 0.5 : 1.0;
            acc += w * h * std::exp(-beta * (y - x)) * phi.value_at(y);
        }
    }
    acc += std::exp(-beta * (g.x_max() - x)) * phi.right_extension_value() / beta;
    return beta * acc;
}

}  // namespace

TEST_CASE("L_apply: constants, c=0 identity, quadrature oracle on a step") {
    Grid g = make_grid(-20.0, 20.0, 0.01);
    GridFunction ones = GridFunction::constant(g, 1.0);
    for (double c : {2.0, 0.5, -1.5}) {
        GridFunction out = L_apply(ones, c, 1.0, 1.0);
        CHECK(sup_abs_diff(out, ones) < 1e-10);
    }
    Lcg rng{3};
    GridFunction u = random_monotone(rng, g, 1.0);
    CHECK(sup_abs_diff(L_apply(u, 0.0, 1.0, 1.0), u) == 0.0);

    // Heaviside step, c > 0, beta = (d+mu)/c = 1: the sampled step follows
    // min(1, e^{beta x}); against the quadrature oracle it is 1e-8 exact.
    GridFunction heav = heaviside_fixture(g, 0.0);
    GridFunction lh = L_apply(heav, 2.0, 1.0, 1.0);
    double beta = 1.0;
    for (int i : {0, 500, 1500, 1999, 2000, 2001, 2500, 3000, 4000}) {
        CHECK(lh[i] == doctest::Approx(L_oracle_at(heav, 2.0, 1.0, 1.0, i)).epsilon(1e-8));
        CHECK(std::abs(lh[i] - std::min(1.0, std::exp(beta * g.x(i)))) < 5e-3);
    }
    CHECK(lh.value_at(5.0) == doctest::Approx(1.0).epsilon(1e-10));

    // mirrored branch: c < 0 turns the step into min(1, e^{-beta x}) mirrored
    std::vector<double> rev(heav.values());
    std::reverse(rev.begin(), rev.end());
    GridFunction heav_rev(g, rev, {Extension::EdgeConstant, Extension::Zero});
    GridFunction lm = L_apply(heav_rev, -2.0, 1.0, 1.0);
    for (int i : {0, 1000, 2000, 3000, 4000})
        CHECK(std::abs(lm[i] - std::min(1.0, std::exp(-beta * g.x(i)))) < 5e-3);
}

TEST_CASE("K_apply and nonlocal_wave_map: fixed points and order") {
    WaveMapParams p;
    p.d = 1.0;
    p.mu = 1.0;
    p.tau = 0.0;
    p.kernel = Kernel::gaussian(1.0);
    p.f = shifted_logistic(ramp_profile(-0.5, 1.0, 10.0), 1.0);
    Grid g = make_grid(-60.0, 60.0, 0.1);

    GridFunction zero = GridFunction::constant(g, 0.0);
    CHECK(sup_abs_diff(K_apply(zero, 1.0, p), zero) < 1e-14);
    CHECK(sup_abs_diff(nonlocal_wave_map(zero, 1.0, p), zero) < 1e-14);

    WaveMapParams hom = p;
    hom.f = logistic_reaction(1.0, 1.0);
    GridFunction ustar = GridFunction::constant(g, 1.0);
    CHECK(sup_abs_diff(K_apply(ustar, 1.0, hom), ustar) < 1e-12);
    CHECK(sup_abs_diff(nonlocal_wave_map(ustar, 1.0, hom), ustar) < 1e-10);

    Lcg rng{21};
    for (int trial = 0; trial < 50; ++trial) {
        GridFunction u = random_monotone(rng, g, 0.6);
        GridFunction extra = random_monotone(rng, g, 0.4);
        std::vector<double> v(u.values());
        for (int i = 0; i < g.n; ++i) v[static_cast<size_t>(i)] += extra[i];
        GridFunction w = u.with_values(std::move(v));
        CHECK(max_excess(K_apply(u, 1.0, p), K_apply(w, 1.0, p)) <= 1e-14);
    }

    // subhomogeneity: Q[kappa phi] >= kappa Q[phi]
    GridFunction u = random_monotone(rng, g, 1.0);
    GridFunction qu = nonlocal_wave_map(u, 1.0, p);
    for (double kappa : {0.25, 0.5, 0.75}) {
        std::vector<double> su(u.values());
        for (double& x : su) x *= kappa;
        GridFunction qku = nonlocal_wave_map(u.with_values(std::move(su)), 1.0, p);
        std::vector<double> kqu(qu.values());
        for (double& x : kqu) x *= kappa;
        CHECK(max_excess(qu.with_values(std::move(kqu)), qku) <= 1e-12);
    }
}

TEST_CASE("monotone_wave_iterate: identity map, forced wave, connection") {
    Grid g = make_grid(-60.0, 60.0, 0.1);
    auto identity = [](const GridFunction& u) { return u; };
    WaveProfile idp = monotone_wave_iterate(identity, g, 1.0, 1e-10, 100);
    CHECK(idp.iterations == 1);
    CHECK(idp.residual == 0.0);
    CHECK(idp.converged);
    CHECK(idp.right_value == doctest::Approx(1.0));

    WaveMapParams p;
    p.d = 1.0;
    p.mu = 1.0;
    p.tau = 0.0;
    p.kernel = Kernel::gaussian(1.0);
    p.f = shifted_logistic(ramp_profile(-0.5, 1.0, 10.0), 1.0);
    auto map = [&](const GridFunction& u) { return nonlocal_wave_map(u, 1.0, p); };
    WaveProfile wp = monotone_wave_iterate(map, g, p.f.u_star, 1e-9, 2000, 1.0);
    CHECK(wp.converged);
    CHECK(wp.residual < 1e-8);
    CHECK(wp.monotone);
    CHECK(wp.max_iterate_increase <= 1e-12);  // iterates pointwise nonincreasing
    ConnectionReport conn = verify_connection(wp, p.f.u_star, 1e-3);
    CHECK(conn.left_ok);
    CHECK(conn.right_ok);
    CHECK(conn.monotone_ok);

    // degenerate profiles fail the right clauses
    WaveProfile flat = idp;
    flat.left_value = 1.0;
    flat.right_value = 1.0;
    CHECK_FALSE(verify_connection(flat, 1.0, 1e-3).left_ok);
    WaveProfile zerop = idp;
    zerop.left_value = 0.0;
    zerop.right_value = 0.0;
    CHECK_FALSE(verify_connection(zerop, 1.0, 1e-3).right_ok);

    // a map whose first iterate exceeds r* violates the precondition
    auto inflate = [](const GridFunction& u) {
        std::vector<double> v(u.values());
        for (double& x : v) x += 1.0;
        return u.with_values(std::move(v));
    };
    CHECK_THROWS_AS(monotone_wave_iterate(inflate, g, 1.0, 1e-8, 10), std::invalid_argument);
}

TEST_CASE("dirichlet_steady_oracle: residual, boundary, monotonicity") {
    Grid g = make_grid(0.0, 80.0, 0.1);
    Reaction f = logistic_reaction(1.0, 1.0);  // mu f - mu u = u(1-u)
    SteadyOracleResult res = dirichlet_steady_oracle(1.0, 1.0, f, g, 70.0, 1e-6);

    CHECK(res.w[0] == 0.0);
    CHECK(res.w.is_nondecreasing(0.0));
    CHECK(res.w.value_at(70.0) == doctest::Approx(1.0).epsilon(1e-9));

    // plug-in ODE residual via 5-point second differences on the fine trace
    double h = 0.025;
    double worst = 0.0;
    for (size_t i = 2; i + 2 < res.fine_x.size(); ++i) {
        double x = res.fine_x[i];
        if (x < 1.0 || x > 69.0) continue;
        double wxx = (-res.fine_w[i - 2] + 16.0 * res.fine_w[i - 1] - 30.0 * res.fine_w[i] +
                      16.0 * res.fine_w[i + 1] - res.fine_w[i + 2]) /
                     (12.0 * h * h);
        double w = res.fine_w[i];
        worst = std::max(worst, std::abs(wxx - w + f.f(0.0, w)));
    }
    CHECK(worst < 1e-6);

    CHECK_THROWS_AS(
        dirichlet_steady_oracle(1.0, 1.0, shifted_logistic(ramp_profile(-0.5, 1.0, 10.0), 1.0), g,
                                70.0, 1e-6),
        std::domain_error);
    Grid off = make_grid(1.0, 40.0, 0.1);
    CHECK_THROWS_AS(dirichlet_steady_oracle(1.0, 1.0, f, off, 30.0, 1e-6), std::domain_error);
}

TEST_CASE("dirichlet mild solution agrees with the model-C stepper") {
    Grid g = make_grid(0.0, 40.0, 0.1);
    Reaction f = logistic_reaction(1.0, 1.0);
    GridFunction phi0 = translate(bump_fixture(BumpKind::XiD, 3.0, g), 15.0);

    ModelSpec c = ModelC{1.0, 1.0, 0.0, f};
    RunRecord rec = simulate(c, phi0, 1.5, 1.5);
    GridFunction mild = dirichlet_mild_solution(1.0, 1.0, 0.0, f, phi0, 1.5, 0.05);
    CHECK(sup_abs_diff(rec.final_state(), mild) < 2e-3);

    // with delay: the ring-buffer stepper against the Duhamel oracle
    ModelSpec cd = ModelC{1.0, 1.0, 0.5, f};
    RunRecord recd = simulate(cd, phi0, 1.5, 1.5);
    GridFunction mildd = dirichlet_mild_solution(1.0, 1.0, 0.5, f, phi0, 1.5, 0.05);
    CHECK(sup_abs_diff(recd.final_state(), mildd) < 5e-3);
}

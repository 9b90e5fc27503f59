#include <doctest.h>

#include <cmath>

#include "wavefront/evolve.hpp"
#include "wavefront/fronts.hpp"
#include "wavefront/speeds.hpp"

using namespace wavefront;

TEST_CASE("closed-form speeds") {
    CHECK(kpp_local_speed(1.0, 1.0, 2.0).value == doctest::Approx(2.0));
    CHECK(kpp_local_speed(0.25, 4.0, 2.0).value == doctest::Approx(2.0));
    auto degenerate = kpp_local_speed(1.0, 1.0, 1.0);
    CHECK(degenerate.value == 0.0);
    CHECK(degenerate.degenerate);

    // diffusion scaling: c*(lambda^2 d) = lambda c*(d)
    double lambda = 1.7;
    CHECK(kpp_local_speed(lambda * lambda * 0.8, 1.3, 1.9).value ==
          doctest::Approx(lambda * kpp_local_speed(0.8, 1.3, 1.9).value).epsilon(1e-14));

    CHECK(kpp_rd_speed(1.0, 1.0) == doctest::Approx(2.0));
    CHECK(kpp_rd_speed(1.0, 0.5) == doctest::Approx(std::sqrt(2.0)));
    CHECK(kpp_rd_speed(2.0, 2.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(kpp_rd_speed(1.0, 0.0), std::domain_error);
}

namespace {

DispersionParams gaussian_params(double tau) {
    return DispersionParams{1.0, 1.0, tau, 2.0, Kernel::gaussian(1.0)};
}

// Independent evaluation of l^pm for the gaussian kernel.
double l_oracle(double c, double rho, double tau, int sign) {
    double sr = sign > 0 ? rho : -rho;
    double denom = c * sr + 2.0;
    if (!(denom > 0.0) || !(rho > 0.0)) return std::numeric_limits<double>::infinity();
    return (std::exp(sr * sr) + 2.0 * std::exp(-sr * c * tau)) / denom;
}

double brute_force_speed(double c, double tau, int sign) {
    double best = std::numeric_limits<double>::infinity();
    double lo = std::log(1e-3), hi = std::log(25.0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double rho = std::exp(lo + (hi - lo) * i / (n - 1));
        double l = l_oracle(c, rho, tau, sign);
        if (std::isfinite(l)) best = std::min(best, std::log(l) / rho);
    }
    return best;
}

}  // namespace

TEST_CASE("dispersion_value matches the formula and flags J_pm") {
    DispersionParams p = gaussian_params(0.0);
    CHECK(dispersion_value(p, 0.0, 1.0, Branch::Plus) ==
          doctest::Approx((std::exp(1.0) + 2.0) / 2.0).epsilon(1e-12));
    CHECK(dispersion_value(p, 0.0, 1.0, Branch::Plus) == doctest::Approx(2.35914).epsilon(1e-5));
    // c=0 reduction: l = (d khat + mu f'(0)) / (d + mu) for any rho
    for (double rho : {0.3, 1.0, 2.2})
        CHECK(dispersion_value(p, 0.0, rho, Branch::Plus) ==
              doctest::Approx((p.kernel.khat(rho) + 2.0) / 2.0).epsilon(1e-12));
    // outside J_pm: d + mu +- c rho <= 0
    CHECK(std::isinf(dispersion_value(p, -3.0, 1.0, Branch::Plus)));
    CHECK(std::isinf(dispersion_value(p, 3.0, 1.0, Branch::Minus)));
}

TEST_CASE("dispersion_speed: symmetry at c=0, brute-force oracle, monotonicity") {
    for (double tau : {0.0, 1.0}) {
        DispersionParams p = gaussian_params(tau);
        auto plus0 = dispersion_speed(p, 0.0, Branch::Plus);
        auto minus0 = dispersion_speed(p, 0.0, Branch::Minus);
        CHECK(plus0.value == doctest::Approx(minus0.value).epsilon(1e-10));

        for (double c : {-1.0, 0.0, 1.0}) {
            CHECK(dispersion_speed(p, c, Branch::Plus).value ==
                  doctest::Approx(brute_force_speed(c, tau, +1)).epsilon(1e-6));
            CHECK(dispersion_speed(p, c, Branch::Minus).value ==
                  doctest::Approx(brute_force_speed(c, tau, -1)).epsilon(1e-6));
        }

        // infimum property: the returned value never exceeds the objective
        auto sm = dispersion_speed(p, 0.7, Branch::Plus);
        for (double rho : {0.01, 0.3, 0.7071, 1.5, 3.0}) {
            double l = dispersion_value(p, 0.7, rho, Branch::Plus);
            if (std::isfinite(l)) CHECK(sm.value <= std::log(l) / rho + 1e-12);
        }

        double prev = std::numeric_limits<double>::infinity();
        for (double c = -2.0; c <= 2.0 + 1e-12; c += 0.5) {
            double v = dispersion_speed(p, c, Branch::Plus).value;
            CHECK(v <= prev + 1e-9);  // c_+*(c) nonincreasing in c
            prev = v;
        }
    }
}

TEST_CASE("min_wave_speed: dual identity, positivity, analytic tangency") {
    DispersionParams p = gaussian_params(0.0);
    WaveSpeedResult ws = min_wave_speed(p);
    CHECK(ws.dual_identity_ok);
    CHECK(std::abs(ws.c_star - ws.c_star_dual) <= 1e-4);

    // tau=0 tangency for the gaussian kernel: c* = sqrt(2) e^{1/2}, rho* = 1/sqrt(2)
    CHECK(ws.c_star == doctest::Approx(std::sqrt(2.0) * std::exp(0.5)).epsilon(1e-5));
    CHECK(ws.argmin_rho == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));

    for (int i = 0; i <= 60; ++i) {
        double c = -3.0 + 0.1 * i;
        double sum = dispersion_speed(p, c, Branch::Plus).value +
                     dispersion_speed(p, c, Branch::Minus).value;
        CHECK(sum > 0.0);
    }

    // sign structure on either side of +-c*
    for (double c : {-ws.c_star + 0.05, 0.0, 1.5})
        CHECK(dispersion_speed(p, c, Branch::Minus).value > 0.0);
    for (double c : {-1.5, 0.0, ws.c_star - 0.05})
        CHECK(dispersion_speed(p, c, Branch::Plus).value > 0.0);

    CHECK_THROWS_AS(validate(DispersionParams{1.0, 1.0, 0.0, 2.0, Kernel::dirac()}),
                    std::domain_error);
}

TEST_CASE("dispersion c* matches the simulated model-B front within 8%") {
    DispersionParams p = gaussian_params(0.0);
    double c_star = min_wave_speed(p).c_star;

    Reaction f = logistic_reaction(1.0, 1.0);  // f'(0) = 2, u* = 1
    ModelSpec b = ModelB{1.0, 1.0, 0.0, 0.0, Kernel::gaussian(1.0), f};
    Grid g = make_grid(-160.0, 160.0, 0.2);
    GridFunction phi0 = bump_fixture(BumpKind::XiD, 2.0, g);
    // dt well below the stability bound: the leading edge of the explicit
    // scheme travels at min_rho ln(1 + dt lambda(rho))/(dt rho), which only
    // approaches the continuum c* for small dt.
    State st = make_state(b, phi0, 0.025);
    RunRecord rec = simulate(b, st, 60.0, 1.0);
    auto fit = empirical_speed(track_front(rec, 0.5, Side::Rightmost), 20.0, 60.0);
    CHECK(fit.slope == doctest::Approx(c_star).epsilon(0.08));
}

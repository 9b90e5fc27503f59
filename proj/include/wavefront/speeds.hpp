#pragma once

#include <vector>

#include "wavefront/kernels.hpp"

namespace wavefront {

// Parameters of the nonlocal-dispersal dispersion relation
// l(c,rho) = [d khat(rho) + mu f'(0) e^{-rho c tau}] / (c rho + d + mu).
struct DispersionParams {
    double d = 1.0;
    double mu = 1.0;
    double tau = 0.0;
    double fprime0 = 2.0;  // > 1
    Kernel kernel = Kernel::gaussian(1.0);
};

void validate(const DispersionParams& p);

enum class Branch { Plus, Minus };

struct LocalSpeed {
    double value = 0.0;
    bool degenerate = false;  // growth rate at zero <= 0
};

// c* = 2 sqrt(mu d (f'(0) - 1)) for the local (dirac, tau=0) case.
LocalSpeed kpp_local_speed(double d, double mu, double fprime0);

// c* = 2 sqrt(d h'(0)) for plain KPP reaction-diffusion tails.
double kpp_rd_speed(double d, double hprime0);

// l^pm(c, rho); +infinity outside J_pm = {rho > 0, d + mu +- c rho > 0}.
double dispersion_value(const DispersionParams& p, double c, double rho, Branch sign);

struct SpeedMin {
    double value = 0.0;
    double argmin_rho = 0.0;
};

// c_pm*(c) = inf_{rho>0} (1/rho) log l^pm(c,rho): 400-point log-spaced scan
// then golden-section refinement to relative tolerance 1e-8.
SpeedMin dispersion_speed(const DispersionParams& p, double c, Branch sign);

struct WaveSpeedResult {
    double c_star = 0.0;       // inf{c : c_+*(c) <= 0}
    double c_star_dual = 0.0;  // -sup{c : c_-*(c) <= 0}
    double argmin_rho = 0.0;
    bool dual_identity_ok = false;  // |c_star - c_star_dual| <= 1e-4
};

// Bisection on the sign of c_+*(c), bracket by doubling from 0, tol 1e-6;
// verifies the dual identity within 1e-4 and reports both values.
WaveSpeedResult min_wave_speed(const DispersionParams& p);

struct SpeedReport {
    std::vector<double> c;
    std::vector<double> c_plus_star;
    std::vector<double> c_minus_star;
    double c_star = 0.0;
    double argmin_rho = 0.0;
};

SpeedReport speed_report(const DispersionParams& p, const std::vector<double>& cs);

}  // namespace wavefront

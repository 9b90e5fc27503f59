#pragma once

#include <functional>

#include "wavefront/evolve.hpp"
#include "wavefront/grid.hpp"
#include "wavefront/kernels.hpp"
#include "wavefront/nonlinearity.hpp"

namespace wavefront {

// L[phi;c](x): for c > 0, ((d+mu)/c) int_x^inf e^{((d+mu)/c)(x-y)} phi(y) dy,
// the identity for c = 0, mirrored for c < 0. Exact for piecewise-linear phi
// (per-cell closed-form integration); tails use the extension values.
GridFunction L_apply(const GridFunction& phi, double c, double d, double mu);

struct WaveMapParams {
    double d = 1.0;
    double mu = 1.0;
    double tau = 0.0;
    Kernel kernel = Kernel::gaussian(1.0);
    Reaction f;
};

// K[phi;c](x) = (d (k*phi)(x) + mu f(x, phi(x + c tau))) / (d + mu).
GridFunction K_apply(const GridFunction& phi, double c, const WaveMapParams& p);

// Q[phi;c] = L[K[phi;c];c], whose fixed points are forced-wave profiles.
GridFunction nonlocal_wave_map(const GridFunction& phi, double c, const WaveMapParams& p);

struct WaveProfile {
    GridFunction profile;
    double c = 0.0;
    double residual = 0.0;  // sup |map(W) - W|
    int iterations = 0;
    bool converged = false;
    double left_value = 0.0;   // mean of the outer 5% of samples
    double right_value = 0.0;
    bool monotone = false;                  // nondecreasing within 1e-12
    double max_iterate_increase = 0.0;      // worst pointwise increase across iterates
};

// Iterates W_0 = r*, W_{k+1} = map(W_k) until sup|W_{k+1}-W_k| < tol or
// max_iter. Requires map(r*) <= r* on the first iterate (throws otherwise);
// hitting max_iter yields a non-converged report, not an exception.
WaveProfile monotone_wave_iterate(const std::function<GridFunction(const GridFunction&)>& map,
                                  const Grid& g, double r_star, double tol, int max_iter,
                                  double c = 0.0);

struct ConnectionReport {
    bool left_ok = false;
    bool right_ok = false;
    bool monotone_ok = false;
    double left_value = 0.0;
    double right_value = 0.0;
    bool pass() const { return left_ok && right_ok && monotone_ok; }
};

// Checks W(-inf) ~ 0, W(+inf) ~ r*, and monotonicity, each within tol_limits.
ConnectionReport verify_connection(const WaveProfile& w, double r_star, double tol_limits);

struct SteadyOracleResult {
    GridFunction w;               // on the requested grid
    std::vector<double> fine_x;   // RK4 trace at step dx/4
    std::vector<double> fine_w;
    double slope0 = 0.0;          // W'(0)
    double glue_x = 0.0;          // start of the linearized tail
};

// Stationary Dirichlet profile: d W'' - mu W + mu f(W) = 0, W(0)=0,
// W(+inf)=u*, by bisection shooting on W'(0) (RK4, step dx/4). Past the
// closest approach to u* the profile continues with the exact linearized
// tail u* - delta e^{-lambda x}, so W(L) matches u* within tol.
SteadyOracleResult dirichlet_steady_oracle(double d, double mu, const Reaction& f, const Grid& g,
                                           double L, double tol);

// Duhamel-form solution of the half-line problem driven by the image-charge
// semigroup (validation oracle for the model C stepper). dt must divide tau
// when tau > 0.
GridFunction dirichlet_mild_solution(double d, double mu, double tau, const Reaction& f,
                                     const GridFunction& phi0, double T, double dt);

}  // namespace wavefront

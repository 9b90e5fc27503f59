#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wavefront/grid.hpp"

namespace wavefront {

// Nondecreasing habitat profile r(s) with limits at +-infinity.
struct ShiftProfile {
    std::function<double(double)> r;
    double r_minus_inf = 0.0;
    double r_plus_inf = 0.0;
};

ShiftProfile constant_profile(double value);
// Linear ramp from r_left (s <= -s_width) to r_right (s >= s_width).
ShiftProfile ramp_profile(double r_left, double r_right, double s_width);
// Piecewise-linear table over strictly increasing s; constant beyond the ends.
ShiftProfile tabulated_profile(std::vector<double> s, std::vector<double> r);

// Checks the ShiftProfile invariants on a sample grid; throws on violation.
void validate(const ShiftProfile& p, int n_samples = 200, double s_probe = 50.0);

// Birth function f(s,u) with the (B1)-(B5) structure.
struct Reaction {
    std::function<double(double, double)> f;      // f(s, u)
    std::function<double(double, double)> df_du;  // d f / d u
    std::function<double(double)> f_minus_inf;
    std::function<double(double)> f_plus_inf;
    double u_star = 1.0;   // fixed point of f_plus_inf
    double fprime0 = 2.0;  // d f_+inf(0)/du
    double lip_u = 1.0;    // sup of df_du over the sampled box
    bool s_independent = false;
};

// mu*f(s,u) - mu*u = u*(r(s) - u), capped above u = (mu + r(s))/2 so that
// f is nondecreasing in u for all u.
Reaction shifted_logistic(const ShiftProfile& r, double mu);
// s-independent special case with constant growth r.
Reaction logistic_reaction(double r, double mu);

// Sample-checks (B3), (B4), (B5); throws std::domain_error naming the clause.
void validate(const Reaction& f, int n_samples = 200, double s_probe = 50.0);

// KPP-type inhomogeneous reaction h(x,u) with limits (D1)-(D3).
struct KppReaction {
    std::function<double(double, double)> h;  // h(x, u)
    std::function<double(double)> h_minus_inf;
    std::function<double(double)> h_plus_inf;
    double u_minus_star = 1.0;
    double u_plus_star = 1.0;
    double M_star = 1.0;  // h(s,u) <= 0 for u >= M_star
    double hprime0_minus = 1.0;
    double hprime0_plus = 1.0;
};

// h(x,u) = u*(r(x) - u); requires r(+-inf) > 0.
KppReaction kpp_reaction(const ShiftProfile& r);

void validate(const KppReaction& h, int n_samples = 200, double s_probe = 50.0);

struct KppCheckResult {
    bool pass = false;
    std::vector<std::string> violations;  // empty iff pass
    double fprime0 = 0.0;                 // central-difference F'(0)
};

// Definition-2.1 KPP property of (F, u_star), sampled on (0, u_max].
KppCheckResult kpp_check(const std::function<double(double)>& F, double u_star, double u_max,
                         int n_samples);

// Capped-logistic minorant f_{gamma,u**} lying below f, built from a fitted
// nondecreasing r(.) and constant K with r(inf) = (f'(0)-1-gamma)/K.
struct LogisticMinorant {
    Reaction reaction;
    std::function<double(double)> r;
    double K = 0.0;
    double r_inf = 0.0;    // = (fprime0 - 1 - gamma)/K
    double r_minus = 0.0;  // fitted left limit, in (-1/K, 0]
};

LogisticMinorant logistic_minorant(const Reaction& f, double gamma, double u_double_star,
                                 double s_probe = 50.0, int n_s = 201, int n_u = 200);

// Quadratic minorants R_pm(s,u) = K_pm (r_pm(s) u - u^2) with
// h(s,u) >= max(R_+(s,u), R_-(-s,u)) and r_pm(s) = k*/K_pm <= 0 for s <= 0.
struct QuadraticMinorant {
    std::function<double(double, double)> R_plus;
    std::function<double(double, double)> R_minus;
    std::function<double(double)> r_plus;
    std::function<double(double)> r_minus;
    double K_plus = 0.0;
    double K_minus = 0.0;
    double k_star = 0.0;
    double r_plus_inf = 0.0;   // = (h'_+inf(0) - gamma)/K_plus
    double r_minus_inf = 0.0;  // = (h'_-inf(0) - gamma)/K_minus
};

QuadraticMinorant quadratic_minorant(const KppReaction& h, double gamma, double M,
                                     double s_probe = 50.0, int n_s = 201, int n_u = 200);

enum class BumpKind { H, XiD };

// Compactly supported trapezoid fixtures: h (plateau [-1,1],
// support [-2,2]) and xi_d (plateau [-d,d], support [-d-1,d+1]); zero
// extension on both sides.
GridFunction bump_fixture(BumpKind kind, double d, const Grid& g);

// Step fixture: 0 left of x0, 1 right of it, midpoint value 1/2 at an
// on-grid jump; zero extension left, edge-constant right.
GridFunction heaviside_fixture(const Grid& g, double x0);

}  // namespace wavefront

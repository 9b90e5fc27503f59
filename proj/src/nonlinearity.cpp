#include "wavefront/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wavefront {

namespace {

double central_diff(const std::function<double(double)>& F, double x, double h) {
    double a = F(x + h), b = F(x - h);
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::runtime_error("kpp_check: non-finite F value near " + std::to_string(x));
    return (a - b) / (2.0 * h);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
    return v;
}

// Piecewise-linear interpolation over a shared, monotone sample vector.
double interp_samples(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t j = static_cast<size_t>(it - xs.begin());
    double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return (1.0 - t) * ys[j - 1] + t * ys[j];
}

}  // namespace

ShiftProfile constant_profile(double value) {
    return ShiftProfile{[value](double) { return value; }, value, value};
}

ShiftProfile ramp_profile(double r_left, double r_right, double s_width) {
    if (!(s_width > 0.0)) throw std::domain_error("ramp_profile: s_width must be > 0");
    if (r_right < r_left) throw std::domain_error("ramp_profile: profile must be nondecreasing");
    auto r = [=](double s) {
        if (s <= -s_width) return r_left;
        if (s >= s_width) return r_right;
        return r_left + (r_right - r_left) * (s + s_width) / (2.0 * s_width);
    };
    return ShiftProfile{r, r_left, r_right};
}

ShiftProfile tabulated_profile(std::vector<double> s, std::vector<double> r) {
    if (s.size() != r.size() || s.size() < 2)
        throw std::domain_error("tabulated_profile: need matching s/r tables of size >= 2");
    for (size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1])) throw std::domain_error("tabulated_profile: s must be strictly increasing");
        if (r[i] < r[i - 1]) throw std::domain_error("tabulated_profile: r must be nondecreasing");
    }
    double lo = r.front(), hi = r.back();
    auto fn = [s = std::move(s), r = std::move(r)](double x) { return interp_samples(s, r, x); };
    return ShiftProfile{fn, lo, hi};
}

void validate(const ShiftProfile& p, int n_samples, double s_probe) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double s : linspace(-s_probe, s_probe, n_samples)) {
        double v = p.r(s);
        if (!std::isfinite(v)) throw std::domain_error("shift_profile: non-finite value");
        if (v < prev - 1e-12) throw std::domain_error("shift_profile: not nondecreasing at s=" + std::to_string(s));
        prev = v;
    }
    if (std::abs(p.r(-s_probe) - p.r_minus_inf) > 1e-8 || std::abs(p.r(s_probe) - p.r_plus_inf) > 1e-8)
        throw std::domain_error("shift_profile: limits not attained at s = +-S_probe");
}

Reaction shifted_logistic(const ShiftProfile& profile, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("shifted_logistic: mu must be > 0");
    if (profile.r_minus_inf <= -mu)
        throw std::domain_error("shifted_logistic: need r(-inf) > -mu for nonnegativity");
    if (!(profile.r_plus_inf > 0.0))
        throw std::domain_error("shifted_logistic: need r(+inf) > 0 for a positive fixed point");
    auto r = profile.r;
    auto f = [r, mu](double s, double u) {
        double rs = r(s);
        double cap = 0.5 * (mu + rs);
        if (u >= cap) return cap * cap / mu;
        return u + u * (rs - u) / mu;
    };
    auto df = [r, mu](double s, double u) {
        double rs = r(s);
        if (u >= 0.5 * (mu + rs)) return 0.0;
        return 1.0 + (rs - 2.0 * u) / mu;
    };
    auto at_limit = [mu](double rs) {
        return [rs, mu](double u) {
            double cap = 0.5 * (mu + rs);
            if (u >= cap) return cap * cap / mu;
            return u + u * (rs - u) / mu;
        };
    };
    double rp = profile.r_plus_inf;
    double u_star = rp <= mu ? rp : 0.25 * (mu + rp) * (mu + rp) / mu;
    Reaction out;
    out.f = f;
    out.df_du = df;
    out.f_minus_inf = at_limit(profile.r_minus_inf);
    out.f_plus_inf = at_limit(rp);
    out.u_star = u_star;
    out.fprime0 = 1.0 + rp / mu;
    out.lip_u = 1.0 + rp / mu;
    out.s_independent = profile.r_minus_inf == profile.r_plus_inf;
    return out;
}

Reaction logistic_reaction(double r, double mu) { return shifted_logistic(constant_profile(r), mu); }

void validate(const Reaction& f, int n_samples, double s_probe) {
    double u_hi = 2.0 * f.u_star;
    auto ss = linspace(-s_probe, s_probe, n_samples);
    auto us = linspace(0.0, u_hi, n_samples);
    // (B3) joint monotonicity along both axes.
    for (double u : us) {
        double prev = -std::numeric_limits<double>::infinity();
        for (double s : ss) {
            double v = f.f(s, u);
            if (v < prev - 1e-12) throw std::domain_error("(B3): f decreasing in s at u=" + std::to_string(u));
            prev = v;
        }
    }
    for (double s : {-s_probe, 0.0, s_probe}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (double u : us) {
            double v = f.f(s, u);
            if (v < prev - 1e-12) throw std::domain_error("(B3): f decreasing in u at s=" + std::to_string(s));
            prev = v;
        }
    }
    if (std::abs(f.f_minus_inf(0.0)) > 1e-12) throw std::domain_error("(B5): f_-inf(0) != 0");
    for (double u : us)
        if (u > 0.0 && !(f.f_minus_inf(u) < u + 1e-12)) throw std::domain_error("(B5): f_-inf(u) >= u at u=" + std::to_string(u));
    auto F = [&](double u) { return f.f_plus_inf(u) - u; };
    auto kpp = kpp_check(F, f.u_star, u_hi, std::max(10, n_samples));
    if (!kpp.pass) throw std::domain_error("(B4): " + kpp.violations.front());
}

KppReaction kpp_reaction(const ShiftProfile& profile) {
    if (!(profile.r_minus_inf > 0.0) || !(profile.r_plus_inf > 0.0))
        throw std::domain_error("kpp_reaction: limits of r must be positive");
    auto r = profile.r;
    KppReaction out;
    out.h = [r](double x, double u) { return u * (r(x) - u); };
    out.h_minus_inf = [v = profile.r_minus_inf](double u) { return u * (v - u); };
    out.h_plus_inf = [v = profile.r_plus_inf](double u) { return u * (v - u); };
    out.u_minus_star = profile.r_minus_inf;
    out.u_plus_star = profile.r_plus_inf;
    out.M_star = std::max(profile.r_minus_inf, profile.r_plus_inf);
    out.hprime0_minus = profile.r_minus_inf;
    out.hprime0_plus = profile.r_plus_inf;
    return out;
}

void validate(const KppReaction& h, int n_samples, double s_probe) {
    auto ss = linspace(-s_probe, s_probe, n_samples);
    for (double s : ss) {
        if (std::abs(h.h(s, 0.0)) > 1e-12) throw std::domain_error("(D1): h(s,0) != 0 at s=" + std::to_string(s));
        for (double u : linspace(h.M_star, 2.0 * h.M_star, 8))
            if (h.h(s, u) > 1e-12) throw std::domain_error("(D2): h(s,u) > 0 at u >= M_star");
    }
    auto Fm = [&](double u) { return h.h_minus_inf(u); };
    auto Fp = [&](double u) { return h.h_plus_inf(u); };
    if (!kpp_check(Fm, h.u_minus_star, 2.0 * h.u_minus_star, n_samples).pass)
        throw std::domain_error("(D3): h_-inf is not KPP w.r.t. u_-*");
    if (!kpp_check(Fp, h.u_plus_star, 2.0 * h.u_plus_star, n_samples).pass)
        throw std::domain_error("(D3): h_+inf is not KPP w.r.t. u_+*");
}

KppCheckResult kpp_check(const std::function<double(double)>& F, double u_star, double u_max,
                         int n_samples) {
    if (!(u_star > 0.0) || !(u_max > u_star) || n_samples < 10)
        throw std::domain_error("kpp_check: need u_star > 0, u_max > u_star, n_samples >= 10");
    KppCheckResult res;
    auto value = [&](double u) {
        double v = F(u);
        if (!std::isfinite(v)) throw std::runtime_error("kpp_check: non-finite F(" + std::to_string(u) + ")");
        return v;
    };
    double scale = std::max(1.0, std::abs(value(u_star / 2)));
    double tol = 1e-9 * scale;
    res.fprime0 = central_diff(F, 0.0, 1e-6 * u_star);
    if (std::abs(value(0.0)) > tol) res.violations.push_back("(i) F(0) != 0");
    if (std::abs(value(u_star)) > tol) res.violations.push_back("(i) F(u*) != 0");
    if (!(res.fprime0 > 0.0)) res.violations.push_back("(i) F'(0) <= 0");
    bool bad_sign = false, bad_linear = false;
    double sign_at = 0.0, linear_at = 0.0;
    for (int i = 1; i <= n_samples; ++i) {
        double u = u_max * i / n_samples;
        if (std::abs(u - u_star) < 1e-9 * u_star) continue;
        double v = value(u);
        if (!bad_sign && !(v * (u - u_star) < 0.0)) { bad_sign = true; sign_at = u; }
        if (!bad_linear && !(v < res.fprime0 * u)) { bad_linear = true; linear_at = u; }
    }
    if (bad_sign) res.violations.push_back("(ii) F(u)(u-u*) >= 0 at u=" + std::to_string(sign_at));
    if (bad_linear) res.violations.push_back("(iii) F(u) >= F'(0)u at u=" + std::to_string(linear_at));
    res.pass = res.violations.empty();
    return res;
}

namespace {

// Capped-logistic branch formula for a frozen r value.
double capped_logistic_value(double K, double rs, double u) {
    double cap = 0.5 * (1.0 + K * rs) / K;
    if (u >= cap) return 0.25 * (1.0 + K * rs) * (1.0 + K * rs) / K;
    return u + K * u * (rs - u);
}

}  // namespace

LogisticMinorant logistic_minorant(const Reaction& f, double gamma, double u_double_star,
                                 double s_probe, int n_s, int n_u) {
    if (!(gamma > 0.0) || !(gamma < f.fprime0 - 1.0))
        throw std::domain_error("logistic_minorant: need 0 < gamma < f'(0) - 1");
    if (u_double_star < f.u_star)
        throw std::domain_error("logistic_minorant: need u** >= u*");

    auto ss = linspace(-s_probe, s_probe, n_s);
    std::vector<double> us(static_cast<size_t>(n_u));
    for (int j = 1; j <= n_u; ++j) us[static_cast<size_t>(j - 1)] = u_double_star * j / n_u;

    double best_K = 0.0;
    std::vector<double> best_r;
    double best_rminus = 0.0;
    double worst_s = 0.0, worst_u = 0.0;

    for (int k = 0; k <= 40; ++k) {
        double K = f.lip_u / std::pow(2.0, k);
        double r_target = (f.fprime0 - 1.0 - gamma) / K;

        // The cap value of the piecewise formula depends on r itself, so the
        // largest admissible r per s is found by bisection (f_min is
        // increasing in r on both branches).
        auto admissible = [&](const std::function<double(double)>& fu, double r) {
            for (double u : us)
                if (fu(u) < capped_logistic_value(K, r, u) - 1e-13) return false;
            return true;
        };
        auto largest_r = [&](const std::function<double(double)>& fu) {
            double lo = -1.0 / K + 1e-12 / K;
            if (!admissible(fu, lo)) return -1.0 / K;  // infeasible marker
            if (admissible(fu, r_target)) return r_target;
            double hi = r_target;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (admissible(fu, mid) ? lo : hi) = mid;
            }
            return lo;
        };

        std::vector<double> rmax(ss.size());
        for (size_t i = 0; i < ss.size(); ++i)
            rmax[i] = largest_r([&](double u) { return f.f(ss[i], u); });
        // Nondecreasing envelope below rmax (running min from the right).
        std::vector<double> rho(rmax);
        for (size_t i = rho.size() - 1; i-- > 0;) rho[i] = std::min(rho[i], rho[i + 1]);

        bool plus_ok = admissible([&](double u) { return f.f_plus_inf(u); }, r_target);

        if (rho.back() < r_target || !plus_ok) {
            size_t iw = static_cast<size_t>(std::min_element(rmax.begin(), rmax.end()) - rmax.begin());
            worst_s = ss[iw];
            worst_u = us.front();
            continue;
        }
        std::vector<double> t(rho.size());
        for (size_t i = 0; i < rho.size(); ++i) t[i] = std::min(rho[i], r_target);
        t.front() = std::min(t.front(), 0.0);  // the left limit must stay <= 0
        if (!(t.front() > -1.0 / K)) {
            worst_s = ss.front();
            worst_u = us.front();
            continue;
        }
        // Lag the fitted values by one node: on [s_i, s_{i+1}] the profile
        // stays below t_i, which (B3) makes admissible on the whole interval,
        // so the domination holds off the sample nodes too.
        std::vector<double> lagged(t.size() + 1);
        lagged[0] = t[0];
        for (size_t i = 0; i < t.size(); ++i) lagged[i + 1] = t[i];
        best_K = K;
        best_r = std::move(lagged);
        best_rminus = best_r.front();
        break;
    }
    if (best_K == 0.0) {
        std::ostringstream msg;
        msg << "logistic_minorant: no admissible (r,K); worst violation near (s,u)=(" << worst_s
            << "," << worst_u << ")";
        throw std::runtime_error(msg.str());
    }

    const double K = best_K;
    const double r_inf = (f.fprime0 - 1.0 - gamma) / K;
    std::vector<double> nodes(ss);
    nodes.push_back(s_probe + (ss[1] - ss[0]));
    auto r_fn = [nodes = std::move(nodes), table = std::move(best_r)](double s) {
        return interp_samples(nodes, table, s);
    };
    auto piecewise = [K](double rs, double u) { return capped_logistic_value(K, rs, u); };
    Reaction minorant;
    minorant.f = [r_fn, piecewise](double s, double u) { return piecewise(r_fn(s), u); };
    minorant.df_du = [r_fn, K](double s, double u) {
        double rs = r_fn(s);
        if (u >= 0.5 * (1.0 + K * rs) / K) return 0.0;
        return 1.0 + K * (rs - 2.0 * u);
    };
    minorant.f_minus_inf = [piecewise, rm = best_rminus](double u) { return piecewise(rm, u); };
    minorant.f_plus_inf = [piecewise, r_inf](double u) { return piecewise(r_inf, u); };
    minorant.u_star = K * r_inf <= 1.0 ? r_inf : 0.25 * (1.0 + K * r_inf) * (1.0 + K * r_inf) / K;
    minorant.fprime0 = 1.0 + K * r_inf;  // = fprime0 - gamma
    minorant.lip_u = 1.0 + K * r_inf;
    minorant.s_independent = false;

    validate(minorant, 64, s_probe);

    LogisticMinorant out;
    out.reaction = std::move(minorant);
    out.r = r_fn;
    out.K = K;
    out.r_inf = r_inf;
    out.r_minus = best_rminus;
    return out;
}

QuadraticMinorant quadratic_minorant(const KppReaction& h, double gamma, double M, double s_probe,
                                     int n_s, int n_u) {
    if (!(gamma > 0.0) || !(gamma < std::min(h.hprime0_minus, h.hprime0_plus)))
        throw std::domain_error("quadratic_minorant: need 0 < gamma < min h'_{+-}(0)");
    if (M < h.M_star) throw std::domain_error("quadratic_minorant: need M >= M*");

    auto ss = linspace(-s_probe, s_probe, n_s);
    std::vector<double> us(static_cast<size_t>(n_u));
    for (int j = 1; j <= n_u; ++j) us[static_cast<size_t>(j - 1)] = M * j / n_u;

    // Sampled Lipschitz bound of h in u, shared K-candidate ladder.
    double lip = 0.0;
    for (double s : {-s_probe, 0.0, s_probe})
        for (size_t j = 1; j < us.size(); ++j)
            lip = std::max(lip, std::abs(h.h(s, us[j]) - h.h(s, us[j - 1])) / (us[j] - us[j - 1]));
    if (lip <= 0.0) lip = 1.0;

    struct Fit {
        double K = 0.0;
        std::vector<double> rho;  // capped nondecreasing envelope over ss
        double target = 0.0;
    };
    // sign=+1 fits h(s,u); sign=-1 fits h(-s,u) (the R_-( -s, u) branch).
    auto fit_branch = [&](double hprime0, int sign) {
        Fit fit;
        for (int k = 0; k <= 40; ++k) {
            double K = lip / std::pow(2.0, k);
            double target = (hprime0 - gamma) / K;
            std::vector<double> rmax(ss.size());
            for (size_t i = 0; i < ss.size(); ++i) {
                double m = std::numeric_limits<double>::infinity();
                for (double u : us) m = std::min(m, h.h(sign * ss[i], u) / (K * u) + u);
                rmax[i] = m;
            }
            std::vector<double> rho(rmax);
            for (size_t i = rho.size() - 1; i-- > 0;) rho[i] = std::min(rho[i], rho[i + 1]);
            if (rho.back() < target) continue;
            for (double& v : rho) v = std::min(v, target);
            fit = Fit{K, std::move(rho), target};
            break;
        }
        return fit;
    };

    Fit plus = fit_branch(h.hprime0_plus, +1);
    Fit minus = fit_branch(h.hprime0_minus, -1);
    if (plus.K == 0.0 || minus.K == 0.0)
        throw std::runtime_error("quadratic_minorant: no admissible (r,K) on samples");

    double k_star = std::min({0.0, plus.K * plus.rho.front(), minus.K * minus.rho.front()});

    auto make_r = [&](const Fit& fit) {
        double floor_v = k_star / fit.K;
        return [ss, rho = fit.rho, floor_v, target = fit.target, s_probe](double s) {
            if (s <= 0.0) return floor_v;
            if (s >= s_probe) return target;
            return std::min(interp_samples(ss, rho, s), target);
        };
    };
    auto r_plus = make_r(plus);
    auto r_minus = make_r(minus);

    // Verify domination on the sample set before handing the pair out.
    for (double s : ss)
        for (double u : us) {
            double lhs = h.h(s, u);
            double rp = plus.K * (r_plus(s) * u - u * u);
            double rm = minus.K * (r_minus(-s) * u - u * u);
            if (lhs - std::max(rp, rm) < -1e-12)
                throw std::runtime_error("quadratic_minorant: minorant inequality violated at s=" +
                                         std::to_string(s) + ", u=" + std::to_string(u));
        }

    QuadraticMinorant out;
    out.K_plus = plus.K;
    out.K_minus = minus.K;
    out.k_star = k_star;
    out.r_plus_inf = plus.target;
    out.r_minus_inf = minus.target;
    out.r_plus = r_plus;
    out.r_minus = r_minus;
    out.R_plus = [K = plus.K, r_plus](double s, double u) { return K * (r_plus(s) * u - u * u); };
    out.R_minus = [K = minus.K, r_minus](double s, double u) { return K * (r_minus(s) * u - u * u); };
    return out;
}

GridFunction bump_fixture(BumpKind kind, double d, const Grid& g) {
    double plateau = kind == BumpKind::H ? 1.0 : d;
    if (kind == BumpKind::XiD && !(d > 0.0)) throw std::domain_error("bump_fixture: need d > 0");
    std::vector<double> v(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i), ax = std::abs(x);
        double val = 0.0;
        if (ax <= plateau) val = 1.0;
        else if (ax <= plateau + 1.0) val = plateau + 1.0 - ax;
        v[static_cast<size_t>(i)] = val;
    }
    return GridFunction(g, std::move(v), ExtensionPolicy{Extension::Zero, Extension::Zero});
}

GridFunction heaviside_fixture(const Grid& g, double x0) {
    std::vector<double> v(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        if (std::abs(x - x0) < 1e-12 * std::max(1.0, std::abs(x0))) v[static_cast<size_t>(i)] = 0.5;
        else v[static_cast<size_t>(i)] = x < x0 ? 0.0 : 1.0;
    }
    return GridFunction(g, std::move(v), ExtensionPolicy{Extension::Zero, Extension::EdgeConstant});
}

}  // namespace wavefront

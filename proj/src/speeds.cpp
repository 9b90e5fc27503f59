#include "wavefront/speeds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wavefront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1/rho) log l^pm(c, rho), +inf where l is off J_pm or overflows.
double objective(const DispersionParams& p, double c, double rho, Branch sign) {
    double l = dispersion_value(p, c, rho, sign);
    if (!std::isfinite(l)) return kInf;
    return std::log(l) / rho;
}

// Largest rho with l finite: exits J_pm and exponent overflow both capped.
double rho_ceiling(const DispersionParams& p, double c, Branch sign) {
    double rho_max = 1e3;
    double signed_c = sign == Branch::Plus ? c : -c;
    if (signed_c < 0.0) rho_max = std::min(rho_max, (p.d + p.mu) / (-signed_c) * (1.0 - 1e-9));
    if (p.kernel.kind() == KernelKind::Gaussian)
        rho_max = std::min(rho_max, std::sqrt(690.0 / p.kernel.alpha()));
    if (p.tau > 0.0 && c != 0.0) rho_max = std::min(rho_max, 690.0 / (std::abs(c) * p.tau));
    return rho_max;
}

}  // namespace

void validate(const DispersionParams& p) {
    if (!(p.d > 0.0) || !(p.mu > 0.0) || p.tau < 0.0)
        throw std::domain_error("dispersion: need d>0, mu>0, tau>=0");
    if (!(p.fprime0 > 1.0)) throw std::domain_error("dispersion: need f'(0) > 1");
    if (p.kernel.is_dirac())
        throw std::domain_error("dispersion: dirac kernel rejected (dispersal term vanishes)");
}

LocalSpeed kpp_local_speed(double d, double mu, double fprime0) {
    if (!(d > 0.0) || !(mu > 0.0)) throw std::domain_error("kpp_local_speed: need d, mu > 0");
    if (fprime0 <= 1.0) return {0.0, true};
    return {2.0 * std::sqrt(mu * d * (fprime0 - 1.0)), false};
}

double kpp_rd_speed(double d, double hprime0) {
    if (!(d > 0.0)) throw std::domain_error("kpp_rd_speed: need d > 0");
    if (!(hprime0 > 0.0)) throw std::domain_error("kpp_rd_speed: need h'(0) > 0");
    return 2.0 * std::sqrt(d * hprime0);
}

double dispersion_value(const DispersionParams& p, double c, double rho, Branch sign) {
    if (!(rho > 0.0)) return kInf;
    double srho = sign == Branch::Plus ? rho : -rho;
    double denom = c * srho + p.d + p.mu;
    if (!(denom > 0.0)) return kInf;  // outside J_pm
    double exponent = -srho * c * p.tau;
    if (exponent > 690.0) return kInf;
    double khat;
    try {
        khat = p.kernel.khat(srho);
    } catch (const std::range_error&) {
        return kInf;
    }
    return (p.d * khat + p.mu * p.fprime0 * std::exp(exponent)) / denom;
}

SpeedMin dispersion_speed(const DispersionParams& p, double c, Branch sign) {
    validate(p);
    const double rho_lo = 1e-3;
    const double rho_hi = rho_ceiling(p, c, sign);
    if (!(rho_hi > rho_lo)) throw std::range_error("dispersion_speed: empty rho range");

    const int n_scan = 400;
    double best = kInf;
    int best_i = -1;
    double log_lo = std::log(rho_lo), log_hi = std::log(rho_hi);
    auto rho_of = [&](int i) { return std::exp(log_lo + (log_hi - log_lo) * i / (n_scan - 1)); };
    for (int i = 0; i < n_scan; ++i) {
        double v = objective(p, c, rho_of(i), sign);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    if (!std::isfinite(best)) throw std::range_error("dispersion_speed: no finite bracket found");

    // Golden-section refinement inside the bracketing scan cells.
    double a = rho_of(std::max(0, best_i - 1));
    double b = rho_of(std::min(n_scan - 1, best_i + 1));
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(p, c, x1, sign), f2 = objective(p, c, x2, sign);
    while ((b - a) > 1e-8 * std::max(1.0, std::abs(a))) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(p, c, x1, sign);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(p, c, x2, sign);
        }
    }
    double rho = f1 <= f2 ? x1 : x2;
    double val = std::min({best, f1, f2});
    return {val, rho};
}

namespace {

// Finds c with value(c) crossing zero: value decreasing in `dir`-ward c.
double bisect_zero(const std::function<double(double)>& value, double dir) {
    double a = 0.0, fa = value(0.0);
    if (fa <= 0.0) {
        // Bracket on the other side: walk backwards until positive.
        double b = 0.0;
        double stepw = 1.0;
        while (fa <= 0.0) {
            b = a;
            a -= dir * stepw;
            stepw *= 2.0;
            if (std::abs(a) > 1e3) throw std::range_error("min_wave_speed: no sign change up to |c|=1e3");
            fa = value(a);
        }
        double lo = a, hi = b;  // value(lo) > 0 >= value(hi)
        for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-6; ++it) {
            double mid = 0.5 * (lo + hi);
            (value(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    double b = dir, stepw = 1.0;
    while (value(b) > 0.0) {
        b += dir * stepw;
        stepw *= 2.0;
        if (std::abs(b) > 1e3) throw std::range_error("min_wave_speed: no sign change up to |c|=1e3");
    }
    double lo = a, hi = b;  // value(lo) > 0 >= value(hi)
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-6; ++it) {
        double mid = 0.5 * (lo + hi);
        (value(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

WaveSpeedResult min_wave_speed(const DispersionParams& p) {
    validate(p);
    auto plus = [&](double c) { return dispersion_speed(p, c, Branch::Plus).value; };
    auto minus = [&](double c) { return dispersion_speed(p, c, Branch::Minus).value; };

    WaveSpeedResult res;
    res.c_star = bisect_zero(plus, +1.0);
    res.c_star_dual = -bisect_zero(minus, -1.0);
    res.argmin_rho = dispersion_speed(p, res.c_star, Branch::Plus).argmin_rho;
    res.dual_identity_ok = std::abs(res.c_star - res.c_star_dual) <= 1e-4;
    return res;
}

SpeedReport speed_report(const DispersionParams& p, const std::vector<double>& cs) {
    SpeedReport rep;
    auto ws = min_wave_speed(p);
    rep.c_star = ws.c_star;
    rep.argmin_rho = ws.argmin_rho;
    for (double c : cs) {
        rep.c.push_back(c);
        rep.c_plus_star.push_back(dispersion_speed(p, c, Branch::Plus).value);
        rep.c_minus_star.push_back(dispersion_speed(p, c, Branch::Minus).value);
    }
    return rep;
}

}  // namespace wavefront

#include "wavefront/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavefront {

GridFunction random_monotone(Lcg& rng, const Grid& g, double r_star) {
    // Flat in the outer deciles so the extension policy continues the
    // profile exactly and boundary effects stay out of the order checks.
    std::vector<double> v(static_cast<size_t>(g.n));
    double acc = 0.0;
    int lo = g.n / 10, hi = 9 * g.n / 10;
    for (int i = 0; i < g.n; ++i) {
        if (i >= lo && i < hi) acc += rng.uniform01();
        v[static_cast<size_t>(i)] = acc;
    }
    double scale = r_star / acc;
    for (double& x : v) x *= scale;
    return GridFunction(g, std::move(v), ExtensionPolicy{Extension::Zero, Extension::EdgeConstant});
}

GridFunction random_bump(Lcg& rng, const Grid& g, double r_star) {
    std::vector<double> v(static_cast<size_t>(g.n), 0.0);
    int lo = g.n / 4, hi = 3 * g.n / 4;
    for (int i = lo; i <= hi; ++i) v[static_cast<size_t>(i)] = r_star * rng.uniform01();
    return GridFunction(g, std::move(v), ExtensionPolicy{Extension::Zero, Extension::Zero});
}

namespace {

// Records the worst pointwise excess of `bad` over `good` beyond the slack.
void record(CheckReport& rep, const GridFunction& bad, const GridFunction& good, int sample,
            double parameter) {
    const Grid& g = bad.grid();
    double worst = -std::numeric_limits<double>::infinity();
    double worst_x = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double e = bad[i] - good[i] - kOrderSlack;
        if (e > worst) {
            worst = e;
            worst_x = g.x(i);
        }
    }
    rep.max_violation = std::max(rep.max_violation, worst);
    if (worst > 0.0) rep.witnesses.push_back({sample, parameter, worst_x, worst});
    ++rep.samples_tested;
}

}  // namespace

CheckReport check_translation_comparison(const OperatorUnderTest& o,
                                         const std::vector<GridFunction>& phis,
                                         const std::vector<double>& ys) {
    CheckReport rep;
    rep.name = "translation_comparison_A1";
    rep.label = o.label;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < phis.size(); ++a) {
        const Grid& g = phis[a].grid();
        GridFunction q_phi = o.op(phis[a]);
        for (double y : ys) {
            if (y < 0.0 || std::abs(y / g.dx - std::round(y / g.dx)) > 1e-9)
                throw std::domain_error("check_translation_comparison: shifts must be nonnegative grid multiples");
            GridFunction lhs = translate(q_phi, -y);          // T_{-y} Q[phi]
            GridFunction rhs = o.op(translate(phis[a], -y));  // Q T_{-y}[phi]
            record(rep, rhs, lhs, static_cast<int>(a), y);
        }
    }
    return rep;
}

CheckReport check_monotone(const OperatorUnderTest& o,
                           const std::vector<std::pair<GridFunction, GridFunction>>& pairs) {
    CheckReport rep;
    rep.name = "monotone_A2";
    rep.label = o.label;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < pairs.size(); ++a) {
        if (max_excess(pairs[a].first, pairs[a].second) > 0.0)
            throw std::domain_error("check_monotone: pair is not ordered phi <= psi");
        record(rep, o.op(pairs[a].first), o.op(pairs[a].second), static_cast<int>(a), 0.0);
    }
    return rep;
}

CheckReport check_subhomogeneous(const OperatorUnderTest& o, const std::vector<GridFunction>& phis,
                                 const std::vector<double>& kappas) {
    CheckReport rep;
    rep.name = "subhomogeneous";
    rep.label = o.label;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < phis.size(); ++a) {
        GridFunction q_phi = o.op(phis[a]);
        for (double kappa : kappas) {
            if (kappa < 0.0 || kappa > 1.0)
                throw std::domain_error("check_subhomogeneous: kappa must lie in [0,1]");
            std::vector<double> scaled(phis[a].values());
            for (double& v : scaled) v *= kappa;
            GridFunction lhs = o.op(phis[a].with_values(std::move(scaled)));  // Q[kappa phi]
            std::vector<double> target(q_phi.values());
            for (double& v : target) v *= kappa;  // kappa Q[phi]
            record(rep, q_phi.with_values(std::move(target)), lhs, static_cast<int>(a), kappa);
        }
    }
    return rep;
}

CheckReport check_strong_positivity(const OperatorUnderTest& o,
                                    const std::vector<GridFunction>& phis, int n_star) {
    CheckReport rep;
    rep.name = "strong_positivity_SP";
    rep.label = o.label;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < phis.size(); ++a) {
        if (phis[a].sup_abs() == 0.0)
            throw std::domain_error("check_strong_positivity: inputs must be nonzero");
        GridFunction it = phis[a];
        for (int k = 0; k < n_star; ++k) it = o.op(it);
        const Grid& g = it.grid();
        double m = std::numeric_limits<double>::infinity();
        double mx = 0.0;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            if (x <= 0.0 || x > g.x_max() - 10.0) continue;
            if (it[i] < m) {
                m = it[i];
                mx = x;
            }
        }
        double v = m <= 0.0 ? std::max(-m, kOrderSlack) : -m;
        rep.max_violation = std::max(rep.max_violation, v);
        if (v > 0.0) rep.witnesses.push_back({static_cast<int>(a), static_cast<double>(n_star), mx, v});
        ++rep.samples_tested;
    }
    return rep;
}

LimitHypothesesReport check_limit_hypotheses(const LimitFamily& family, int horizon, double r_star,
                                             double window_half_width, double cone_minus,
                                             double cone_plus, double eps) {
    if (family.estimates.size() < 2)
        throw std::domain_error("check_limit_hypotheses: need a family with at least two y values");
    LimitHypothesesReport rep;
    rep.base.name = family.sign == LimitSign::Minus ? "limit_minus_UAA" : "limit_plus_UC_AA";
    rep.base.note = "finite-horizon proxy";
    rep.base.max_violation = -std::numeric_limits<double>::infinity();

    for (size_t i = 1; i < family.estimates.size(); ++i)
        rep.cauchy_diffs.push_back(sup_abs_diff(family.estimates[i], family.estimates[i - 1]));

    double y = family.ys.back();
    double s = family.sign == LimitSign::Plus ? y : -y;
    auto conjugated = [&](const GridFunction& psi) {
        return translate(family.frozen_op(translate(psi, s)), -s);
    };

    const Grid& g = family.phi.grid();
    if (family.sign == LimitSign::Minus) {
        rep.trend_name = "sup of Q_-^n[r*] (UAA proxy)";
        GridFunction it = GridFunction::constant(g, r_star);
        double x_lo = g.x_min + 5.0, x_hi = g.x_min + 5.0 + 2.0 * window_half_width;
        for (int n = 1; n <= horizon; ++n) {
            it = conjugated(it);
            double sup = 0.0;
            for (int i = 0; i < g.n; ++i)
                if (g.x(i) >= x_lo && g.x(i) <= x_hi) sup = std::max(sup, it[i]);
            rep.trend.push_back(sup);
            ++rep.base.samples_tested;
            if (n >= 2) {
                double v = rep.trend[static_cast<size_t>(n - 1)] - rep.trend[static_cast<size_t>(n - 2)];
                rep.base.max_violation = std::max(rep.base.max_violation, v);
                if (v >= 0.0)  // not strictly decreasing
                    rep.base.witnesses.push_back({0, static_cast<double>(n), x_lo, std::max(v, kOrderSlack)});
            }
        }
        return rep;
    }

    rep.trend_name = "window sup |Q_+^n[phi] - r*| (UC proxy)";
    GridFunction it = family.phi;
    std::vector<double> aa;
    for (int n = 1; n <= horizon; ++n) {
        it = conjugated(it);
        double sup = 0.0, outside = 0.0;
        double reach = family.t0 * static_cast<double>(n);
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            if (std::abs(x) <= window_half_width) sup = std::max(sup, std::abs(it[i] - r_star));
            if (x < -reach * (cone_minus + eps) || x > reach * (cone_plus + eps))
                outside = std::max(outside, it[i]);
        }
        rep.trend.push_back(sup);
        aa.push_back(outside);
        ++rep.base.samples_tested;
    }
    if (rep.trend.back() >= rep.trend.front()) {
        rep.base.max_violation = std::max(rep.base.max_violation, rep.trend.back() - rep.trend.front());
        rep.base.witnesses.push_back({0, static_cast<double>(horizon), 0.0,
                                      std::max(rep.trend.back() - rep.trend.front(), kOrderSlack)});
    }
    if (aa.back() >= aa.front() + kOrderSlack && aa.front() > 0.0) {
        rep.base.max_violation = std::max(rep.base.max_violation, aa.back() - aa.front());
        rep.base.witnesses.push_back({1, static_cast<double>(horizon), 0.0, aa.back() - aa.front()});
    }
    rep.base.note += "; AA outside-cone sup at n=1.." + std::to_string(horizon) + " appended to trend";
    for (double v : aa) rep.trend.push_back(v);
    return rep;
}

}  // namespace wavefront

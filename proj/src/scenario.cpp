#include "wavefront/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "wavefront/csv.hpp"
#include "wavefront/hypotheses.hpp"
#include "wavefront/speeds.hpp"
#include "wavefront/waves.hpp"

namespace wavefront {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& ptr) {
    if (!j.is_object()) throw ConfigError(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError(ptr + "/" + it.key(), "unknown field");
    }
}

const json& require(const json& j, const char* key, const std::string& ptr) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(ptr + "/" + key, "missing required field");
    return *it;
}

double as_num(const json& j, const std::string& ptr) {
    if (!j.is_number()) throw ConfigError(ptr, "expected a number");
    return j.get<double>();
}

double req_num(const json& j, const char* key, const std::string& ptr) {
    return as_num(require(j, key, ptr), ptr + "/" + key);
}

double opt_num(const json& j, const char* key, double dflt, const std::string& ptr) {
    auto it = j.find(key);
    return it == j.end() ? dflt : as_num(*it, ptr + "/" + key);
}

std::string req_str(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_string()) throw ConfigError(ptr + "/" + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> req_num_array(const json& j, const char* key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_array()) throw ConfigError(ptr + "/" + key, "expected an array");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(as_num(v[i], ptr + "/" + key + "/" + std::to_string(i)));
    return out;
}

Kernel parse_kernel(const json& j, const std::string& ptr) {
    std::string kind = req_str(j, "kind", ptr);
    if (kind == "dirac") {
        check_keys(j, {"kind"}, ptr);
        return Kernel::dirac();
    }
    if (kind == "gaussian") {
        check_keys(j, {"kind", "alpha"}, ptr);
        return Kernel::gaussian(req_num(j, "alpha", ptr));
    }
    if (kind == "tabulated") {
        check_keys(j, {"kind", "dx", "values"}, ptr);
        return Kernel::tabulated(req_num(j, "dx", ptr), req_num_array(j, "values", ptr));
    }
    throw ConfigError(ptr + "/kind", "unknown kernel kind '" + kind + "'");
}

ShiftProfile parse_profile(const json& j, const std::string& ptr) {
    std::string kind = req_str(j, "kind", ptr);
    if (kind == "constant") {
        check_keys(j, {"kind", "value"}, ptr);
        return constant_profile(req_num(j, "value", ptr));
    }
    if (kind == "ramp") {
        check_keys(j, {"kind", "r_left", "r_right", "s_width"}, ptr);
        return ramp_profile(req_num(j, "r_left", ptr), req_num(j, "r_right", ptr),
                            req_num(j, "s_width", ptr));
    }
    if (kind == "tabulated") {
        check_keys(j, {"kind", "s", "r"}, ptr);
        return tabulated_profile(req_num_array(j, "s", ptr), req_num_array(j, "r", ptr));
    }
    throw ConfigError(ptr + "/kind", "unknown profile kind '" + kind + "'");
}

Reaction parse_reaction(const json& j, double mu, const std::string& ptr) {
    std::string kind = req_str(j, "kind", ptr);
    if (kind == "shifted_logistic") {
        check_keys(j, {"kind", "r_profile"}, ptr);
        return shifted_logistic(parse_profile(require(j, "r_profile", ptr), ptr + "/r_profile"), mu);
    }
    if (kind == "tabulated") {
        check_keys(j, {"kind", "s", "r"}, ptr);
        return shifted_logistic(tabulated_profile(req_num_array(j, "s", ptr), req_num_array(j, "r", ptr)),
                                mu);
    }
    throw ConfigError(ptr + "/kind", "unknown reaction kind '" + kind + "'");
}

ModelSpec parse_model(const json& j, const std::string& ptr) {
    std::string variant = req_str(j, "variant", ptr);
    try {
        if (variant == "A" || variant == "B") {
            check_keys(j, {"variant", "d", "mu", "tau", "c_shift", "kernel", "reaction"}, ptr);
            double d = req_num(j, "d", ptr), mu = req_num(j, "mu", ptr);
            double tau = opt_num(j, "tau", 0.0, ptr), c = opt_num(j, "c_shift", 0.0, ptr);
            Kernel k = j.contains("kernel") ? parse_kernel(j["kernel"], ptr + "/kernel") : Kernel::dirac();
            Reaction f = parse_reaction(require(j, "reaction", ptr), mu, ptr + "/reaction");
            validate(f);
            ModelSpec m = variant == "A" ? ModelSpec{ModelA{d, mu, tau, c, k, f}}
                                         : ModelSpec{ModelB{d, mu, tau, c, k, f}};
            validate(m);
            return m;
        }
        if (variant == "C") {
            check_keys(j, {"variant", "d", "mu", "tau", "reaction"}, ptr);
            double d = req_num(j, "d", ptr), mu = req_num(j, "mu", ptr);
            double tau = opt_num(j, "tau", 0.0, ptr);
            Reaction f = parse_reaction(require(j, "reaction", ptr), mu, ptr + "/reaction");
            ModelSpec m = ModelC{d, mu, tau, f};
            validate(m);
            return m;
        }
        if (variant == "D") {
            check_keys(j, {"variant", "d", "reaction"}, ptr);
            const json& rj = require(j, "reaction", ptr);
            std::string kind = req_str(rj, "kind", ptr + "/reaction");
            if (kind != "kpp") throw ConfigError(ptr + "/reaction/kind", "model D takes a 'kpp' reaction");
            check_keys(rj, {"kind", "r_profile"}, ptr + "/reaction");
            KppReaction h =
                kpp_reaction(parse_profile(require(rj, "r_profile", ptr + "/reaction"), ptr + "/reaction/r_profile"));
            ModelSpec m = ModelD{req_num(j, "d", ptr), h};
            validate(m);
            return m;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(ptr, e.what());
    }
    throw ConfigError(ptr + "/variant", "unknown model variant '" + variant + "'");
}

GridFunction parse_initial(const json& j, const Grid& g, const std::string& dir,
                           const std::string& ptr) {
    std::string kind = req_str(j, "kind", ptr);
    try {
        if (kind == "bump") {
            check_keys(j, {"kind", "d", "center"}, ptr);
            GridFunction u = bump_fixture(BumpKind::XiD, req_num(j, "d", ptr), g);
            double center = opt_num(j, "center", 0.0, ptr);
            return center == 0.0 ? u : translate(u, center);
        }
        if (kind == "heaviside") {
            check_keys(j, {"kind", "x0"}, ptr);
            return heaviside_fixture(g, req_num(j, "x0", ptr));
        }
        if (kind == "constant") {
            check_keys(j, {"kind", "v"}, ptr);
            double v = req_num(j, "v", ptr);
            if (v < 0.0) throw ConfigError(ptr + "/v", "initial data must be nonnegative");
            return GridFunction::constant(g, v);
        }
        if (kind == "tabulated") {
            check_keys(j, {"kind", "file"}, ptr);
            fs::path path = fs::path(dir) / req_str(j, "file", ptr);
            std::ifstream in(path);
            if (!in) throw ConfigError(ptr + "/file", "cannot open " + path.string());
            std::vector<double> vals;
            double v;
            while (in >> v) vals.push_back(v);
            if (static_cast<int>(vals.size()) != g.n)
                throw ConfigError(ptr + "/file", "expected " + std::to_string(g.n) + " values, got " +
                                                     std::to_string(vals.size()));
            return GridFunction(g, std::move(vals));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(ptr, e.what());
    }
    throw ConfigError(ptr + "/kind", "unknown initial kind '" + kind + "'");
}

Analysis parse_analysis(const json& j, const std::string& ptr) {
    std::string type = req_str(j, "type", ptr);
    if (type == "speed") {
        check_keys(j, {"type", "level", "window", "side", "expect", "rel_tol"}, ptr);
        SpeedAnalysis a;
        a.level = req_num(j, "level", ptr);
        auto w = req_num_array(j, "window", ptr);
        if (w.size() != 2) throw ConfigError(ptr + "/window", "expected [t_lo, t_hi]");
        a.t_lo = w[0];
        a.t_hi = w[1];
        if (j.contains("side")) {
            std::string side = req_str(j, "side", ptr);
            if (side == "leftmost") a.side = Side::Leftmost;
            else if (side != "rightmost") throw ConfigError(ptr + "/side", "expected rightmost|leftmost");
        }
        if (j.contains("expect")) a.expect = req_num(j, "expect", ptr);
        a.rel_tol = opt_num(j, "rel_tol", 0.08, ptr);
        return a;
    }
    if (type == "interval") {
        check_keys(j, {"type", "c_lo", "c_hi", "eps", "r_star", "max_error", "at_t"}, ptr);
        IntervalAnalysis a;
        a.c_lo = req_num(j, "c_lo", ptr);
        a.c_hi = req_num(j, "c_hi", ptr);
        a.eps = req_num(j, "eps", ptr);
        if (j.contains("r_star")) a.r_star = req_num(j, "r_star", ptr);
        if (j.contains("max_error")) a.max_error = req_num(j, "max_error", ptr);
        if (j.contains("at_t")) a.at_t = req_num(j, "at_t", ptr);
        return a;
    }
    if (type == "tail") {
        check_keys(j, {"type", "c", "eps", "side", "c_minus", "c_plus", "max_value", "at_t"}, ptr);
        TailAnalysis a;
        a.eps = req_num(j, "eps", ptr);
        std::string side = j.contains("side") ? req_str(j, "side", ptr) : "behind";
        if (side == "outside_cone") {
            a.outside_cone = true;
            a.c_minus = req_num(j, "c_minus", ptr);
            a.c_plus = req_num(j, "c_plus", ptr);
        } else if (side == "behind") {
            a.c = req_num(j, "c", ptr);
        } else {
            throw ConfigError(ptr + "/side", "expected behind|outside_cone");
        }
        if (j.contains("max_value")) a.max_value = req_num(j, "max_value", ptr);
        if (j.contains("at_t")) a.at_t = req_num(j, "at_t", ptr);
        return a;
    }
    if (type == "wave") {
        check_keys(j, {"type", "c", "tol", "max_iter", "tol_limits", "t0"}, ptr);
        WaveAnalysis a;
        a.c = req_num(j, "c", ptr);
        a.tol = opt_num(j, "tol", 1e-8, ptr);
        a.max_iter = static_cast<int>(opt_num(j, "max_iter", 2000, ptr));
        a.tol_limits = opt_num(j, "tol_limits", 1e-3, ptr);
        a.t0 = opt_num(j, "t0", 1.0, ptr);
        return a;
    }
    if (type == "steady") {
        check_keys(j, {"type", "L", "tol", "compare_window", "max_diff"}, ptr);
        SteadyAnalysis a;
        a.L = opt_num(j, "L", 0.0, ptr);
        a.tol = opt_num(j, "tol", 1e-6, ptr);
        if (j.contains("compare_window")) {
            auto w = req_num_array(j, "compare_window", ptr);
            if (w.size() != 2) throw ConfigError(ptr + "/compare_window", "expected [lo, hi]");
            a.win_lo = w[0];
            a.win_hi = w[1];
        }
        if (j.contains("max_diff")) a.max_diff = req_num(j, "max_diff", ptr);
        return a;
    }
    if (type == "hypotheses") {
        check_keys(j, {"type", "seed", "n_samples", "t0", "horizon"}, ptr);
        HypothesesAnalysis a;
        a.seed = static_cast<uint64_t>(opt_num(j, "seed", 1.0, ptr));
        a.n_samples = static_cast<int>(opt_num(j, "n_samples", 30.0, ptr));
        a.t0 = opt_num(j, "t0", 0.5, ptr);
        a.horizon = static_cast<int>(opt_num(j, "horizon", 20.0, ptr));
        return a;
    }
    throw ConfigError(ptr + "/type", "unknown analysis type '" + type + "'");
}

double analysis_speed(const Analysis& a) {
    return std::visit(
        [](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IntervalAnalysis>)
                return std::max(std::abs(x.c_lo), std::abs(x.c_hi));
            else if constexpr (std::is_same_v<T, TailAnalysis>)
                return x.outside_cone ? std::max(std::abs(x.c_minus), std::abs(x.c_plus)) : std::abs(x.c);
            else if constexpr (std::is_same_v<T, WaveAnalysis>)
                return std::abs(x.c);
            else
                return 0.0;
        },
        a);
}

}  // namespace

Scenario load_scenario(const json& config, const std::string& config_dir) {
    check_keys(config, {"version", "model", "grid", "initial", "run", "analysis"}, "");
    const json& ver = require(config, "version", "");
    if (!ver.is_number_integer() || ver.get<int>() != 1)
        throw ConfigError("/version", "unsupported config version (expected 1)");

    const json& gj = require(config, "grid", "");
    check_keys(gj, {"x_min", "x_max", "dx"}, "/grid");
    Grid grid;
    try {
        grid = make_grid(req_num(gj, "x_min", "/grid"), req_num(gj, "x_max", "/grid"),
                         req_num(gj, "dx", "/grid"));
    } catch (const std::domain_error& e) {
        throw ConfigError("/grid", e.what());
    }

    Scenario s;
    s.model = parse_model(require(config, "model", ""), "/model");
    s.grid = grid;
    s.initial = parse_initial(require(config, "initial", ""), grid, config_dir, "/initial");

    const json& rj = require(config, "run", "");
    check_keys(rj, {"T", "record_every"}, "/run");
    s.T = req_num(rj, "T", "/run");
    if (!(s.T > 0.0)) throw ConfigError("/run/T", "need T > 0");
    s.record_every = opt_num(rj, "record_every", 1.0, "/run");

    if (config.contains("analysis")) {
        const json& aj = config["analysis"];
        if (!aj.is_array()) throw ConfigError("/analysis", "expected an array");
        for (size_t i = 0; i < aj.size(); ++i)
            s.analyses.push_back(parse_analysis(aj[i], "/analysis/" + std::to_string(i)));
    }

    double vmax = 0.0;
    for (const auto& a : s.analyses) vmax = std::max(vmax, analysis_speed(a));
    double width = grid.x_max() - grid.x_min;
    double needed = 2.0 * vmax * s.T + 40.0;
    if (width < needed - 1e-9)
        throw ConfigError("/grid", "grid too narrow for the analysis cone: width " +
                                       format_double(width) + " < " + format_double(needed));
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path);
    json config;
    try {
        config = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return load_scenario(config, fs::path(path).parent_path().string());
}

namespace {

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

struct Thresholds {
    bool failed = false;
    std::vector<std::string> messages;
    void require(bool ok, const std::string& msg) {
        if (!ok) {
            failed = true;
            messages.push_back(msg);
        }
    }
};

double value_at_time(const Curve& c, double t) {
    if (c.t.empty()) throw std::runtime_error("analysis curve is empty");
    size_t best = 0;
    for (size_t i = 1; i < c.t.size(); ++i)
        if (std::abs(c.t[i] - t) < std::abs(c.t[best] - t)) best = i;
    return c.value[best];
}

void write_curve(const std::string& out_dir, const std::string& name, const Curve& c) {
    CsvWriter csv((fs::path(out_dir) / (name + ".csv")).string());
    csv.row({"t", "value"});
    for (size_t k = 0; k < c.t.size(); ++k) csv.numeric_row({c.t[k], c.value[k]});
}

json report_to_json(const CheckReport& r) {
    json w = json::array();
    for (const auto& wit : r.witnesses)
        w.push_back({{"sample", wit.sample},
                     {"parameter", wit.parameter},
                     {"x", wit.x},
                     {"violation", wit.violation}});
    return json{{"name", r.name},         {"label", r.label},
                {"samples_tested", r.samples_tested}, {"max_violation", r.max_violation},
                {"pass", r.pass()},       {"witnesses", w},
                {"note", r.note}};
}

}  // namespace

int run_speed(const Scenario& s, const std::string& out_dir) {
    ensure_dir(out_dir);
    CsvWriter csv((fs::path(out_dir) / "speed.csv").string());
    if (const auto* a = std::get_if<ModelA>(&s.model)) {
        if (!a->kernel.is_dirac() || a->tau > 0.0)
            throw ConfigError("/model", "model A has a closed-form speed only for dirac kernel and tau=0; "
                                        "use `simulate` with a speed analysis");
        auto c = kpp_local_speed(a->d, a->mu, a->f.fprime0);
        csv.row({"c_star", format_double(c.value)});
        csv.row({"degenerate", c.degenerate ? "1" : "0"});
        return 0;
    }
    if (const auto* b = std::get_if<ModelB>(&s.model)) {
        DispersionParams p{b->d, b->mu, b->tau, b->f.fprime0, b->kernel};
        std::vector<double> cs;
        for (int i = 0; i <= 60; ++i) cs.push_back(-3.0 + 0.1 * i);
        SpeedReport rep = speed_report(p, cs);
        csv.row({"c_star", format_double(rep.c_star)});
        csv.row({"argmin_rho", format_double(rep.argmin_rho)});
        csv.row({"c", "c_plus_star", "c_minus_star"});
        for (size_t i = 0; i < rep.c.size(); ++i)
            csv.numeric_row({rep.c[i], rep.c_plus_star[i], rep.c_minus_star[i]});
        return 0;
    }
    if (const auto* c = std::get_if<ModelC>(&s.model)) {
        if (c->tau > 0.0)
            throw ConfigError("/model", "model C speed formula implemented for tau=0 only");
        auto sp = kpp_local_speed(c->d, c->mu, c->f.fprime0);
        csv.row({"c_star", format_double(sp.value)});
        csv.row({"degenerate", sp.degenerate ? "1" : "0"});
        return 0;
    }
    const auto& d = std::get<ModelD>(s.model);
    csv.row({"c_minus_star", format_double(kpp_rd_speed(d.d, d.h.hprime0_minus))});
    csv.row({"c_plus_star", format_double(kpp_rd_speed(d.d, d.h.hprime0_plus))});
    return 0;
}

int run_simulate(const Scenario& s, const std::string& out_dir) {
    ensure_dir(out_dir);
    RunRecord rec = simulate(s.model, s.initial, s.T, s.record_every);

    {
        CsvWriter run_csv((fs::path(out_dir) / "run.csv").string());
        std::vector<std::string> header{"t"};
        for (int i = 0; i < rec.grid.n; ++i) header.push_back(format_double(rec.grid.x(i)));
        run_csv.row(header);
        for (size_t k = 0; k < rec.times.size(); ++k) {
            std::vector<double> row{rec.times[k]};
            row.insert(row.end(), rec.snapshots[k].begin(), rec.snapshots[k].end());
            run_csv.numeric_row(row);
        }
    }

    double r_star_default = upper_state(s.model);
    std::vector<std::pair<std::string, FrontTrace>> fronts;
    int speed_idx = 0;
    for (const auto& a : s.analyses)
        if (const auto* sa = std::get_if<SpeedAnalysis>(&a)) {
            std::string name = "front_" + std::to_string(speed_idx++);
            fronts.emplace_back(name, track_front(rec, sa->level, sa->side));
        }
    if (fronts.empty())
        fronts.emplace_back("front_0", track_front(rec, 0.5 * r_star_default, Side::Rightmost));

    {
        CsvWriter fcsv((fs::path(out_dir) / "fronts.csv").string());
        std::vector<std::string> header{"t"};
        for (auto& [name, tr] : fronts) header.push_back(name);
        fcsv.row(header);
        for (size_t k = 0; k < rec.times.size(); ++k) {
            std::vector<std::string> row{format_double(rec.times[k])};
            for (auto& [name, tr] : fronts)
                row.push_back(tr.positions[k] ? format_double(*tr.positions[k]) : "");
            fcsv.row(row);
        }
    }

    Thresholds th;
    CsvWriter diag((fs::path(out_dir) / "diagnostics.csv").string());
    diag.row({"analysis", "metric", "t", "value"});
    diag.row({"run", "min_seen", "", format_double(rec.min_seen)});
    diag.row({"run", "max_seen", "", format_double(rec.max_seen)});
    int idx = 0;
    speed_idx = 0;
    for (const auto& a : s.analyses) {
        std::string name;
        if (const auto* sa = std::get_if<SpeedAnalysis>(&a)) {
            name = "speed" + std::to_string(idx);
            auto fit = empirical_speed(fronts[static_cast<size_t>(speed_idx++)].second, sa->t_lo, sa->t_hi);
            diag.row({name, "slope", "", format_double(fit.slope)});
            diag.row({name, "stderr", "", format_double(fit.stderr_slope)});
            diag.row({name, "n_points", "", std::to_string(fit.n_points)});
            if (sa->expect)
                th.require(std::abs(fit.slope - *sa->expect) <= sa->rel_tol * std::abs(*sa->expect),
                           name + ": slope " + format_double(fit.slope) + " outside " +
                               format_double(sa->rel_tol * 100) + "% of " + format_double(*sa->expect));
        } else if (const auto* ia = std::get_if<IntervalAnalysis>(&a)) {
            name = "interval" + std::to_string(idx);
            Curve e = interval_convergence(rec, ia->r_star.value_or(r_star_default), ia->c_lo, ia->c_hi,
                                           ia->eps);
            write_curve(out_dir, name, e);
            for (size_t k = 0; k < e.t.size(); ++k)
                diag.row({name, "e", format_double(e.t[k]), format_double(e.value[k])});
            if (ia->max_error) {
                double v = value_at_time(e, ia->at_t.value_or(s.T));
                th.require(v < *ia->max_error, name + ": e=" + format_double(v) + " >= " +
                                                   format_double(*ia->max_error));
            }
        } else if (const auto* ta = std::get_if<TailAnalysis>(&a)) {
            name = "tail" + std::to_string(idx);
            Curve m = ta->outside_cone ? tail_decay_outside_cone(rec, ta->c_minus, ta->c_plus, ta->eps)
                                       : tail_decay_behind(rec, ta->c, ta->eps);
            write_curve(out_dir, name, m);
            for (size_t k = 0; k < m.t.size(); ++k)
                diag.row({name, "m", format_double(m.t[k]), format_double(m.value[k])});
            if (ta->max_value) {
                double v = value_at_time(m, ta->at_t.value_or(s.T));
                th.require(v < *ta->max_value, name + ": m=" + format_double(v) + " >= " +
                                                   format_double(*ta->max_value));
            }
        }
        ++idx;
    }
    for (const auto& msg : th.messages) std::cerr << "threshold failure: " << msg << "\n";
    return th.failed ? 1 : 0;
}

int run_wave(const Scenario& s, const std::string& out_dir) {
    ensure_dir(out_dir);
    const WaveAnalysis* wa = nullptr;
    for (const auto& a : s.analyses)
        if ((wa = std::get_if<WaveAnalysis>(&a))) break;
    if (!wa) throw ConfigError("/analysis", "wave subcommand needs a wave analysis entry");

    double r_star = upper_state(s.model);
    std::function<GridFunction(const GridFunction&)> map;
    if (const auto* b = std::get_if<ModelB>(&s.model)) {
        WaveMapParams p{b->d, b->mu, b->tau, b->kernel, b->f};
        map = [p, c = wa->c](const GridFunction& u) { return nonlocal_wave_map(u, c, p); };
    } else if (std::holds_alternative<ModelC>(s.model)) {
        throw ConfigError("/model", "use the steady subcommand for the half-line model");
    } else {
        map = moving_frame_map(s.model, wa->c, wa->t0);
    }

    WaveProfile wp = monotone_wave_iterate(map, s.grid, r_star, wa->tol, wa->max_iter, wa->c);
    ConnectionReport conn = verify_connection(wp, r_star, wa->tol_limits);

    CsvWriter csv((fs::path(out_dir) / "wave.csv").string());
    csv.row({"x", "W"});
    for (int i = 0; i < s.grid.n; ++i) csv.numeric_row({s.grid.x(i), wp.profile[i]});

    json meta{{"c", wp.c},
              {"residual", wp.residual},
              {"iterations", wp.iterations},
              {"converged", wp.converged},
              {"monotone", wp.monotone},
              {"max_iterate_increase", wp.max_iterate_increase},
              {"limits", {{"left", wp.left_value}, {"right", wp.right_value}}},
              {"connection",
               {{"left_ok", conn.left_ok},
                {"right_ok", conn.right_ok},
                {"monotone_ok", conn.monotone_ok},
                {"pass", conn.pass()}}}};
    std::ofstream((fs::path(out_dir) / "wave.meta.json").string()) << meta.dump(2) << "\n";
    return wp.converged && conn.pass() ? 0 : 1;
}

int run_steady(const Scenario& s, const std::string& out_dir) {
    ensure_dir(out_dir);
    const auto* c = std::get_if<ModelC>(&s.model);
    if (!c) throw ConfigError("/model", "steady subcommand is for model C");
    SteadyAnalysis sa;
    for (const auto& a : s.analyses)
        if (const auto* p = std::get_if<SteadyAnalysis>(&a)) sa = *p;
    double L = sa.L > 0.0 ? sa.L : s.grid.x_max() - 10.0;
    double win_hi = sa.win_hi > sa.win_lo ? sa.win_hi : 0.5 * s.grid.x_max();

    SteadyOracleResult oracle = dirichlet_steady_oracle(c->d, c->mu, c->f, s.grid, L, sa.tol);
    RunRecord rec = simulate(s.model, s.initial, s.T, s.record_every);
    GridFunction final_state = rec.final_state();

    {
        CsvWriter csv((fs::path(out_dir) / "steady.csv").string());
        csv.row({"x", "W"});
        for (int i = 0; i < s.grid.n; ++i) csv.numeric_row({s.grid.x(i), final_state[i]});
    }
    {
        CsvWriter csv((fs::path(out_dir) / "oracle.csv").string());
        csv.row({"x", "W"});
        for (int i = 0; i < s.grid.n; ++i) csv.numeric_row({s.grid.x(i), oracle.w[i]});
    }

    double sup_diff = 0.0;
    for (int i = 0; i < s.grid.n; ++i) {
        double x = s.grid.x(i);
        if (x < sa.win_lo || x > win_hi) continue;
        sup_diff = std::max(sup_diff, std::abs(final_state[i] - oracle.w[i]));
    }
    bool pass = !sa.max_diff || sup_diff <= *sa.max_diff;
    json cmp{{"window", {sa.win_lo, win_hi}},
             {"sup_diff", sup_diff},
             {"slope0", oracle.slope0},
             {"pass", pass}};
    if (sa.max_diff) cmp["max_diff"] = *sa.max_diff;
    std::ofstream((fs::path(out_dir) / "comparison.json").string()) << cmp.dump(2) << "\n";
    std::cout << "steady comparison: sup|u(T) - W| = " << format_double(sup_diff) << " on ["
              << format_double(sa.win_lo) << "," << format_double(win_hi) << "]"
              << (pass ? "" : "  (threshold exceeded)") << "\n";
    return pass ? 0 : 1;
}

int run_hypotheses(const Scenario& s, const std::string& out_dir) {
    ensure_dir(out_dir);
    HypothesesAnalysis ha;
    for (const auto& a : s.analyses)
        if (const auto* p = std::get_if<HypothesesAnalysis>(&a)) ha = *p;

    double r_star = upper_state(s.model);
    const Grid& g = s.grid;
    OperatorUnderTest op{moving_frame_map(s.model, shift_speed(s.model), ha.t0), r_star,
                         "frozen-frame operator"};

    Lcg rng{ha.seed};
    std::vector<GridFunction> phis;
    std::vector<std::pair<GridFunction, GridFunction>> pairs;
    for (int i = 0; i < ha.n_samples; ++i) {
        GridFunction phi = random_monotone(rng, g, 0.6 * r_star);
        GridFunction extra = random_monotone(rng, g, 0.4 * r_star);
        std::vector<double> psi(phi.values());
        for (int k = 0; k < g.n; ++k) psi[static_cast<size_t>(k)] += extra[k];
        phis.push_back(phi);
        pairs.emplace_back(phi, phi.with_values(std::move(psi)));
    }
    std::vector<double> ys;
    for (int k = 1; k <= 5; ++k) ys.push_back(std::round(2.0 * k / g.dx) * g.dx);

    json checks = json::array();
    checks.push_back(report_to_json(check_translation_comparison(op, phis, ys)));
    checks.push_back(report_to_json(check_monotone(op, pairs)));
    checks.push_back(report_to_json(
        check_subhomogeneous(op, phis, {0.0, 0.25, 0.5, 0.75, 1.0})));

    json out{{"seed", ha.seed}, {"t0", ha.t0}, {"checks", checks}};
    if (!std::holds_alternative<ModelC>(s.model)) {
        GridFunction bump = bump_fixture(BumpKind::H, 1.0, g);
        std::vector<double> scaled(bump.values());
        for (double& v : scaled) v *= r_star / 16.0;
        GridFunction phi0 = bump.with_values(std::move(scaled));
        double reach = std::min(-2.0 - g.x_min, g.x_max() - 2.0) - 12.0;
        std::vector<double> y_list;
        for (double f : {0.5, 0.75, 1.0}) y_list.push_back(std::round(f * reach / g.dx) * g.dx);
        LimitFamily fam = limit_operator_estimate(s.model, ha.t0, phi0, y_list, LimitSign::Minus);
        LimitHypothesesReport lim = check_limit_hypotheses(fam, ha.horizon, r_star);
        json limj = report_to_json(lim.base);
        limj["cauchy_diffs"] = lim.cauchy_diffs;
        limj["trend"] = lim.trend;
        limj["trend_name"] = lim.trend_name;
        out["limit_minus"] = limj;
    }

    bool pass = true;
    for (const auto& cj : out["checks"])
        if (!cj["pass"].get<bool>()) pass = false;
    if (out.contains("limit_minus") && !out["limit_minus"]["pass"].get<bool>()) pass = false;
    out["pass"] = pass;
    std::ofstream((fs::path(out_dir) / "report.json").string()) << out.dump(2) << "\n";
    return pass ? 0 : 1;
}

int run_sweep(const json& config, const std::string& config_dir, const std::string& param,
              const std::string& values, const std::string& out_dir) {
    ensure_dir(out_dir);
    double a, b, step;
    if (std::sscanf(values.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || !(step > 0.0))
        throw ConfigError("", "sweep values must be a:b:step with step > 0");
    std::vector<double> vals;
    for (double v = a; v <= b + 1e-12; v += step) vals.push_back(v);

    std::string ptr = param.front() == '/' ? param : "/model/" + param;
    json::json_pointer jp(ptr);

    unsigned n_workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("WAVEFRONT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) n_workers = static_cast<unsigned>(v);
    }
    n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(vals.size())));

    std::vector<int> codes(vals.size(), 0);
    std::vector<std::string> dirs(vals.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= vals.size()) return;
            json patched = config;
            patched[jp] = vals[i];
            std::string sub = (fs::path(out_dir) / (param + "=" + format_double(vals[i]))).string();
            dirs[i] = sub;
            try {
                Scenario s = load_scenario(patched, config_dir);
                codes[i] = run_simulate(s, sub);
            } catch (const std::exception& e) {
                std::cerr << "sweep value " << format_double(vals[i]) << ": " << e.what() << "\n";
                codes[i] = 2;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    CsvWriter summary((fs::path(out_dir) / "summary.csv").string());
    summary.row({param, "exit_code", "directory"});
    int rc = 0;
    for (size_t i = 0; i < vals.size(); ++i) {
        summary.row({format_double(vals[i]), std::to_string(codes[i]), dirs[i]});
        rc = std::max(rc, codes[i]);
    }
    return rc;
}

}  // namespace wavefront

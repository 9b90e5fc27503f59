#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wavefront/evolve.hpp"
#include "wavefront/fronts.hpp"

#include <json.hpp>

namespace wavefront {

// Config/schema violation, reported with a JSON pointer path; maps to exit
// code 2 in the CLI.
struct ConfigError : std::runtime_error {
    std::string pointer;
    ConfigError(std::string ptr, const std::string& msg)
        : std::runtime_error("config error at " + ptr + ": " + msg), pointer(std::move(ptr)) {}
};

struct SpeedAnalysis {
    double level = 0.5;
    double t_lo = 20.0, t_hi = 60.0;
    Side side = Side::Rightmost;
    std::optional<double> expect;
    double rel_tol = 0.08;
};

struct IntervalAnalysis {
    double c_lo = 0.0, c_hi = 0.0, eps = 0.0;
    std::optional<double> r_star;  // defaults to the model's upper state
    std::optional<double> max_error;
    std::optional<double> at_t;
};

struct TailAnalysis {
    bool outside_cone = false;
    double c = 0.0;  // behind mode
    double c_minus = 0.0, c_plus = 0.0;
    double eps = 0.0;
    std::optional<double> max_value;
    std::optional<double> at_t;
};

struct WaveAnalysis {
    double c = 0.0;
    double tol = 1e-8;
    int max_iter = 2000;
    double tol_limits = 1e-3;
    double t0 = 1.0;  // frame time for moving-frame wave maps (models A, D)
};

struct SteadyAnalysis {
    double L = 0.0;  // 0: defaults to x_max - 10
    double tol = 1e-6;
    double win_lo = 0.0, win_hi = 0.0;  // 0,0: defaults to [0, x_max/2]
    std::optional<double> max_diff;
};

struct HypothesesAnalysis {
    uint64_t seed = 1;
    int n_samples = 30;
    double t0 = 0.5;
    int horizon = 20;
};

using Analysis = std::variant<SpeedAnalysis, IntervalAnalysis, TailAnalysis, WaveAnalysis,
                              SteadyAnalysis, HypothesesAnalysis>;

struct Scenario {
    ModelSpec model;
    Grid grid;
    GridFunction initial;
    double T = 1.0;
    double record_every = 1.0;
    std::vector<Analysis> analyses;
};

Scenario load_scenario(const nlohmann::json& config, const std::string& config_dir = ".");
Scenario load_scenario_file(const std::string& path);

// Subcommand drivers. Return 0 on success, 1 when an analysis threshold was
// not met (the run itself completed).
int run_speed(const Scenario& s, const std::string& out_dir);
int run_simulate(const Scenario& s, const std::string& out_dir);
int run_wave(const Scenario& s, const std::string& out_dir);
int run_steady(const Scenario& s, const std::string& out_dir);
int run_hypotheses(const Scenario& s, const std::string& out_dir);
int run_sweep(const nlohmann::json& config, const std::string& config_dir, const std::string& param,
              const std::string& values, const std::string& out_dir);

}  // namespace wavefront

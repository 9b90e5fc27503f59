#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wavefront/scenario.hpp"

using namespace wavefront;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
    return json{
        {"version", 1},
        {"model",
         {{"variant", "D"},
          {"d", 1.0},
          {"reaction",
           {{"kind", "kpp"}, {"r_profile", {{"kind", "constant"}, {"value", 1.0}}}}}}},
        {"grid", {{"x_min", -40.0}, {"x_max", 40.0}, {"dx", 0.2}}},
        {"initial", {{"kind", "bump"}, {"d", 1.0}}},
        {"run", {{"T", 4.0}, {"record_every", 0.5}}},
        {"analysis", json::array()}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("wavefront_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config schema: missing fields, unknown fields, version") {
    json ok = base_config();
    CHECK_NOTHROW(load_scenario(ok));

    json no_model = ok;
    no_model.erase("model");
    try {
        load_scenario(no_model);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/model");
    }

    json unknown = ok;
    unknown["model"]["bogus"] = 1;
    try {
        load_scenario(unknown);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/model/bogus");
    }

    json bad_version = ok;
    bad_version["version"] = 2;
    CHECK_THROWS_AS(load_scenario(bad_version), ConfigError);

    json narrow = ok;
    narrow["analysis"] = json::array(
        {{{"type", "interval"}, {"c_lo", -2.0}, {"c_hi", 2.0}, {"eps", 0.4}}});
    narrow["run"]["T"] = 50.0;  // needs width >= 2*2*50+40 = 240 > 80
    try {
        load_scenario(narrow);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/grid");
    }

    json bad_kind = ok;
    bad_kind["initial"]["kind"] = "wavelet";
    try {
        load_scenario(bad_kind);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.pointer == "/initial/kind");
    }
}

TEST_CASE("speed subcommand: Cor 6.3 local case emits c_star,2") {
    json cfg{{"version", 1},
             {"model",
              {{"variant", "A"},
               {"d", 1.0},
               {"mu", 1.0},
               {"kernel", {{"kind", "dirac"}}},
               {"reaction",
                {{"kind", "shifted_logistic"},
                 {"r_profile",
                  {{"kind", "ramp"}, {"r_left", -0.5}, {"r_right", 1.0}, {"s_width", 10.0}}}}}}},
             {"grid", {{"x_min", -30.0}, {"x_max", 30.0}, {"dx", 0.2}}},
             {"initial", {{"kind", "bump"}, {"d", 1.0}}},
             {"run", {{"T", 1.0}, {"record_every", 1.0}}}};
    TempDir dir("speed");
    Scenario s = load_scenario(cfg);
    CHECK(run_speed(s, dir.path.string()) == 0);
    std::string csv = slurp(dir.path / "speed.csv");
    CHECK(csv.find("c_star,2\n") == 0);
}

TEST_CASE("simulate subcommand: outputs exist and are byte-deterministic") {
    TempDir d1("sim1"), d2("sim2");
    json cfg = base_config();
    cfg["analysis"] = json::array(
        {{{"type", "speed"}, {"level", 0.5}, {"window", {1.0, 4.0}}},
         {{"type", "interval"}, {"c_lo", -1.0}, {"c_hi", 1.0}, {"eps", 0.3}},
         {{"type", "tail"}, {"c", 0.5}, {"eps", 0.2}}});
    Scenario s = load_scenario(cfg);
    CHECK(run_simulate(s, d1.path.string()) == 0);
    CHECK(run_simulate(s, d2.path.string()) == 0);
    for (const char* name : {"run.csv", "fronts.csv", "diagnostics.csv"}) {
        std::string a = slurp(d1.path / name), b = slurp(d2.path / name);
        CHECK(!a.empty());
        CHECK(a == b);
        CHECK(a.find('\r') == std::string::npos);  // LF endings only
    }
    std::string run_csv = slurp(d1.path / "run.csv");
    CHECK(run_csv.substr(0, 2) == "t,");

    // threshold failure yields exit code 1, not an exception
    json strict = cfg;
    strict["analysis"] = json::array(
        {{{"type", "interval"}, {"c_lo", -1.0}, {"c_hi", 1.0}, {"eps", 0.3},
          {"max_error", 1e-12}, {"at_t", 4.0}}});
    TempDir d3("sim3");
    CHECK(run_simulate(load_scenario(strict), d3.path.string()) == 1);
}

TEST_CASE("wave subcommand writes profile and metadata") {
    json cfg{{"version", 1},
             {"model",
              {{"variant", "B"},
               {"d", 1.0},
               {"mu", 1.0},
               {"kernel", {{"kind", "gaussian"}, {"alpha", 1.0}}},
               {"reaction",
                {{"kind", "shifted_logistic"},
                 {"r_profile",
                  {{"kind", "ramp"}, {"r_left", -0.5}, {"r_right", 1.0}, {"s_width", 10.0}}}}}}},
             {"grid", {{"x_min", -60.0}, {"x_max", 60.0}, {"dx", 0.1}}},
             {"initial", {{"kind", "constant"}, {"v", 1.0}}},
             {"run", {{"T", 1.0}, {"record_every", 1.0}}},
             {"analysis",
              json::array({{{"type", "wave"}, {"c", 1.0}, {"tol", 1e-9}, {"max_iter", 2000}}})}};
    TempDir dir("wave");
    CHECK(run_wave(load_scenario(cfg), dir.path.string()) == 0);
    json meta = json::parse(slurp(dir.path / "wave.meta.json"));
    CHECK(meta["converged"].get<bool>());
    CHECK(meta["residual"].get<double>() < 1e-8);
    CHECK(meta["connection"]["pass"].get<bool>());
    CHECK(slurp(dir.path / "wave.csv").find("x,W\n") == 0);
}

TEST_CASE("hypotheses subcommand writes a deterministic report") {
    json cfg{{"version", 1},
             {"model",
              {{"variant", "A"},
               {"d", 1.0},
               {"mu", 1.0},
               {"c_shift", 0.5},
               {"kernel", {{"kind", "dirac"}}},
               {"reaction",
                {{"kind", "shifted_logistic"},
                 {"r_profile",
                  {{"kind", "ramp"}, {"r_left", -0.5}, {"r_right", 1.0}, {"s_width", 10.0}}}}}}},
             {"grid", {{"x_min", -60.0}, {"x_max", 60.0}, {"dx", 0.2}}},
             {"initial", {{"kind", "bump"}, {"d", 1.0}}},
             {"run", {{"T", 1.0}, {"record_every", 1.0}}},
             {"analysis",
              json::array({{{"type", "hypotheses"}, {"seed", 42}, {"n_samples", 6}, {"t0", 0.5},
                            {"horizon", 8}}})}};
    TempDir d1("hyp1"), d2("hyp2");
    Scenario s = load_scenario(cfg);
    CHECK(run_hypotheses(s, d1.path.string()) == 0);
    CHECK(run_hypotheses(s, d2.path.string()) == 0);
    std::string a = slurp(d1.path / "report.json"), b = slurp(d2.path / "report.json");
    CHECK(a == b);
    json rep = json::parse(a);
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["checks"].size() == 3);
    CHECK(rep["limit_minus"]["pass"].get<bool>());
}

TEST_CASE("sweep runs one directory per value with a summary") {
    json cfg{{"version", 1},
             {"model",
              {{"variant", "A"},
               {"d", 1.0},
               {"mu", 1.0},
               {"c_shift", 0.0},
               {"kernel", {{"kind", "dirac"}}},
               {"reaction",
                {{"kind", "shifted_logistic"},
                 {"r_profile",
                  {{"kind", "ramp"}, {"r_left", -0.5}, {"r_right", 1.0}, {"s_width", 10.0}}}}}}},
             {"grid", {{"x_min", -30.0}, {"x_max", 30.0}, {"dx", 0.2}}},
             {"initial", {{"kind", "bump"}, {"d", 1.0}}},
             {"run", {{"T", 2.0}, {"record_every", 1.0}}},
             {"analysis", json::array()}};
    TempDir dir("sweep");
    CHECK(run_sweep(cfg, ".", "c_shift", "0:0.5:0.5", dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "c_shift=0" / "run.csv"));
    CHECK(fs::exists(dir.path / "c_shift=0.5" / "run.csv"));
    std::string summary = slurp(dir.path / "summary.csv");
    CHECK(summary.find("c_shift,exit_code") == 0);
}

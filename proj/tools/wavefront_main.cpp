#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavefront/scenario.hpp"

using namespace wavefront;

int main(int argc, char** argv) {
    CLI::App app{"wavefront: spreading speeds, forced waves, and steady states for "
                 "monotone evolution models in shifting habitats"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::string sweep_param, sweep_values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario JSON file")->required();
        sub->add_option("--out", out_dir, "output directory (default: .)");
    };
    CLI::App* speed = app.add_subcommand("speed", "closed-form / dispersion spreading speeds");
    CLI::App* simulate = app.add_subcommand("simulate", "time-step the model and run analyses");
    CLI::App* wave = app.add_subcommand("wave", "forced traveling wave by monotone iteration");
    CLI::App* steady = app.add_subcommand("steady", "half-line steady state vs shooting oracle");
    CLI::App* hypotheses = app.add_subcommand("hypotheses", "empirical hypothesis checks");
    CLI::App* sweep = app.add_subcommand("sweep", "run simulate over a parameter range");
    for (CLI::App* sub : {speed, simulate, wave, steady, hypotheses, sweep}) add_common(sub);
    sweep->add_option("--param", sweep_param, "model field to sweep (e.g. c_shift)")->required();
    sweep->add_option("--values", sweep_values, "range a:b:step")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("", "cannot open config file " + config_path);
            nlohmann::json config = nlohmann::json::parse(in);
            std::string dir = std::filesystem::path(config_path).parent_path().string();
            return run_sweep(config, dir.empty() ? "." : dir, sweep_param, sweep_values, out_dir);
        }
        Scenario s = load_scenario_file(config_path);
        if (speed->parsed()) return run_speed(s, out_dir);
        if (simulate->parsed()) return run_simulate(s, out_dir);
        if (wave->parsed()) return run_wave(s, out_dir);
        if (steady->parsed()) return run_steady(s, out_dir);
        if (hypotheses->parsed()) return run_hypotheses(s, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

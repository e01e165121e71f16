// rwasb_cli.cpp — scenario-driven command-line front end

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "rwasb/scenario.hpp"

namespace {

int run_scenario(const rwasb::scenario::Scenario& sc, const std::string& out_dir) {
    rwasb::scenario::run(sc, out_dir);
    std::cout << "wrote " << out_dir << "/manifest.txt\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic reduced dynamics of the zero-temperature RWA spin-boson "
                 "model"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", preset_name;

    auto* cmd_run = app.add_subcommand("run", "Run a scenario file and emit CSV tables");
    cmd_run->add_option("scenario", scenario_path, "scenario TOML file")->required();
    cmd_run->add_option("--out", out_dir, "output directory");

    auto* cmd_constants =
        app.add_subcommand("constants", "Print derived constants without running trajectories");
    cmd_constants->add_option("scenario", scenario_path, "scenario TOML file")->required();

    auto* cmd_preset = app.add_subcommand("preset", "Run a built-in golden scenario");
    cmd_preset->add_option("name", preset_name, "figure1 or figure2")->required();
    cmd_preset->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (cmd_run->parsed()) {
            return run_scenario(rwasb::scenario::load_scenario(scenario_path), out_dir);
        }
        if (cmd_constants->parsed()) {
            std::cout << rwasb::scenario::report_constants(
                rwasb::scenario::load_scenario(scenario_path));
            return 0;
        }
        if (cmd_preset->parsed()) {
            return run_scenario(
                rwasb::scenario::parse_scenario(rwasb::scenario::preset_text(preset_name)),
                out_dir);
        }
    } catch (const rwasb::scenario::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

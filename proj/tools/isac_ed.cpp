#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>

#include "csv.h"
#include "experiments.h"
#include "isac/stats.h"
#include "scenario.h"

namespace {

enum Exit {
    kOk = 0,
    kOther = 1,
    kUsage = 2,
    kUnknownExperiment = 3,
    kBadScenario = 4,
    kUnwritable = 5,
    kNumerical = 6,
};

}  // namespace

int main(int argc, char** argv) {
    using namespace isac::app;
    CLI::App cli{"Energy-detection radar analysis for ZP/CP-OFDM waveforms"};
    std::string experiment, scenario_path, out_path, model;
    long trials = -1;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string names = "print-scene";
    for (const auto& n : experiment_names()) names += ", " + n;
    cli.add_option("experiment", experiment, "One of: " + names)->required();
    cli.add_option("--scenario", scenario_path, "Scenario file");
    cli.add_option("--out", out_path, "Output file (stdout when omitted)");
    auto* trials_opt = cli.add_option("--trials", trials, "Monte Carlo trials (overrides sim.trials)")
                           ->check(CLI::NonNegativeNumber);
    auto* seed_opt = cli.add_option("--seed", seed, "Master seed (overrides sim.seed)");
    auto* model_opt = cli.add_option("--model", model, "PD model (overrides detect.model)")
                          ->check(CLI::IsMember({"exact", "gamma", "gaussian", "auto"}));
    cli.add_option("--workers", workers, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return kUsage;
    }

    const bool known = experiment == "print-scene" ||
                       std::find(experiment_names().begin(), experiment_names().end(), experiment) !=
                           experiment_names().end();
    if (!known) {
        std::cerr << "isac-ed: unknown experiment '" << experiment << "' (expected " << names << ")\n";
        return kUnknownExperiment;
    }
    if (experiment != "conformance" && scenario_path.empty()) {
        std::cerr << "isac-ed: --scenario is required for " << experiment << "\n";
        return kUsage;
    }

    Scenario scenario;
    if (!scenario_path.empty()) {
        try {
            scenario = load_scenario(scenario_path);
        } catch (const ScenarioError& e) {
            std::cerr << "isac-ed: " << scenario_path << ": " << e.what() << "\n";
            return kBadScenario;
        } catch (const std::exception& e) {
            std::cerr << "isac-ed: " << e.what() << "\n";
            return kBadScenario;
        }
    }

    RunOptions opt;
    if (trials_opt->count()) opt.trials = trials;
    if (seed_opt->count()) opt.seed = seed;
    if (model_opt->count()) opt.model = model;
    opt.workers = workers;

    std::string text;
    try {
        text = experiment == "print-scene" ? print_scene(scenario) : run_experiment(experiment, scenario, opt).str();
    } catch (const ScenarioError& e) {
        std::cerr << "isac-ed: " << scenario_path << ": " << e.what() << "\n";
        return kBadScenario;
    } catch (const isac::ConvergenceError& e) {
        std::cerr << "isac-ed: numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::overflow_error& e) {
        std::cerr << "isac-ed: numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "isac-ed: " << e.what() << "\n";
        return kOther;
    }

    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return kOk;
    }
    try {
        write_atomic(out_path, text);
    } catch (const OutputError& e) {
        std::cerr << "isac-ed: " << e.what() << "\n";
        return kUnwritable;
    }
    return kOk;
}

// SPDX-License-Identifier: Apache-2.0
//
// isacsim: Monte Carlo driver for cooperative RSS localization with ISAC subnetworks.
//
//   isacsim simulate --config run.ini [--trials N] [--seed S] [--workers W] [--out DIR] [--experiment NAME]
//   isacsim validate --config run.ini
//   isacsim presets [--show NAME]

#include "isac/config.hpp"
#include "isac/experiment.hpp"
#include "isac/output.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int report(const isac::ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
    return kExitConfig;
}

isac::ExperimentConfig resolve(const std::string& config_path, const std::string& experiment) {
    isac::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = isac::load_config(config_path);
        if (!experiment.empty()) {
            // Switching experiment swaps in that preset's sweep and strategies.
            auto e = isac::parse_experiment(experiment);
            if (!e) throw isac::ConfigError({"--experiment: unknown experiment '" + experiment + "'"});
            const auto p = isac::preset(*e);
            cfg.experiment = *e;
            cfg.sweep = p.sweep;
            cfg.strategies = p.strategies;
            cfg.channel.kind = p.channel.kind;
        }
    } else if (!experiment.empty()) {
        auto e = isac::parse_experiment(experiment);
        if (!e) throw isac::ConfigError({"--experiment: unknown experiment '" + experiment + "'"});
        cfg = isac::preset(*e);
    } else {
        throw isac::ConfigError({"--config: required unless --experiment names a preset"});
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative ISAC subnetwork localization simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string experiment;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string out_dir = "results";

    auto* simulate = app.add_subcommand("simulate", "Run an experiment and write CSV/JSON outputs");
    simulate->add_option("--config", config_path, "Configuration file");
    simulate->add_option("--trials", trials, "Override the trial count");
    simulate->add_option("--seed", seed, "Override the experiment seed");
    simulate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--experiment", experiment, "Experiment preset name");

    auto* validate = app.add_subcommand("validate", "Check a configuration without running it");
    validate->add_option("--config", config_path, "Configuration file")->required();

    std::string show;
    auto* presets = app.add_subcommand("presets", "List experiment presets");
    presets->add_option("--show", show, "Print the full configuration of one preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*presets) {
            if (show.empty()) {
                for (const auto& name : isac::preset_names()) std::cout << name << "\n";
                return 0;
            }
            auto e = isac::parse_experiment(show);
            if (!e) throw isac::ConfigError({"--show: unknown preset '" + show + "'"});
            std::cout << isac::render_config(isac::preset(*e));
            return 0;
        }

        if (*validate) {
            const auto cfg = isac::load_config(config_path);
            isac::validate(cfg);
            const auto points = isac::resolve_points(cfg);
            std::cout << "ok: " << isac::to_string(cfg.experiment) << ", " << points.size()
                      << " sweep points x " << cfg.strategies.size() << " strategies x " << cfg.trials
                      << " trials\n";
            return 0;
        }

        auto cfg = resolve(config_path, experiment);
        if (trials) cfg.trials = *trials;
        if (seed) cfg.seed = *seed;
        isac::validate(cfg);

        const auto start = std::chrono::steady_clock::now();
        const auto result = isac::run_experiment(cfg, workers);
        isac::write_outputs(result, out_dir);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        std::cout << isac::summary_csv(result.summary);
        std::cerr << "wrote " << result.records.size() << " records to " << out_dir << " in "
                  << elapsed.count() << " s\n";
        return 0;
    } catch (const isac::ConfigError& e) {
        return report(e);
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return kExitRuntime;
    }
}

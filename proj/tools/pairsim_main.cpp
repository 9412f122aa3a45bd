// Experiment driver: runs one configured experiment and writes machine
// readable results (JSON record + CSV payloads).
//
// Exit codes: 0 ok, 2 config error, 3 convergence failure, 4 resource guard,
// 1 anything else.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pairsim/errors.hpp"
#include "pairsim/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitGuard = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairing-model statevector experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<std::string> out_dir;
    bool qpe_in_loop = false;

    CLI::App* run = app.add_subcommand("run", "execute one experiment config");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--shots", shots, "override the shot count (0 = exact)");
    run->add_option("--out", out_dir, "override the output directory");
    run->add_flag("--qpe-in-loop", qpe_in_loop,
                  "use the sampled projection filter inside the variational loop");

    CLI11_PARSE(app, argc, argv);

    try {
        pairsim::ExperimentConfig config =
            pairsim::ExperimentConfig::from_json_file(config_path);
        if (seed) config.seed = *seed;
        if (shots) config.shots = *shots;
        if (out_dir) config.out_dir = *out_dir;
        if (qpe_in_loop) config.qpe_in_loop = true;
        pairsim::run_experiment(config, config.out_dir);
        std::cout << "wrote results for '" << pairsim::to_string(config.experiment) << "' to "
                  << config.out_dir << "\n";
        return kExitOk;
    } catch (const pairsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const pairsim::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const pairsim::GuardError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknown;
    }
}

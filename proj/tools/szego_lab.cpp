#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "szego/experiment.hpp"

using namespace szego;

int main(int argc, char** argv) {
    CLI::App app{"Equivariant Szego kernel experiments on products of spheres"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> tolerance_scale;

    const std::map<std::string, int (*)(const ExperimentConfig&)> commands = {
        {"dims", cmd_dims},
        {"kernel", cmd_kernel},
        {"oscillatory", cmd_oscillatory},
        {"loci", cmd_loci},
        {"calibrate", cmd_calibrate},
    };
    const std::map<std::string, std::string> help = {
        {"dims", "Isotype dimensions against the volume prediction"},
        {"kernel", "Diagonal kernel growth and off-locus decay"},
        {"oscillatory", "Model oscillatory integrals against closed forms"},
        {"loci", "Locus classification and moment-map checks"},
        {"calibrate", "Measure the isotype-label convention scale"},
    };
    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", config_path, "Experiment configuration (JSON)");
        sub->add_option("--out", out, "Output directory");
        sub->add_option("--seed", seed, "Random seed");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--tolerance-scale", tolerance_scale, "Multiply every tolerance")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    if (out) cfg.output_dir = *out;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (tolerance_scale) cfg.tolerance_scale = *tolerance_scale;

    for (const auto& [name, fn] : commands)
        if (app.got_subcommand(name)) {
            int rc = fn(cfg);
            std::cout << name << ": " << (rc == kExitPass ? "pass" : rc == kExitConfig ? "configuration error" : "verification failed")
                      << " (" << cfg.output_dir << "/summary.json)\n";
            return rc;
        }
    return kExitConfig;
}

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace szego {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitPass = 0, kExitConfig = 1, kExitVerification = 2 };

struct Tolerances {
    double dim_exponent = -1.0;  // negative: 0.05 (d - 1)
    double dim_stability = 0.05;
    double diag_exponent = 0.1;
    double diag_ratio = 0.10;
    int decay_order = 3;
    double kernel_bound = 3.0;
    double gaussian = 1e-8;
    double inner_ratio_target = 0.5;
    double inner_ratio = 0.15;
    double chain = 0.02;
    double radial = 1e-10;
    double orthogonality = 1e-8;
    double equivariance = 1e-10;
    double d_gt = 1e-6;
    double calibration_spread = 0.02;
    double calibration_snap = 0.05;
};

struct ExperimentConfig {
    std::vector<int> weights{1, 2};
    double nu = 1.0;
    int k_min = 8;
    int k_max = 60;
    int k_step = 1;
    bool admissible_filter = true;

    bool measure_scale = true;
    double scale = 0.5;
    std::vector<std::pair<int, int>> calibration_pairs{{8, 16}, {12, 24}, {16, 32}};
    int calibration_levels = 81;

    double inner_tol = 1e-11;
    double cutoff_D = 10.0;
    int strata = 256;
    int replicas = 8;
    int circle_points = 64;
    int volume_k_ref = 2000;

    Tolerances tol;
    double tolerance_scale = 1.0;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int threads = 1;

    nlohmann::json point{{"kind", "level"}};
    double off_locus_offset = 0.25;
    bool has_pair = false;
    nlohmann::json pair_x, pair_y;
    int pair_k_min = 2;
    int pair_k_max = 20;

    std::vector<double> inner_k{100.0, 400.0, 1600.0};
    double chain_k = 1e4;
    double vartheta = 1.0;
    double inner_r = 0.3;

    int loci_samples = 200;

    nlohmann::json echo() const;
};

/// Parses a JSON config; unknown keys and ill-typed values are errors.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

int cmd_dims(const ExperimentConfig& cfg);
int cmd_kernel(const ExperimentConfig& cfg);
int cmd_oscillatory(const ExperimentConfig& cfg);
int cmd_loci(const ExperimentConfig& cfg);
int cmd_calibrate(const ExperimentConfig& cfg);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace szego

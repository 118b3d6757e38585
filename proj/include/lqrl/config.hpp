#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lqrl/baselines.hpp"
#include "lqrl/trainer.hpp"

namespace lqrl {

/**
 * Union of every module's knobs, loaded from one flat JSON file. Unknown
 * keys are rejected by name; missing keys fall back to the documented
 * defaults (see CONFIG.md).
 */
struct ExperimentConfig {
    EnvConfig env;
    LyapunovParams lyapunov;
    RewardWeights rewards;
    TrainConfig train;
    EncodingConfig encoding;
    PidParams pid;
    LinearPolicyParams linear;
    double v_set = 20.0;           // set speed of the linear baseline [m/s]
    VehicleState x0{0.0, 0.0, 20.0};  // evaluation-scenario start
    double sim_duration = 30.0;    // [s]
    double stable_z_bound = 10.0;  // |z| bound of the comparison stability flag [m]
    std::string out_dir = ".";

    /// sim_duration/dt as an exact step count (validated to be integral).
    int sim_steps() const;

    /// Runs every component invariant; throws ConfigError naming the field.
    void validate() const;
};

const char* to_string(FdScheme scheme);
FdScheme fd_scheme_from_string(const std::string& name);

/// Parse + validate config text. Keys that fell back to defaults are
/// appended to `defaulted_keys` when non-null.
ExperimentConfig parse_config(const std::string& text,
                              std::vector<std::string>* defaulted_keys = nullptr);

/// Load a config file. Throws ConfigError (parse/validation) or IoError.
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::vector<std::string>* defaulted_keys = nullptr);

/// Serialize with every key present; parse_config(save_config(c)) == c.
std::string save_config(const ExperimentConfig& cfg);

}  // namespace lqrl

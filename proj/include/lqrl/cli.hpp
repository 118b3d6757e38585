#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lqrl/agent.hpp"
#include "lqrl/baselines.hpp"
#include "lqrl/config.hpp"
#include "lqrl/metrics.hpp"
#include "lqrl/sim.hpp"

namespace lqrl {

/// metrics.csv round-trip helpers (17-significant-digit serialization).
void write_metrics_csv(const MetricsReport& report, std::ostream& os);
MetricsReport read_metrics_csv(std::istream& is);

struct TrainOutput {
    AgentFile agent;
    std::vector<EpisodeStats> history;
};

/// Train a policy from the config; persist the agent and per-episode history.
TrainOutput run_train(const ExperimentConfig& cfg,
                      const std::filesystem::path& agent_path,
                      const std::filesystem::path& history_path);

struct SimulateOutput {
    SimResult sim;
    MetricsReport metrics;
};

/**
 * Closed-loop run of sim_duration/dt steps under the scripted lead; writes
 * simulation_log.csv, metrics.csv and simulation_plots.svg into out_dir.
 * On a non-finite state the partial log is flushed before a NumericError
 * (carrying the step index) is thrown.
 */
SimulateOutput run_simulate(const ExperimentConfig& cfg, const AgentFile& agent,
                            const std::filesystem::path& out_dir);

/// Recompute metrics and plots from an existing log CSV (no simulation).
MetricsReport run_analyze(const std::filesystem::path& log_path,
                          const std::filesystem::path& out_dir);

/**
 * Run PID, the linear-feedback substitute and (when an agent is given) the
 * trained policy on the identical scenario; write comparison.csv into
 * out_dir and an aligned table (with the stability-flag definition in the
 * footer) to `table_out`.
 */
std::vector<ComparisonRow> run_compare(const ExperimentConfig& cfg,
                                       const std::optional<AgentFile>& agent,
                                       const std::filesystem::path& out_dir,
                                       bool fit_linear_baseline, std::ostream& table_out);

/// Full command-line entry point (train/simulate/analyze/compare).
/// Returns the process exit code: 0 ok, 2 config, 3 numeric, 4 I/O.
int cli_main(int argc, const char* const* argv);

}  // namespace lqrl

#include "lqrl/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lqrl/errors.hpp"
#include "lqrl/svg.hpp"
#include "lqrl/trajectory.hpp"

namespace lqrl {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

constexpr const char* kMetricsHeader = "rmse_z,mean_abs_u,mean_vdot,final_v,duration,n_steps";

}  // namespace

void write_metrics_csv(const MetricsReport& report, std::ostream& os) {
    os << kMetricsHeader << '\n'
       << format_double(report.rmse_z) << ',' << format_double(report.mean_abs_u) << ','
       << format_double(report.mean_vdot) << ',' << format_double(report.final_v) << ','
       << format_double(report.duration) << ',' << report.n_steps << '\n';
}

MetricsReport read_metrics_csv(std::istream& is) {
    std::string header, row;
    if (!std::getline(is, header) || header != kMetricsHeader)
        throw IoError("metrics CSV: bad or missing header");
    if (!std::getline(is, row)) throw IoError("metrics CSV: missing data row");
    MetricsReport r;
    unsigned long long n = 0;
    if (std::sscanf(row.c_str(), "%lf,%lf,%lf,%lf,%lf,%llu", &r.rmse_z, &r.mean_abs_u,
                    &r.mean_vdot, &r.final_v, &r.duration, &n) != 6)
        throw IoError("metrics CSV: cannot parse data row '" + row + "'");
    r.n_steps = static_cast<std::size_t>(n);
    return r;
}

TrainOutput run_train(const ExperimentConfig& cfg, const fs::path& agent_path,
                      const fs::path& history_path) {
    cfg.validate();
    const TrainResult result =
        train(cfg.train, cfg.env, cfg.lyapunov, cfg.rewards, cfg.encoding);

    TrainOutput out;
    out.agent.version = 1;
    out.agent.params = result.params;
    out.agent.encoding = cfg.encoding;
    out.agent.episodes = cfg.train.episodes;
    out.agent.seed = cfg.train.seed;
    out.agent.final_objective = result.history.back().objective;
    out.history = result.history;

    save_agent(out.agent, agent_path);

    std::ostringstream history_csv;
    history_csv << "episode,objective,total_reward,total_penalty\n";
    for (std::size_t e = 0; e < out.history.size(); ++e) {
        history_csv << e << ',' << format_double(out.history[e].objective) << ','
                    << format_double(out.history[e].total_reward) << ','
                    << format_double(out.history[e].total_penalty) << '\n';
    }
    write_text_file(history_path, history_csv.str());
    return out;
}

SimulateOutput run_simulate(const ExperimentConfig& cfg, const AgentFile& agent,
                            const fs::path& out_dir) {
    cfg.validate();
    agent.params.validate();
    agent.encoding.validate();
    ensure_dir(out_dir);

    // The agent carries the encoding it was trained with.
    const auto controller = make_policy_controller(agent.params, agent.encoding, cfg.env);
    const double v_l0 = cfg.x0.v_e + cfg.x0.v_r;
    SimulateOutput out;
    out.sim = simulate_closed_loop(*controller, cfg.x0, v_l0, cfg.sim_steps(), cfg.env,
                                   cfg.lyapunov);

    {
        std::ostringstream csv;
        write_csv(out.sim.log, csv);
        write_text_file(out_dir / "simulation_log.csv", csv.str());
    }
    if (out.sim.failed_step.has_value()) {
        std::ostringstream oss;
        oss << "simulate: non-finite state at step " << *out.sim.failed_step
            << " (partial log flushed to " << (out_dir / "simulation_log.csv").string()
            << ")";
        throw NumericError(oss.str());
    }

    out.metrics = report(out.sim.log, cfg.lyapunov);
    {
        std::ostringstream csv;
        write_metrics_csv(out.metrics, csv);
        write_text_file(out_dir / "metrics.csv", csv.str());
    }
    write_trajectory_svg(out.sim.log, out_dir / "simulation_plots.svg");
    return out;
}

MetricsReport run_analyze(const fs::path& log_path, const fs::path& out_dir) {
    std::istringstream in(slurp(log_path));
    const TrajectoryLog log = read_csv(in);
    ensure_dir(out_dir);

    const MetricsReport metrics = report(log);
    {
        std::ostringstream csv;
        write_metrics_csv(metrics, csv);
        write_text_file(out_dir / "metrics.csv", csv.str());
    }
    write_trajectory_svg(log, out_dir / "simulation_plots.svg");
    return metrics;
}

std::vector<ComparisonRow> run_compare(const ExperimentConfig& cfg,
                                       const std::optional<AgentFile>& agent,
                                       const fs::path& out_dir, bool fit_linear_baseline,
                                       std::ostream& table_out) {
    cfg.validate();
    ensure_dir(out_dir);

    LinearPolicyParams linear = cfg.linear;
    if (fit_linear_baseline) {
        const RolloutContext ctx{cfg.env, cfg.lyapunov, cfg.rewards, cfg.encoding};
        linear = train_linear(cfg.train, ctx, cfg.v_set, cfg.linear);
    }

    std::vector<std::unique_ptr<Controller>> owned;
    owned.push_back(make_pid_controller(cfg.pid, cfg.env));
    owned.push_back(make_linear_controller(linear, cfg.v_set, cfg.env));
    if (agent.has_value())
        owned.push_back(make_policy_controller(agent->params, agent->encoding, cfg.env));

    std::vector<Controller*> controllers;
    for (const auto& c : owned) controllers.push_back(c.get());

    Scenario scenario;
    scenario.x0 = cfg.x0;
    scenario.steps = cfg.sim_steps();
    scenario.env = cfg.env;
    scenario.lyapunov = cfg.lyapunov;
    scenario.stable_z_bound = cfg.stable_z_bound;

    const std::vector<ComparisonRow> rows = compare(controllers, scenario);

    std::ostringstream csv;
    csv << "controller,rmse_z,mean_abs_u,stable,diverged\n";
    for (const ComparisonRow& row : rows) {
        csv << row.controller << ',' << format_double(row.rmse_z) << ','
            << format_double(row.mean_abs_u) << ',' << (row.stable ? "true" : "false")
            << ',' << (row.diverged ? "true" : "false") << '\n';
    }
    write_text_file(out_dir / "comparison.csv", csv.str());

    char line[160];
    std::snprintf(line, sizeof line, "%-20s %12s %16s %8s %10s", "controller",
                  "rmse_z [m]", "mean|u| [m/s^2]", "stable", "diverged");
    table_out << line << '\n';
    for (const ComparisonRow& row : rows) {
        std::snprintf(line, sizeof line, "%-20s %12.4f %16.4f %8s %10s",
                      row.controller.c_str(), row.rmse_z, row.mean_abs_u,
                      row.stable ? "yes" : "no", row.diverged ? "yes" : "no");
        table_out << line << '\n';
    }
    table_out << "--\n"
              << "stable := max|z| <= " << cfg.stable_z_bound
              << " m and mean dV/dt <= 0 over the " << cfg.sim_duration
              << " s scenario; diverged := trajectory turned non-finite.\n"
              << "linear_substitute is a linear state-feedback stand-in for a learned\n"
              << "classical baseline, trainable with the same finite-difference pipeline.\n";
    return rows;
}

namespace {

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Lyapunov-aware quantum-inspired reinforcement learning for "
                 "adaptive cruise control"};
    app.require_subcommand(1);

    std::string config_path;
    std::string agent_path;
    std::string out_path;
    std::string out_dir;
    std::string log_path;
    std::string history_path;
    bool fit_linear = false;
    std::int64_t seed_override = -1;

    const auto load = [&](bool announce_defaults) {
        ExperimentConfig cfg;
        if (!config_path.empty()) {
            std::vector<std::string> defaulted;
            cfg = load_config(config_path, &defaulted);
            if (announce_defaults && !defaulted.empty()) {
                std::cerr << "notice: " << defaulted.size()
                          << " config keys missing, defaults applied:";
                for (const std::string& key : defaulted) std::cerr << ' ' << key;
                std::cerr << '\n';
            }
        }
        if (seed_override >= 0) cfg.train.seed = static_cast<std::uint64_t>(seed_override);
        return cfg;
    };

    CLI::App* cmd_train = app.add_subcommand("train", "Train a policy agent");
    cmd_train->add_option("--config", config_path, "Config file (JSON)");
    cmd_train->add_option("--out", out_path, "Agent output path");
    cmd_train->add_option("--history", history_path, "Training-history CSV path");
    cmd_train->add_option("--seed", seed_override, "Override the config seed");
    cmd_train->callback([&] {
        const ExperimentConfig cfg = load(true);
        const fs::path dir = cfg.out_dir;
        ensure_dir(dir);
        const fs::path agent_out = out_path.empty() ? dir / "agent.txt" : fs::path(out_path);
        const fs::path history_out =
            history_path.empty() ? dir / "history.csv" : fs::path(history_path);
        const TrainOutput out = run_train(cfg, agent_out, history_out);
        std::cout << "final objective: " << format_double(out.agent.final_objective)
                  << '\n'
                  << "agent written to " << agent_out.string() << '\n';
    });

    CLI::App* cmd_sim = app.add_subcommand("simulate", "Closed-loop run of a trained agent");
    cmd_sim->add_option("--config", config_path, "Config file (JSON)");
    cmd_sim->add_option("--agent", agent_path, "Agent file")->required();
    cmd_sim->add_option("--out-dir", out_dir, "Output directory");
    cmd_sim->add_option("--seed", seed_override, "Override the config seed");
    cmd_sim->callback([&] {
        const ExperimentConfig cfg = load(true);
        const AgentFile agent = load_agent(agent_path);
        const fs::path dir = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
        const SimulateOutput out = run_simulate(cfg, agent, dir);
        if (out.sim.distance_warning)
            std::cerr << "warning: inter-vehicle distance went negative during the run\n";
        std::cout << "rmse_z: " << format_double(out.metrics.rmse_z) << '\n'
                  << "mean|u|: " << format_double(out.metrics.mean_abs_u) << '\n'
                  << "mean dV/dt: " << format_double(out.metrics.mean_vdot) << '\n'
                  << "final V: " << format_double(out.metrics.final_v) << '\n'
                  << "outputs in " << dir.string() << '\n';
    });

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "Recompute metrics from a log CSV");
    cmd_analyze->add_option("--log", log_path, "simulation_log.csv to analyze")->required();
    cmd_analyze->add_option("--out-dir", out_dir, "Output directory");
    cmd_analyze->callback([&] {
        const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
        const MetricsReport metrics = run_analyze(log_path, dir);
        std::cout << "rmse_z: " << format_double(metrics.rmse_z) << '\n'
                  << "mean|u|: " << format_double(metrics.mean_abs_u) << '\n'
                  << "mean dV/dt: " << format_double(metrics.mean_vdot) << '\n'
                  << "final V: " << format_double(metrics.final_v) << '\n'
                  << "outputs in " << dir.string() << '\n';
    });

    CLI::App* cmd_compare = app.add_subcommand("compare", "Controller comparison table");
    cmd_compare->add_option("--config", config_path, "Config file (JSON)");
    cmd_compare->add_option("--agent", agent_path, "Trained agent (optional)");
    cmd_compare->add_option("--out-dir", out_dir, "Output directory");
    cmd_compare->add_flag("--train-linear", fit_linear,
                          "Fit the linear baseline with the FD pipeline first");
    cmd_compare->add_option("--seed", seed_override, "Override the config seed");
    cmd_compare->callback([&] {
        const ExperimentConfig cfg = load(true);
        std::optional<AgentFile> agent;
        if (!agent_path.empty()) {
            if (fs::exists(agent_path)) {
                agent = load_agent(agent_path);
            } else {
                std::cerr << "notice: agent file '" << agent_path
                          << "' not found; lqrl row omitted\n";
            }
        }
        const fs::path dir = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
        run_compare(cfg, agent, dir, fit_linear, std::cout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace lqrl

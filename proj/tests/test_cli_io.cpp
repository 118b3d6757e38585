#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lqrl/cli.hpp"
#include "lqrl/errors.hpp"
#include "lqrl/rng.hpp"
#include "lqrl/svg.hpp"

using namespace lqrl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "lqrl_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

AgentFile saturating_agent() {
    AgentFile agent;
    agent.params.raw = {0, 0, 0, 0, 0, 0.0, 50.0};  // s = 0, b = 50: tanh pins at +1
    return agent;
}

}  // namespace

TEST_CASE("parse_config: empty object yields the documented defaults") {
    std::vector<std::string> defaulted;
    const ExperimentConfig cfg = parse_config("{}", &defaulted);
    CHECK(cfg.env.dt == 0.05);
    CHECK(cfg.env.h == 1.2);
    CHECK(cfg.env.d0 == 5.0);
    CHECK(cfg.env.u_min == -3.0);
    CHECK(cfg.env.u_max == 3.0);
    CHECK(cfg.lyapunov.beta == 0.6);
    CHECK(cfg.lyapunov.gamma == 0.05);
    CHECK(cfg.lyapunov.lambda == 2.0);
    CHECK(cfg.lyapunov.c == 0.05);
    CHECK(cfg.train.alpha == 0.02);
    CHECK(cfg.train.episodes == 60);
    CHECK(cfg.train.horizon == 400);
    CHECK(cfg.sim_duration == 30.0);
    CHECK(cfg.rewards.w_z == 1.0);
    CHECK(cfg.rewards.w_a == 0.1);
    CHECK(cfg.rewards.w_j == 0.1);
    CHECK(defaulted.size() >= 30);  // every key was defaulted
}

TEST_CASE("parse_config: violations are reported by field name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"dt": -1})"), doctest::Contains("dt"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"episodes": 0})"),
                         doctest::Contains("episodes"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"banana": 1})"), doctest::Contains("banana"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"sim_duration": 0.07})"),
                         doctest::Contains("sim_duration"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"fd_scheme": "quantum"})"),
                         doctest::Contains("fd_scheme"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);       // parse error
    CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);   // not an object
    CHECK_THROWS_AS(parse_config(R"({"dt": "x"})"), ConfigError);  // wrong type
}

TEST_CASE("config: save -> parse roundtrip is identity") {
    ExperimentConfig cfg = parse_config("{}");
    cfg.env.dt = 0.025;
    cfg.sim_duration = 12.5;
    cfg.train.seed = 991;
    cfg.train.scheme = FdScheme::Spsa;
    cfg.lyapunov.lambda = 0.5;
    cfg.pid.kp = 1.25;
    cfg.x0.v_e = 17.0;
    const ExperimentConfig back = parse_config(save_config(cfg));
    CHECK(back.env.dt == cfg.env.dt);
    CHECK(back.sim_duration == cfg.sim_duration);
    CHECK(back.train.seed == cfg.train.seed);
    CHECK(back.train.scheme == cfg.train.scheme);
    CHECK(back.lyapunov.lambda == cfg.lyapunov.lambda);
    CHECK(back.pid.kp == cfg.pid.kp);
    CHECK(back.x0.v_e == cfg.x0.v_e);
    CHECK(save_config(back) == save_config(cfg));
}

TEST_CASE("agent file: format -> parse roundtrip and validation") {
    AgentFile agent;
    agent.params = init_policy_params(123);
    agent.episodes = 60;
    agent.seed = 42;
    agent.final_objective = -812.25;
    const std::string text = format_agent(agent);
    const AgentFile back = parse_agent(text);
    CHECK(back.params.raw == agent.params.raw);
    CHECK(back.encoding.z_scale == agent.encoding.z_scale);
    CHECK(back.episodes == agent.episodes);
    CHECK(back.seed == agent.seed);
    CHECK(back.final_objective == agent.final_objective);

    CHECK_THROWS_WITH_AS(parse_agent("nonsense v1\n"), doctest::Contains("magic"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_agent("lqrl-agent v9\n"), doctest::Contains("version"),
                         ConfigError);
    // All 7 parameters are mandatory.
    std::string missing = text;
    missing.erase(missing.find("theta3"), missing.find("theta4") - missing.find("theta3"));
    CHECK_THROWS_WITH_AS(parse_agent(missing), doctest::Contains("theta3"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_agent(text + "extra 1\n"), doctest::Contains("extra"),
                         ConfigError);
}

TEST_CASE("trajectory CSV: bit-exact roundtrip at 17 significant digits") {
    TrajectoryLog log;
    SplitMix64 gen(71);
    for (int k = 1; k <= 200; ++k) {
        log.push_row(0.05 * k, gen.uniform(-300, 300), gen.uniform(-50, 50),
                     gen.uniform(-10, 60), gen.uniform(-3, 3), gen.uniform(-1.3, 1.3),
                     gen.uniform(0, 1e5), gen.uniform(-1e4, 1e4));
    }
    std::stringstream buffer;
    write_csv(log, buffer);
    const TrajectoryLog back = read_csv(buffer);
    CHECK(back.t == log.t);
    CHECK(back.z == log.z);
    CHECK(back.v_r == log.v_r);
    CHECK(back.v_e == log.v_e);
    CHECK(back.u == log.u);
    CHECK(back.a_l == log.a_l);
    CHECK(back.v == log.v);
    CHECK(back.vdot == log.vdot);
}

TEST_CASE("trajectory CSV: malformed inputs carry row/column diagnostics") {
    const std::string header = "t,z,v_r,v_e,u,a_l,V,Vdot\n";
    {
        std::istringstream empty("");
        CHECK_THROWS_AS(read_csv(empty), IoError);
    }
    {
        std::istringstream bad_header("time,z\n");
        CHECK_THROWS_WITH_AS(read_csv(bad_header), doctest::Contains("header"), IoError);
    }
    {
        std::istringstream no_rows(header);
        CHECK_THROWS_WITH_AS(read_csv(no_rows), doctest::Contains("no data rows"), IoError);
    }
    {
        std::istringstream bad_field(header + "0.05,1,2,3,oops,0,0,0\n");
        CHECK_THROWS_WITH_AS(read_csv(bad_field),
                             doctest::Contains("row 2, column 5"), IoError);
    }
    {
        std::istringstream short_row(header + "0.05,1,2\n");
        CHECK_THROWS_WITH_AS(read_csv(short_row), doctest::Contains("expected 8 columns"),
                             IoError);
    }
}

TEST_CASE("run_simulate: single-step run produces header plus one row") {
    const fs::path dir = fresh_dir("sim_one_step");
    const ExperimentConfig cfg = parse_config(R"({"sim_duration": 0.05})");
    const SimulateOutput out = run_simulate(cfg, saturating_agent(), dir);
    CHECK(out.sim.log.size() == 1);
    const std::string csv = slurp(dir / "simulation_log.csv");
    CHECK(count_occurrences(csv, "\n") == 2);  // header + one data row
}

TEST_CASE("run_simulate: byte-identical outputs for identical inputs") {
    const fs::path dir_a = fresh_dir("sim_repeat_a");
    const fs::path dir_b = fresh_dir("sim_repeat_b");
    const ExperimentConfig cfg = parse_config(R"({"sim_duration": 5.0})");
    const AgentFile agent = saturating_agent();
    run_simulate(cfg, agent, dir_a);
    run_simulate(cfg, agent, dir_b);
    CHECK(slurp(dir_a / "simulation_log.csv") == slurp(dir_b / "simulation_log.csv"));
    CHECK(slurp(dir_a / "metrics.csv") == slurp(dir_b / "metrics.csv"));
    CHECK(slurp(dir_a / "simulation_plots.svg") == slurp(dir_b / "simulation_plots.svg"));
}

TEST_CASE("run_simulate: pinned-throttle agent integrates to v_e0 + 90 over 30 s") {
    const fs::path dir = fresh_dir("sim_saturated");
    const ExperimentConfig cfg = parse_config("{}");
    const SimulateOutput out = run_simulate(cfg, saturating_agent(), dir);
    REQUIRE(out.sim.log.size() == 600);
    for (double u : out.sim.log.u) CHECK(u == 3.0);
    CHECK(out.sim.log.v_e.back() == doctest::Approx(110.0).epsilon(1e-9));
    CHECK(out.sim.distance_warning);  // the gap collapses under full throttle
}

TEST_CASE("run_analyze: reproduces run_simulate metrics from the CSV alone") {
    const fs::path dir = fresh_dir("analyze_consistency");
    ExperimentConfig cfg = parse_config(R"({"sim_duration": 10.0})");
    AgentFile agent;
    agent.params = init_policy_params(6);
    const SimulateOutput sim = run_simulate(cfg, agent, dir);
    const MetricsReport analyzed = run_analyze(dir / "simulation_log.csv", dir / "out");
    CHECK(analyzed.rmse_z == doctest::Approx(sim.metrics.rmse_z).epsilon(1e-12));
    CHECK(analyzed.mean_abs_u == doctest::Approx(sim.metrics.mean_abs_u).epsilon(1e-12));
    CHECK(analyzed.mean_vdot == doctest::Approx(sim.metrics.mean_vdot).epsilon(1e-12));
    CHECK(analyzed.final_v == doctest::Approx(sim.metrics.final_v).epsilon(1e-12));
    CHECK(analyzed.n_steps == sim.metrics.n_steps);
}

TEST_CASE("run_analyze: hand-written three-row CSV gives hand metrics") {
    const fs::path dir = fresh_dir("analyze_hand");
    spit(dir / "log.csv",
         "t,z,v_r,v_e,u,a_l,V,Vdot\n"
         "0.1,1,0,0,0.5,0,1.5,0.3\n"
         "0.2,-2,0,0,-1,0,2.5,-0.1\n"
         "0.3,2,0,0,0,0,3.5,0.2\n");
    const MetricsReport m = run_analyze(dir / "log.csv", dir);
    CHECK(m.rmse_z == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(m.mean_abs_u == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.mean_vdot == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
    CHECK(m.final_v == 3.5);
    CHECK(m.duration == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("run_analyze: empty-body CSV is an error") {
    const fs::path dir = fresh_dir("analyze_empty");
    spit(dir / "log.csv", "t,z,v_r,v_e,u,a_l,V,Vdot\n");
    CHECK_THROWS_AS(run_analyze(dir / "log.csv", dir), IoError);
}

TEST_CASE("run_train: alpha = 0 persists the seeded initialization") {
    const fs::path dir = fresh_dir("train_alpha0");
    const ExperimentConfig cfg =
        parse_config(R"({"alpha": 0, "episodes": 1, "horizon": 10, "seed": 9})");
    const TrainOutput out = run_train(cfg, dir / "agent.txt", dir / "history.csv");
    CHECK(out.agent.params.raw == init_policy_params(mix_seed(9, 0x1)).raw);
    CHECK(out.history.size() == 1);
    const std::string history = slurp(dir / "history.csv");
    CHECK(count_occurrences(history, "\n") == 2);  // header + one episode
}

TEST_CASE("run_train: fixed seed gives identical agent bytes; history rows = episodes") {
    const fs::path dir = fresh_dir("train_repeat");
    const ExperimentConfig cfg =
        parse_config(R"({"alpha": 1e-5, "episodes": 4, "horizon": 60, "seed": 31})");
    run_train(cfg, dir / "a1.txt", dir / "h1.csv");
    run_train(cfg, dir / "a2.txt", dir / "h2.csv");
    CHECK(slurp(dir / "a1.txt") == slurp(dir / "a2.txt"));
    CHECK(slurp(dir / "h1.csv") == slurp(dir / "h2.csv"));
    CHECK(count_occurrences(slurp(dir / "h1.csv"), "\n") == 5);  // header + 4 episodes
}

TEST_CASE("run_compare: row set, determinism, and agent handling") {
    const fs::path dir = fresh_dir("compare");
    const ExperimentConfig cfg = parse_config(R"({"sim_duration": 10.0})");
    std::ostringstream table_a, table_b;
    const auto rows_no_agent = run_compare(cfg, std::nullopt, dir, false, table_a);
    REQUIRE(rows_no_agent.size() == 2);
    CHECK(rows_no_agent[0].controller == "pid");
    CHECK(rows_no_agent[1].controller == "linear_substitute");
    const std::string csv_a = slurp(dir / "comparison.csv");

    const auto rows_again = run_compare(cfg, std::nullopt, dir, false, table_b);
    CHECK(slurp(dir / "comparison.csv") == csv_a);
    CHECK(table_a.str() == table_b.str());
    // The footer defines the stability flag.
    CHECK(table_a.str().find("stable :=") != std::string::npos);

    std::ostringstream table_c;
    AgentFile agent;
    agent.params = init_policy_params(12);
    const auto rows_with_agent = run_compare(cfg, agent, dir, false, table_c);
    REQUIRE(rows_with_agent.size() == 3);
    CHECK(rows_with_agent[2].controller == "lqrl");
}

TEST_CASE("SVG: structurally valid, one polyline per plotted series") {
    TrajectoryLog log;
    for (int k = 1; k <= 40; ++k)
        log.push_row(0.05 * k, std::sin(0.1 * k), std::cos(0.1 * k), 20.0 + 0.01 * k,
                     0.5, 0.0, 1.0 + k, -0.2);
    const std::string svg = render_trajectory_svg(log);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count_occurrences(svg, "<svg") == 1);
    CHECK(count_occurrences(svg, "</svg>") == 1);
    // z, v_r, v_e, dV/dt: exactly four series.
    CHECK(count_occurrences(svg, "<polyline") == 4);
    CHECK(count_occurrences(svg, "<text") == count_occurrences(svg, "</text>"));
}

TEST_CASE("cli_main: exit codes for config, numeric and I/O failures") {
    const fs::path dir = fresh_dir("cli_exit_codes");

    SUBCASE("missing config file -> 4") {
        const char* argv[] = {"lqrl", "train", "--config", "/nonexistent/nope.json"};
        CHECK(cli_main(4, argv) == 4);
    }
    SUBCASE("invalid config value -> 2") {
        spit(dir / "bad.json", R"({"dt": -1})");
        const std::string cfg = (dir / "bad.json").string();
        const char* argv[] = {"lqrl", "train", "--config", cfg.c_str()};
        CHECK(cli_main(4, argv) == 2);
    }
    SUBCASE("unknown flag -> 2") {
        const char* argv[] = {"lqrl", "train", "--frobnicate"};
        CHECK(cli_main(3, argv) == 2);
    }
    SUBCASE("numeric divergence during simulate -> 3, partial log flushed") {
        spit(dir / "cfg.json", R"({"u_min": -1e308, "u_max": 1e308})");
        AgentFile agent;
        agent.params.raw = {0, 0, 0, 0, 0, 1e308, 1e308};  // overflows the action map
        save_agent(agent, dir / "agent.txt");
        const std::string cfg = (dir / "cfg.json").string();
        const std::string ag = (dir / "agent.txt").string();
        const std::string out = (dir / "out").string();
        const char* argv[] = {"lqrl",    "simulate", "--config", cfg.c_str(),
                              "--agent", ag.c_str(), "--out-dir", out.c_str()};
        CHECK(cli_main(8, argv) == 3);
        CHECK(fs::exists(dir / "out" / "simulation_log.csv"));
    }
    SUBCASE("successful end-to-end train/simulate/analyze/compare -> 0") {
        spit(dir / "ok.json", R"({"alpha": 1e-5, "episodes": 2, "horizon": 40,
                                  "sim_duration": 5.0, "seed": 8})");
        const std::string cfg = (dir / "ok.json").string();
        const std::string agent = (dir / "agent.txt").string();
        const std::string out = (dir / "out").string();
        const std::string log = (dir / "out" / "simulation_log.csv").string();
        const std::string hist = (dir / "history.csv").string();
        {
            const char* argv[] = {"lqrl",  "train",     "--config", cfg.c_str(),
                                  "--out", agent.c_str(), "--history", hist.c_str()};
            CHECK(cli_main(8, argv) == 0);
        }
        {
            const char* argv[] = {"lqrl",    "simulate",    "--config",  cfg.c_str(),
                                  "--agent", agent.c_str(), "--out-dir", out.c_str()};
            CHECK(cli_main(8, argv) == 0);
        }
        {
            const char* argv[] = {"lqrl", "analyze", "--log", log.c_str(), "--out-dir",
                                  out.c_str()};
            CHECK(cli_main(6, argv) == 0);
        }
        {
            const char* argv[] = {"lqrl",    "compare",     "--config", cfg.c_str(),
                                  "--agent", agent.c_str(), "--out-dir", out.c_str()};
            CHECK(cli_main(8, argv) == 0);
        }
        CHECK(fs::exists(dir / "out" / "metrics.csv"));
        CHECK(fs::exists(dir / "out" / "simulation_plots.svg"));
        CHECK(fs::exists(dir / "out" / "comparison.csv"));
    }
    SUBCASE("compare with a missing agent path omits the lqrl row with a notice") {
        spit(dir / "c.json", R"({"sim_duration": 2.0})");
        const std::string cfg = (dir / "c.json").string();
        const std::string out = (dir / "cmp").string();
        const char* argv[] = {"lqrl",    "compare",           "--config", cfg.c_str(),
                              "--agent", "/nonexistent/a.txt", "--out-dir", out.c_str()};
        CHECK(cli_main(8, argv) == 0);
        const std::string csv = slurp(dir / "cmp" / "comparison.csv");
        CHECK(csv.find("lqrl") == std::string::npos);
        CHECK(count_occurrences(csv, "\n") == 3);  // header + pid + linear
    }
}

TEST_CASE("cli_main: --seed overrides the config seed") {
    const fs::path dir = fresh_dir("cli_seed_override");
    spit(dir / "c.json", R"({"alpha": 1e-5, "episodes": 2, "horizon": 40, "seed": 1})");
    spit(dir / "c5.json", R"({"alpha": 1e-5, "episodes": 2, "horizon": 40, "seed": 5})");
    const std::string c = (dir / "c.json").string();
    const std::string c5 = (dir / "c5.json").string();
    const std::string a_override = (dir / "a_override.txt").string();
    const std::string a_direct = (dir / "a_direct.txt").string();
    const std::string h1 = (dir / "h1.csv").string();
    const std::string h2 = (dir / "h2.csv").string();
    {
        const char* argv[] = {"lqrl",  "train",            "--config",  c.c_str(),
                              "--out", a_override.c_str(), "--history", h1.c_str(),
                              "--seed", "5"};
        REQUIRE(cli_main(10, argv) == 0);
    }
    {
        const char* argv[] = {"lqrl",  "train",          "--config",  c5.c_str(),
                              "--out", a_direct.c_str(), "--history", h2.c_str()};
        REQUIRE(cli_main(8, argv) == 0);
    }
    CHECK(slurp(a_override) == slurp(a_direct));
}

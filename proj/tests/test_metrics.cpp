#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lqrl/cli.hpp"
#include "lqrl/errors.hpp"
#include "lqrl/metrics.hpp"
#include "lqrl/rng.hpp"

using namespace lqrl;

TEST_CASE("rmse_z: hand values") {
    CHECK(rmse_z(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(rmse_z(std::vector<double>{3, 4}) == doctest::Approx(3.535534).epsilon(1e-6));
    CHECK(rmse_z(std::vector<double>{2, 2, 2, 2, 2}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(rmse_z(std::vector<double>{}), ConfigError);
}

TEST_CASE("mean_abs_u: hand values") {
    CHECK(mean_abs_u(std::vector<double>{0, 0}) == 0.0);
    CHECK(mean_abs_u(std::vector<double>{1, -1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_abs_u(std::vector<double>{3, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(mean_abs_u(std::vector<double>{}), ConfigError);
}

TEST_CASE("mean_vdot: hand values") {
    CHECK(mean_vdot(std::vector<double>{0, 0}) == 0.0);
    CHECK(mean_vdot(std::vector<double>{-1, 1}) == 0.0);
    CHECK(mean_vdot(std::vector<double>{2, 4, 6}) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("report: single-step zero trajectory") {
    TrajectoryLog log;
    log.push_row(0.05, 0, 0, 0, 0, 0, 0, 0);
    const MetricsReport r = report(log, LyapunovParams{});
    CHECK(r.rmse_z == 0.0);
    CHECK(r.mean_abs_u == 0.0);
    CHECK(r.mean_vdot == 0.0);
    CHECK(r.final_v == 0.0);
    CHECK(r.duration == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(r.n_steps == 1);
}

TEST_CASE("report: hand-built three-step trajectory") {
    // Spreadsheet-style values: z = {1,-2,2}, u = {0.5,-1,0}, vdot = {0.3,-0.1,0.2},
    // final state (2, 0.5, 10).
    TrajectoryLog log;
    log.push_row(0.1, 1, 0.2, 9, 0.5, 0.0, 1.0, 0.3);
    log.push_row(0.2, -2, -0.3, 9.5, -1, 0.1, 2.0, -0.1);
    log.push_row(0.3, 2, 0.5, 10, 0, -0.2, 3.0, 0.2);
    const LyapunovParams p;
    const MetricsReport r = report(log, p);
    CHECK(r.rmse_z == doctest::Approx(std::sqrt((1.0 + 4.0 + 4.0) / 3.0)).epsilon(1e-12));
    CHECK(r.mean_abs_u == doctest::Approx(1.5 / 3.0).epsilon(1e-12));
    CHECK(r.mean_vdot == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
    // final_v recomputed from the last state: 0.5*(4 + 0.6*0.25 + 0.05*100).
    CHECK(r.final_v == doctest::Approx(0.5 * (4.0 + 0.15 + 5.0)).epsilon(1e-12));
    CHECK(r.duration == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(r.n_steps == 3);

    // The column-only variant reads final V from the log instead.
    CHECK(report(log).final_v == 3.0);
}

TEST_CASE("report: ragged columns are rejected") {
    TrajectoryLog log;
    log.push_row(0.1, 1, 0, 0, 0, 0, 0, 0);
    log.z.push_back(2.0);  // force a mismatch
    CHECK_THROWS_AS(report(log, LyapunovParams{}), ConfigError);
}

TEST_CASE("metrics roundtrip through CSV is identical") {
    TrajectoryLog log;
    SplitMix64 gen(41);
    for (int k = 1; k <= 100; ++k) {
        log.push_row(0.05 * k, gen.uniform(-5, 5), gen.uniform(-2, 2),
                     gen.uniform(10, 30), gen.uniform(-3, 3), gen.uniform(-1.3, 1.3),
                     gen.uniform(0, 100), gen.uniform(-10, 10));
    }
    const MetricsReport a = report(log, LyapunovParams{});
    std::stringstream buffer;
    write_metrics_csv(a, buffer);
    const MetricsReport b = read_metrics_csv(buffer);
    CHECK(a.rmse_z == b.rmse_z);
    CHECK(a.mean_abs_u == b.mean_abs_u);
    CHECK(a.mean_vdot == b.mean_vdot);
    CHECK(a.final_v == b.final_v);
    CHECK(a.duration == b.duration);
    CHECK(a.n_steps == b.n_steps);
}

TEST_CASE("property: rmse homogeneity |a|*rmse(x) = rmse(a*x)") {
    SplitMix64 gen(43);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> z(50);
        for (double& v : z) v = gen.uniform(-20, 20);
        const double a = gen.uniform(-4, 4);
        std::vector<double> az(z);
        for (double& v : az) v *= a;
        CHECK(rmse_z(az) ==
              doctest::Approx(std::abs(a) * rmse_z(z)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("property: rmse dominates the absolute mean") {
    SplitMix64 gen(47);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> z(64);
        double mean = 0.0;
        for (double& v : z) {
            v = gen.uniform(-50, 50);
            mean += v;
        }
        mean /= static_cast<double>(z.size());
        CHECK(rmse_z(z) >= std::abs(mean) - 1e-12);
    }
}

TEST_CASE("property: chunk-wise streaming equals whole-series computation") {
    SplitMix64 gen(53);
    TrajectoryLog log;
    for (int k = 1; k <= 997; ++k) {
        log.push_row(0.05 * k, gen.uniform(-5, 5), 0, 0, gen.uniform(-3, 3), 0, 0,
                     gen.uniform(-10, 10));
    }
    const MetricsReport whole = report(log);

    MetricsAccumulator acc;
    std::size_t i = 0;
    const std::size_t chunks[] = {1, 10, 100, 886};
    for (std::size_t chunk : chunks) {
        for (std::size_t j = 0; j < chunk; ++j, ++i) acc.add(log.z[i], log.u[i], log.vdot[i]);
    }
    REQUIRE(i == log.size());
    const MetricsReport streamed = acc.finish(log.v.back(), whole.duration);
    CHECK(streamed.rmse_z == whole.rmse_z);
    CHECK(streamed.mean_abs_u == whole.mean_abs_u);
    CHECK(streamed.mean_vdot == whole.mean_vdot);
}

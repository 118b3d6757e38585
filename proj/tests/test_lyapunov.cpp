#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lqrl/errors.hpp"
#include "lqrl/lyapunov.hpp"
#include "lqrl/rng.hpp"

using namespace lqrl;

namespace {
LyapunovParams default_params() { return LyapunovParams{}; }
EnvConfig default_env() { return EnvConfig{}; }

VehicleState random_state(SplitMix64& gen, double span) {
    return VehicleState{gen.uniform(-span, span), gen.uniform(-span, span),
                        gen.uniform(-span, span)};
}
}  // namespace

TEST_CASE("value: positive definite quadratic") {
    const LyapunovParams p = default_params();
    CHECK(value(VehicleState{0, 0, 0}, p) == 0.0);
    CHECK(value(VehicleState{1, 1, 1}, p) == doctest::Approx(0.825).epsilon(1e-12));
    CHECK(value(VehicleState{2, 0, 0}, p) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("derivative: analytic expression") {
    const LyapunovParams p = default_params();
    const EnvConfig cfg = default_env();
    CHECK(derivative(VehicleState{0, 0, 0}, 0, 0, p, cfg) == 0.0);
    CHECK(derivative(VehicleState{1, 1, 1}, 0, 0, p, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(derivative(VehicleState{1, 0, 0}, 1, 0, p, cfg) ==
          doctest::Approx(-1.2).epsilon(1e-12));
}

TEST_CASE("condition_satisfied: decrease condition") {
    const LyapunovParams p = default_params();
    const EnvConfig cfg = default_env();
    CHECK(condition_satisfied(VehicleState{0, 0, 0}, 0, 0, p, cfg));
    CHECK(condition_satisfied(VehicleState{1, 0, 0}, 1, 0, p, cfg));  // -1.175 <= 0
    CHECK_FALSE(condition_satisfied(VehicleState{1, 1, 1}, 0, 0, p, cfg));
}

TEST_CASE("penalty: hinge values") {
    const LyapunovParams p = default_params();
    const EnvConfig cfg = default_env();
    // Hinge inactive when the condition holds.
    CHECK(penalty(VehicleState{1, 0, 0}, 1, 0, p, cfg) == 0.0);
    // 2 * (1.0 + 0.05*0.825) hand value.
    CHECK(penalty(VehicleState{1, 1, 1}, 0, 0, p, cfg) ==
          doctest::Approx(2.0825).epsilon(1e-12));
}

TEST_CASE("property: positive definiteness over random states") {
    const LyapunovParams p = default_params();
    SplitMix64 gen(101);
    for (int i = 0; i < 100000; ++i) {
        const VehicleState x = random_state(gen, 50.0);
        const double v = value(x, p);
        CHECK(v >= 0.0);
        if (x.z != 0.0 || x.v_r != 0.0 || x.v_e != 0.0) CHECK(v > 0.0);
    }
}

TEST_CASE("property: quadratic scaling value(a*x) = a^2 value(x)") {
    const LyapunovParams p = default_params();
    SplitMix64 gen(103);
    for (int i = 0; i < 10000; ++i) {
        const VehicleState x = random_state(gen, 20.0);
        const double a = gen.uniform(-3.0, 3.0);
        const VehicleState ax{a * x.z, a * x.v_r, a * x.v_e};
        CHECK(value(ax, p) ==
              doctest::Approx(a * a * value(x, p)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("property: penalty zero exactly when the condition holds") {
    const LyapunovParams p = default_params();
    const EnvConfig cfg = default_env();
    SplitMix64 gen(107);
    int active = 0, inactive = 0;
    for (int i = 0; i < 100000; ++i) {
        const VehicleState x = random_state(gen, 30.0);
        const double u = gen.uniform(-3.0, 3.0);
        const double a_l = gen.uniform(-1.3, 1.3);
        const bool ok = condition_satisfied(x, u, a_l, p, cfg);
        const double pen = penalty(x, u, a_l, p, cfg);
        CHECK((pen == 0.0) == ok);
        ok ? ++inactive : ++active;
    }
    // Both hinge branches must actually be exercised.
    CHECK(active > 1000);
    CHECK(inactive > 1000);
}

TEST_CASE("property: analytic derivative matches the discrete difference to first order") {
    const LyapunovParams p = default_params();
    SplitMix64 gen(109);
    const double dts[3] = {0.05, 0.025, 0.0125};
    double worst[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < 2000; ++i) {
        const VehicleState x = random_state(gen, 10.0);
        const double u = gen.uniform(-3.0, 3.0);
        const double a_l = gen.uniform(-1.3, 1.3);
        const double analytic = derivative(x, u, a_l, p, EnvConfig{});
        for (int j = 0; j < 3; ++j) {
            EnvConfig cfg;
            cfg.dt = dts[j];
            const VehicleState next = step(x, u, a_l, cfg);
            const double discrete = (value(next, p) - value(x, p)) / cfg.dt;
            worst[j] = std::max(worst[j], std::abs(discrete - analytic));
        }
    }
    // V is quadratic and the step is linear in dt, so the discrepancy is
    // exactly (dt/2) * f'Hf per sample; halving dt halves the worst case.
    CHECK(worst[0] > 0.0);
    CHECK(worst[1] / worst[0] == doctest::Approx(0.5).epsilon(0.05));
    CHECK(worst[2] / worst[1] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("LyapunovParams invariants") {
    LyapunovParams p;
    CHECK_NOTHROW(p.validate());
    p.beta = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = LyapunovParams{};
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = LyapunovParams{};
    p.lambda = 0.0;  // zero penalty strength is allowed
    CHECK_NOTHROW(p.validate());
}

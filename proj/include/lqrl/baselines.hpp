#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lqrl/sim.hpp"
#include "lqrl/trainer.hpp"

namespace lqrl {

/// PID gains over the spacing error, with integral anti-windup.
struct PidParams {
    double kp = 0.8;
    double ki = 0.05;
    double kd = 0.3;
    double integral_limit = 10.0;

    void validate() const;
};

/// Internal state the PID carries between steps.
struct PidState {
    double integral = 0.0;
    double z_prev = 0.0;
};

struct PidStepResult {
    double u = 0.0;
    PidState state;
};

/**
 * u = clamp(kp*z + ki*I' + kd*(z - z_prev)/dt) with the integral updated
 * first and clamped to +-integral_limit. Throws ConfigError if dt <= 0.
 */
PidStepResult pid_step(const PidState& state, double z, double dt,
                       const PidParams& params, const EnvConfig& cfg);

/// Linear state-feedback gains (stand-in for a learned classical baseline).
struct LinearPolicyParams {
    double k_z = 0.3;
    double k_vr = 1.0;
    double k_ve = 0.0;
    double bias = 0.0;

    void validate() const;
};

/// u = clamp(k_z*z + k_vr*v_r + k_ve*(v_set - v_e) + bias).
double linear_forward(const LinearPolicyParams& params, const VehicleState& x,
                      double v_set, const EnvConfig& cfg);

std::unique_ptr<Controller> make_pid_controller(const PidParams& params,
                                                const EnvConfig& env);
std::unique_ptr<Controller> make_linear_controller(const LinearPolicyParams& params,
                                                   double v_set, const EnvConfig& env);

/// Shared evaluation scenario for the controller comparison.
struct Scenario {
    VehicleState x0{0.0, 0.0, 20.0};
    int steps = 600;
    EnvConfig env;
    LyapunovParams lyapunov;
    double stable_z_bound = 10.0;  // [m]
};

struct ComparisonRow {
    std::string controller;
    double rmse_z = 0.0;
    double mean_abs_u = 0.0;
    bool stable = false;    // mean dV/dt <= 0 and max|z| <= stable_z_bound
    bool diverged = false;  // trajectory turned non-finite
};

/**
 * Run every controller on the identical scenario and report one row each,
 * in input order. A controller whose trajectory turns non-finite gets its
 * row flagged diverged (metrics from the partial log, never stable).
 */
std::vector<ComparisonRow> compare(std::span<Controller* const> controllers,
                                   const Scenario& scenario);

/**
 * Fit the linear baseline with the same derivative-free machinery used for
 * the quantum-inspired policy: per-episode seeded starts, gradient of the
 * episode objective, ascent steps on the four gains.
 */
LinearPolicyParams train_linear(const TrainConfig& cfg, const RolloutContext& ctx,
                                double v_set, const LinearPolicyParams& start = {});

}  // namespace lqrl

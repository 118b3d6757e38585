#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lqrl/dynamics.hpp"
#include "lqrl/lyapunov.hpp"
#include "lqrl/qpolicy.hpp"
#include "lqrl/trajectory.hpp"

namespace lqrl {

/// Weights of the per-step reward terms (spacing, effort, jerk).
struct RewardWeights {
    double w_z = 1.0;
    double w_a = 0.1;
    double w_j = 0.1;

    void validate() const;
};

/// Finite-difference flavor used for the policy gradient estimate.
enum class FdScheme { Central, Forward, Spsa };

struct TrainConfig {
    double alpha = 0.02;       // learning rate
    int episodes = 60;
    int horizon = 400;         // steps per episode
    double fd_epsilon = 0.01;  // perturbation size
    std::uint64_t seed = 42;
    FdScheme scheme = FdScheme::Central;

    void validate() const;
};

/// Everything one rollout needs besides the parameters.
struct RolloutContext {
    EnvConfig env;
    LyapunovParams lyapunov;
    RewardWeights rewards;
    EncodingConfig encoding;
};

struct EpisodeResult {
    double total_reward = 0.0;
    double total_penalty = 0.0;
    double objective = 0.0;  // total_reward - total_penalty, exactly
    TrajectoryLog trajectory;
};

/// r = -w_z*z^2 - w_a*u^2 - w_j*(u - u_prev)^2, always <= 0.
double reward(double z, double u, double u_prev, const RewardWeights& w);

/// Episode start used during training: z ~ U(-2,2), v_r ~ U(-1,1), v_e ~ U(15,25).
VehicleState initial_state_from_seed(std::uint64_t seed);

/// A policy as a plain callable (state -> pre-clamp acceleration).
using PolicyFn = std::function<double(const VehicleState&)>;

/**
 * Roll one episode from an explicit initial state. Reward and stability
 * penalty are evaluated at the decision-time state together with the applied
 * (post-clamp) action; the jerk term uses u_prev = 0 on the first step.
 * Throws NumericError (with the step index) if the state turns non-finite.
 */
EpisodeResult rollout_policy(const PolicyFn& policy, const RolloutContext& ctx,
                             const VehicleState& x0);

/// Seeded-episode rollout of the quantum-inspired policy.
EpisodeResult rollout(const PolicyParams& theta, const RolloutContext& ctx,
                      std::uint64_t seed);

/// Gradient of a scalar objective over a flat parameter vector. The SPSA
/// scheme draws its perturbation signs from scheme_seed; the other schemes
/// ignore it. Throws NumericError naming the coordinate whose evaluation
/// produced a non-finite objective.
std::vector<double> fd_gradient_vec(
    std::span<const double> theta,
    const std::function<double(std::span<const double>)>& objective, double fd_epsilon,
    FdScheme scheme = FdScheme::Central, std::uint64_t scheme_seed = 0);

using Gradient = std::array<double, PolicyParams::kSize>;

/// Seven-coordinate gradient of the policy objective (wraps fd_gradient_vec).
Gradient fd_gradient(const PolicyParams& theta,
                     const std::function<double(const PolicyParams&)>& objective,
                     double fd_epsilon, FdScheme scheme = FdScheme::Central,
                     std::uint64_t scheme_seed = 0);

/// Ascent step on the objective: theta' = theta + alpha * gradient.
PolicyParams update(const PolicyParams& theta, const Gradient& gradient, double alpha);

struct EpisodeStats {
    double objective = 0.0;
    double total_reward = 0.0;
    double total_penalty = 0.0;
    PolicyParams params;  // parameters the episode was evaluated at
};

struct TrainResult {
    PolicyParams params;
    std::vector<EpisodeStats> history;  // one entry per episode
};

/**
 * Sequential training loop: every episode draws a fresh initial-state seed,
 * estimates the gradient of that episode's objective under common random
 * numbers, and applies one ascent step. Fully reproducible from cfg.seed.
 * Throws NumericError on divergence (|theta_i| > 1e6 or non-finite objective).
 */
TrainResult train(const TrainConfig& cfg, const EnvConfig& env,
                  const LyapunovParams& lyapunov, const RewardWeights& rewards,
                  const EncodingConfig& encoding);

}  // namespace lqrl

#include "lqrl/trainer.hpp"

#include <cmath>
#include <sstream>

#include "lqrl/errors.hpp"
#include "lqrl/rng.hpp"

namespace lqrl {

namespace {
// Stream tags for deriving decorrelated sub-seeds from one training seed.
constexpr std::uint64_t kInitStream = 0x1;
constexpr std::uint64_t kEpisodeStreamBase = 0x100;
constexpr std::uint64_t kSpsaStream = 0x2;
constexpr double kDivergenceBound = 1e6;
}  // namespace

void RewardWeights::validate() const {
    if (!(std::isfinite(w_z) && w_z >= 0.0))
        throw ConfigError("RewardWeights: w_z must be >= 0");
    if (!(std::isfinite(w_a) && w_a >= 0.0))
        throw ConfigError("RewardWeights: w_a must be >= 0");
    if (!(std::isfinite(w_j) && w_j >= 0.0))
        throw ConfigError("RewardWeights: w_j must be >= 0");
}

void TrainConfig::validate() const {
    // alpha = 0 is admitted as the degenerate evaluate-without-learning case.
    if (!(std::isfinite(alpha) && alpha >= 0.0))
        throw ConfigError("TrainConfig: alpha must be >= 0");
    if (episodes < 1) throw ConfigError("TrainConfig: episodes must be >= 1");
    if (horizon < 2) throw ConfigError("TrainConfig: horizon must be >= 2");
    if (!(std::isfinite(fd_epsilon) && fd_epsilon > 0.0))
        throw ConfigError("TrainConfig: fd_epsilon must be > 0");
}

double reward(double z, double u, double u_prev, const RewardWeights& w) {
    const double jerk = u - u_prev;
    return -w.w_z * z * z - w.w_a * u * u - w.w_j * jerk * jerk;
}

VehicleState initial_state_from_seed(std::uint64_t seed) {
    SplitMix64 gen(seed);
    VehicleState x;
    x.z = gen.uniform(-2.0, 2.0);
    x.v_r = gen.uniform(-1.0, 1.0);
    x.v_e = gen.uniform(15.0, 25.0);
    return x;
}

EpisodeResult rollout_policy(const PolicyFn& policy, const RolloutContext& ctx,
                             const VehicleState& x0) {
    EpisodeResult result;
    VehicleState x = x0;
    double u_prev = 0.0;
    for (int k = 1; k <= ctx.env.horizon; ++k) {
        const double t_start = static_cast<double>(k - 1) * ctx.env.dt;
        const double a_l = lead_accel(t_start);
        double u = 0.0;
        VehicleState next;
        try {
            u = clamp_action(policy(x), ctx.env);
            next = step(x, u, a_l, ctx.env);
        } catch (const NumericError& e) {
            std::ostringstream oss;
            oss << "rollout: step " << k << ": " << e.what();
            throw NumericError(oss.str());
        }
        if (!next.finite()) {
            std::ostringstream oss;
            oss << "rollout: non-finite state after step " << k;
            throw NumericError(oss.str());
        }
        const double r = reward(x.z, u, u_prev, ctx.rewards);
        const double stab = penalty(x, u, a_l, ctx.lyapunov, ctx.env);
        const double vdot = derivative(x, u, a_l, ctx.lyapunov, ctx.env);
        result.total_reward += r;
        result.total_penalty += stab;
        result.trajectory.push_row(static_cast<double>(k) * ctx.env.dt, next.z, next.v_r,
                                   next.v_e, u, a_l, value(next, ctx.lyapunov), vdot);
        u_prev = u;
        x = next;
    }
    result.objective = result.total_reward - result.total_penalty;
    return result;
}

EpisodeResult rollout(const PolicyParams& theta, const RolloutContext& ctx,
                      std::uint64_t seed) {
    const PolicyFn policy = [&theta, &ctx](const VehicleState& x) {
        return forward(theta, x, ctx.encoding, ctx.env);
    };
    return rollout_policy(policy, ctx, initial_state_from_seed(seed));
}

namespace {

double checked_eval(const std::function<double(std::span<const double>)>& objective,
                    std::span<const double> theta, std::size_t coordinate,
                    const char* direction) {
    const double j = objective(theta);
    if (!std::isfinite(j)) {
        std::ostringstream oss;
        oss << "fd_gradient: non-finite objective at coordinate " << coordinate << " ("
            << direction << " perturbation)";
        throw NumericError(oss.str());
    }
    return j;
}

}  // namespace

std::vector<double> fd_gradient_vec(
    std::span<const double> theta,
    const std::function<double(std::span<const double>)>& objective, double fd_epsilon,
    FdScheme scheme, std::uint64_t scheme_seed) {
    if (!(std::isfinite(fd_epsilon) && fd_epsilon > 0.0))
        throw ConfigError("fd_gradient: fd_epsilon must be > 0");
    const std::size_t n = theta.size();
    std::vector<double> g(n, 0.0);
    std::vector<double> work(theta.begin(), theta.end());

    switch (scheme) {
        case FdScheme::Central: {
            for (std::size_t i = 0; i < n; ++i) {
                work[i] = theta[i] + fd_epsilon;
                const double j_plus = checked_eval(objective, work, i, "+");
                work[i] = theta[i] - fd_epsilon;
                const double j_minus = checked_eval(objective, work, i, "-");
                work[i] = theta[i];
                g[i] = (j_plus - j_minus) / (2.0 * fd_epsilon);
            }
            break;
        }
        case FdScheme::Forward: {
            const double j0 = checked_eval(objective, theta, 0, "base");
            for (std::size_t i = 0; i < n; ++i) {
                work[i] = theta[i] + fd_epsilon;
                const double j_plus = checked_eval(objective, work, i, "+");
                work[i] = theta[i];
                g[i] = (j_plus - j0) / fd_epsilon;
            }
            break;
        }
        case FdScheme::Spsa: {
            SplitMix64 gen(scheme_seed);
            std::vector<double> delta(n);
            for (std::size_t i = 0; i < n; ++i) delta[i] = gen.sign();
            for (std::size_t i = 0; i < n; ++i) work[i] = theta[i] + fd_epsilon * delta[i];
            const double j_plus = checked_eval(objective, work, 0, "+delta");
            for (std::size_t i = 0; i < n; ++i) work[i] = theta[i] - fd_epsilon * delta[i];
            const double j_minus = checked_eval(objective, work, 0, "-delta");
            for (std::size_t i = 0; i < n; ++i)
                g[i] = (j_plus - j_minus) / (2.0 * fd_epsilon * delta[i]);
            break;
        }
    }
    return g;
}

Gradient fd_gradient(const PolicyParams& theta,
                     const std::function<double(const PolicyParams&)>& objective,
                     double fd_epsilon, FdScheme scheme, std::uint64_t scheme_seed) {
    const auto vec_objective = [&objective](std::span<const double> v) {
        PolicyParams p;
        for (std::size_t i = 0; i < PolicyParams::kSize; ++i) p.raw[i] = v[i];
        return objective(p);
    };
    const std::vector<double> g =
        fd_gradient_vec(theta.raw, vec_objective, fd_epsilon, scheme, scheme_seed);
    Gradient out;
    for (std::size_t i = 0; i < PolicyParams::kSize; ++i) out[i] = g[i];
    return out;
}

PolicyParams update(const PolicyParams& theta, const Gradient& gradient, double alpha) {
    for (std::size_t i = 0; i < PolicyParams::kSize; ++i) {
        if (!std::isfinite(gradient[i])) {
            std::ostringstream oss;
            oss << "update: non-finite gradient at coordinate " << i;
            throw NumericError(oss.str());
        }
    }
    PolicyParams next = theta;
    for (std::size_t i = 0; i < PolicyParams::kSize; ++i)
        next.raw[i] = theta.raw[i] + alpha * gradient[i];
    return next;
}

TrainResult train(const TrainConfig& cfg, const EnvConfig& env,
                  const LyapunovParams& lyapunov, const RewardWeights& rewards,
                  const EncodingConfig& encoding) {
    cfg.validate();
    env.validate();
    lyapunov.validate();
    rewards.validate();
    encoding.validate();

    RolloutContext ctx{env, lyapunov, rewards, encoding};
    ctx.env.horizon = cfg.horizon;

    TrainResult result;
    result.params = init_policy_params(mix_seed(cfg.seed, kInitStream));
    result.history.reserve(static_cast<std::size_t>(cfg.episodes));

    for (int e = 0; e < cfg.episodes; ++e) {
        const std::uint64_t ep_seed =
            mix_seed(cfg.seed, kEpisodeStreamBase + static_cast<std::uint64_t>(e));
        const auto objective = [&ctx, ep_seed](const PolicyParams& p) {
            return rollout(p, ctx, ep_seed).objective;
        };

        const EpisodeResult center = rollout(result.params, ctx, ep_seed);
        if (!std::isfinite(center.objective)) {
            std::ostringstream oss;
            oss << "train: non-finite objective at episode " << e;
            throw NumericError(oss.str());
        }
        result.history.push_back(EpisodeStats{center.objective, center.total_reward,
                                              center.total_penalty, result.params});

        const Gradient g = fd_gradient(result.params, objective, cfg.fd_epsilon,
                                       cfg.scheme, mix_seed(ep_seed, kSpsaStream));
        result.params = update(result.params, g, cfg.alpha);

        for (std::size_t i = 0; i < PolicyParams::kSize; ++i) {
            if (std::abs(result.params.raw[i]) > kDivergenceBound) {
                std::ostringstream oss;
                oss << "train: divergence at episode " << e << ", coordinate " << i
                    << " (|theta| = " << std::abs(result.params.raw[i]) << " > 1e6)";
                throw NumericError(oss.str());
            }
        }
    }
    return result;
}

}  // namespace lqrl

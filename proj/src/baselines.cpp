#include "lqrl/baselines.hpp"

#include <cmath>
#include <sstream>

#include "lqrl/errors.hpp"
#include "lqrl/metrics.hpp"
#include "lqrl/rng.hpp"

namespace lqrl {

void PidParams::validate() const {
    if (!(std::isfinite(kp) && std::isfinite(ki) && std::isfinite(kd)))
        throw ConfigError("PidParams: gains must be finite");
    if (!(std::isfinite(integral_limit) && integral_limit > 0.0))
        throw ConfigError("PidParams: integral_limit must be > 0");
}

void LinearPolicyParams::validate() const {
    if (!(std::isfinite(k_z) && std::isfinite(k_vr) && std::isfinite(k_ve) &&
          std::isfinite(bias)))
        throw ConfigError("LinearPolicyParams: gains must be finite");
}

PidStepResult pid_step(const PidState& state, double z, double dt,
                       const PidParams& params, const EnvConfig& cfg) {
    if (!(dt > 0.0)) throw ConfigError("pid_step: dt must be > 0");
    if (!std::isfinite(z)) throw NumericError("pid_step: non-finite spacing error");
    PidStepResult result;
    double integral = state.integral + z * dt;
    integral = std::min(params.integral_limit, std::max(-params.integral_limit, integral));
    const double derivative = (z - state.z_prev) / dt;
    result.u = clamp_action(params.kp * z + params.ki * integral + params.kd * derivative,
                            cfg);
    result.state.integral = integral;
    result.state.z_prev = z;
    return result;
}

double linear_forward(const LinearPolicyParams& params, const VehicleState& x,
                      double v_set, const EnvConfig& cfg) {
    return clamp_action(
        params.k_z * x.z + params.k_vr * x.v_r + params.k_ve * (v_set - x.v_e) + params.bias,
        cfg);
}

namespace {

class PidController final : public Controller {
public:
    PidController(const PidParams& params, const EnvConfig& env)
        : params_(params), env_(env) {}

    double action(const VehicleState& x) override {
        const PidStepResult r = pid_step(state_, x.z, env_.dt, params_, env_);
        state_ = r.state;
        return r.u;
    }
    void reset() override { state_ = PidState{}; }
    std::string name() const override { return "pid"; }

private:
    PidParams params_;
    EnvConfig env_;
    PidState state_;
};

class LinearController final : public Controller {
public:
    LinearController(const LinearPolicyParams& params, double v_set, const EnvConfig& env)
        : params_(params), v_set_(v_set), env_(env) {}

    double action(const VehicleState& x) override {
        return linear_forward(params_, x, v_set_, env_);
    }
    std::string name() const override { return "linear_substitute"; }

private:
    LinearPolicyParams params_;
    double v_set_;
    EnvConfig env_;
};

}  // namespace

std::unique_ptr<Controller> make_pid_controller(const PidParams& params,
                                                const EnvConfig& env) {
    return std::make_unique<PidController>(params, env);
}

std::unique_ptr<Controller> make_linear_controller(const LinearPolicyParams& params,
                                                   double v_set, const EnvConfig& env) {
    return std::make_unique<LinearController>(params, v_set, env);
}

std::vector<ComparisonRow> compare(std::span<Controller* const> controllers,
                                   const Scenario& scenario) {
    std::vector<ComparisonRow> rows;
    rows.reserve(controllers.size());
    const double v_l0 = scenario.x0.v_e + scenario.x0.v_r;
    for (Controller* controller : controllers) {
        ComparisonRow row;
        row.controller = controller->name();
        const SimResult sim = simulate_closed_loop(*controller, scenario.x0, v_l0,
                                                   scenario.steps, scenario.env,
                                                   scenario.lyapunov);
        if (sim.failed_step.has_value()) {
            row.diverged = true;
            row.stable = false;
            if (!sim.log.empty()) {
                const MetricsReport m = report(sim.log, scenario.lyapunov);
                row.rmse_z = m.rmse_z;
                row.mean_abs_u = m.mean_abs_u;
            }
        } else {
            const MetricsReport m = report(sim.log, scenario.lyapunov);
            row.rmse_z = m.rmse_z;
            row.mean_abs_u = m.mean_abs_u;
            double max_abs_z = 0.0;
            for (double z : sim.log.z) max_abs_z = std::max(max_abs_z, std::abs(z));
            row.stable = m.mean_vdot <= 0.0 && max_abs_z <= scenario.stable_z_bound;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

LinearPolicyParams train_linear(const TrainConfig& cfg, const RolloutContext& ctx_in,
                                double v_set, const LinearPolicyParams& start) {
    cfg.validate();
    start.validate();
    RolloutContext ctx = ctx_in;
    ctx.env.horizon = cfg.horizon;

    std::vector<double> gains{start.k_z, start.k_vr, start.k_ve, start.bias};
    for (int e = 0; e < cfg.episodes; ++e) {
        const std::uint64_t ep_seed =
            mix_seed(cfg.seed, 0x100 + static_cast<std::uint64_t>(e));
        const auto objective = [&](std::span<const double> g) {
            const LinearPolicyParams p{g[0], g[1], g[2], g[3]};
            const PolicyFn policy = [&p, v_set, &ctx](const VehicleState& x) {
                return linear_forward(p, x, v_set, ctx.env);
            };
            return rollout_policy(policy, ctx, initial_state_from_seed(ep_seed)).objective;
        };
        const std::vector<double> g = fd_gradient_vec(gains, objective, cfg.fd_epsilon,
                                                      cfg.scheme, mix_seed(ep_seed, 0x2));
        for (std::size_t i = 0; i < gains.size(); ++i) {
            gains[i] += cfg.alpha * g[i];
            if (std::abs(gains[i]) > 1e6) {
                std::ostringstream oss;
                oss << "train_linear: divergence at episode " << e << ", gain " << i;
                throw NumericError(oss.str());
            }
        }
    }
    return LinearPolicyParams{gains[0], gains[1], gains[2], gains[3]};
}

}  // namespace lqrl

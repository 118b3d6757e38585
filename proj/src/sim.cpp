#include "lqrl/sim.hpp"

#include <cmath>
#include <utility>

namespace lqrl {

SimResult simulate_closed_loop(Controller& controller, const VehicleState& x0,
                               double v_l0, int steps, const EnvConfig& env,
                               const LyapunovParams& lyap) {
    SimResult result;
    VehicleState x = x0;
    LeadTracking lead = make_lead_tracking(v_l0, x0, env);
    controller.reset();
    for (int k = 1; k <= steps; ++k) {
        const double t_start = static_cast<double>(k - 1) * env.dt;
        const double a_l = lead_accel(t_start);
        double u = controller.action(x);
        if (!std::isfinite(u) || !x.finite()) {
            result.failed_step = static_cast<std::size_t>(k);
            return result;
        }
        u = clamp_action(u, env);
        const double vdot = derivative(x, u, a_l, lyap, env);
        const VehicleState next = step(x, u, a_l, env);
        if (!next.finite()) {
            result.failed_step = static_cast<std::size_t>(k);
            return result;
        }
        lead = update_lead(lead, a_l, x, next, env);
        if (lead.d < 0.0) result.distance_warning = true;
        result.log.push_row(static_cast<double>(k) * env.dt, next.z, next.v_r, next.v_e,
                            u, a_l, value(next, lyap), vdot);
        x = next;
    }
    return result;
}

namespace {

class PolicyController final : public Controller {
public:
    PolicyController(const PolicyParams& params, const EncodingConfig& enc,
                     const EnvConfig& env)
        : params_(params), enc_(enc), env_(env) {}

    double action(const VehicleState& x) override {
        return forward(params_, x, enc_, env_);
    }
    std::string name() const override { return "lqrl"; }

private:
    PolicyParams params_;
    EncodingConfig enc_;
    EnvConfig env_;
};

class ConstantController final : public Controller {
public:
    ConstantController(double u, std::string name) : u_(u), name_(std::move(name)) {}
    double action(const VehicleState&) override { return u_; }
    std::string name() const override { return name_; }

private:
    double u_;
    std::string name_;
};

}  // namespace

std::unique_ptr<Controller> make_policy_controller(const PolicyParams& params,
                                                   const EncodingConfig& enc,
                                                   const EnvConfig& env) {
    return std::make_unique<PolicyController>(params, enc, env);
}

std::unique_ptr<Controller> make_constant_controller(double u, std::string name) {
    return std::make_unique<ConstantController>(u, std::move(name));
}

}  // namespace lqrl

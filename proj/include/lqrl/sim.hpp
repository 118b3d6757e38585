#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lqrl/dynamics.hpp"
#include "lqrl/lyapunov.hpp"
#include "lqrl/qpolicy.hpp"
#include "lqrl/trajectory.hpp"

namespace lqrl {

/// A closed-loop controller; action() returns a pre-clamp acceleration.
class Controller {
public:
    virtual ~Controller() = default;
    virtual double action(const VehicleState& x) = 0;
    virtual void reset() {}
    virtual std::string name() const = 0;
};

struct SimResult {
    TrajectoryLog log;
    // Set instead of throwing when the state turns non-finite, so callers can
    // flush the partial log before reporting the failure.
    std::optional<std::size_t> failed_step;
    bool distance_warning = false;  // inter-vehicle distance went negative
};

/**
 * Run `steps` control steps from x0 under the scripted lead acceleration.
 * Each step clamps the controller output, records the analytic dV/dt at the
 * pre-step state, advances the dynamics, and logs the post-step state.
 */
SimResult simulate_closed_loop(Controller& controller, const VehicleState& x0,
                               double v_l0, int steps, const EnvConfig& env,
                               const LyapunovParams& lyap);

/// Controller wrapping the quantum-inspired policy.
std::unique_ptr<Controller> make_policy_controller(const PolicyParams& params,
                                                   const EncodingConfig& enc,
                                                   const EnvConfig& env);

/// Controller emitting a fixed acceleration (test stub / saturation studies).
std::unique_ptr<Controller> make_constant_controller(double u, std::string name = "constant");

}  // namespace lqrl

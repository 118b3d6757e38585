#pragma once

namespace lqrl {

/**
 * @brief State of the longitudinal car-following loop.
 *
 * x = [z, v_r, v_e]:
 *   z   spacing error, actual gap minus desired gap d0 + h*v_e [m]
 *   v_r relative velocity v_l - v_e [m/s]
 *   v_e ego velocity [m/s]
 */
struct VehicleState {
    double z = 0.0;
    double v_r = 0.0;
    double v_e = 0.0;

    bool finite() const;
};

/// Physical and integration constants of the environment.
struct EnvConfig {
    double dt = 0.05;     // integration step [s]
    double h = 1.2;       // time headway [s]
    double d0 = 5.0;      // standstill distance [m]
    double u_min = -3.0;  // control lower bound [m/s^2]
    double u_max = 3.0;   // control upper bound [m/s^2]
    int horizon = 400;    // steps per episode

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Lead-vehicle bookkeeping kept alongside the controlled state for
// telemetry: v_l is Euler-integrated, d is reconstructed from the state
// so that d = z + d0 + h*v_e holds at every step.
struct LeadTracking {
    double v_l = 0.0;  // lead velocity [m/s]
    double d = 0.0;    // actual inter-vehicle distance [m]
};

/**
 * One forward-Euler step of the longitudinal dynamics
 *
 *   z'   = z   + dt*(v_r - h*u)
 *   v_r' = v_r + dt*(a_l - u)
 *   v_e' = v_e + dt*u
 *
 * Purely functional; the caller is responsible for clamping u.
 * Throws NumericError on non-finite state or inputs.
 */
VehicleState step(const VehicleState& x, double u, double a_l, const EnvConfig& cfg);

/// Scripted lead acceleration a_l(t) = 0.8*sin(0.2t) - 0.5*sin(0.05t).
double lead_accel(double t);

/// Clamp u into [u_min, u_max]. Non-finite u is an error, never silently clamped.
double clamp_action(double u, const EnvConfig& cfg);

/// Initialize lead tracking consistent with a state (d reconstructed).
LeadTracking make_lead_tracking(double v_l, const VehicleState& x, const EnvConfig& cfg);

/// Advance lead velocity by Euler and reconstruct d from the post-step state.
LeadTracking update_lead(const LeadTracking& tracking, double a_l,
                         const VehicleState& state_before,
                         const VehicleState& state_after, const EnvConfig& cfg);

}  // namespace lqrl

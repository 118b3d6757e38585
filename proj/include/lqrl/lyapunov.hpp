#pragma once

#include "lqrl/dynamics.hpp"

namespace lqrl {

/**
 * Weights of the quadratic energy candidate and its training penalty.
 *
 * Note: because the derivative carries a gamma*v_e*u cross-term, V is not a
 * strict control-Lyapunov function for this system -- a positive derivative
 * is achievable at nonzero ego speed no matter the action. The stability
 * machinery is used as a soft training signal, not a certificate.
 */
struct LyapunovParams {
    double beta = 0.6;    // weight on v_r^2
    double gamma = 0.05;  // weight on v_e^2
    double c = 0.05;      // exponential decay constant [1/s]
    double lambda = 2.0;  // penalty strength

    void validate() const;
};

/// V(x) = 1/2 (z^2 + beta*v_r^2 + gamma*v_e^2), positive definite.
double value(const VehicleState& x, const LyapunovParams& p);

/// Analytic dV/dt along the dynamics: z(v_r - h*u) + beta*v_r*(a_l - u) + gamma*v_e*u.
double derivative(const VehicleState& x, double u, double a_l, const LyapunovParams& p,
                  const EnvConfig& cfg);

/// dV/dt + c*V, the quantity the decrease condition and the hinge share.
double stability_margin(const VehicleState& x, double u, double a_l,
                        const LyapunovParams& p, const EnvConfig& cfg);

/// True iff dV/dt <= -c*V.
bool condition_satisfied(const VehicleState& x, double u, double a_l,
                         const LyapunovParams& p, const EnvConfig& cfg);

/// Hinge penalty lambda * max(0, dV/dt + c*V); exactly zero iff the
/// decrease condition holds.
double penalty(const VehicleState& x, double u, double a_l, const LyapunovParams& p,
               const EnvConfig& cfg);

}  // namespace lqrl

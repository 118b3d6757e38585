#include "lqrl/lyapunov.hpp"

#include <cmath>

#include "lqrl/errors.hpp"

namespace lqrl {

void LyapunovParams::validate() const {
    if (!(std::isfinite(beta) && beta > 0.0))
        throw ConfigError("LyapunovParams: beta must be > 0");
    if (!(std::isfinite(gamma) && gamma > 0.0))
        throw ConfigError("LyapunovParams: gamma must be > 0");
    if (!(std::isfinite(c) && c > 0.0)) throw ConfigError("LyapunovParams: c must be > 0");
    if (!(std::isfinite(lambda) && lambda >= 0.0))
        throw ConfigError("LyapunovParams: lambda must be >= 0");
}

double value(const VehicleState& x, const LyapunovParams& p) {
    return 0.5 * (x.z * x.z + p.beta * x.v_r * x.v_r + p.gamma * x.v_e * x.v_e);
}

double derivative(const VehicleState& x, double u, double a_l, const LyapunovParams& p,
                  const EnvConfig& cfg) {
    return x.z * (x.v_r - cfg.h * u) + p.beta * x.v_r * (a_l - u) + p.gamma * x.v_e * u;
}

double stability_margin(const VehicleState& x, double u, double a_l,
                        const LyapunovParams& p, const EnvConfig& cfg) {
    return derivative(x, u, a_l, p, cfg) + p.c * value(x, p);
}

// condition_satisfied and penalty evaluate the same margin expression, so
// "penalty == 0" and "condition holds" agree bit-for-bit, not just to tolerance.
bool condition_satisfied(const VehicleState& x, double u, double a_l,
                         const LyapunovParams& p, const EnvConfig& cfg) {
    return stability_margin(x, u, a_l, p, cfg) <= 0.0;
}

double penalty(const VehicleState& x, double u, double a_l, const LyapunovParams& p,
               const EnvConfig& cfg) {
    const double margin = stability_margin(x, u, a_l, p, cfg);
    return margin > 0.0 ? p.lambda * margin : 0.0;
}

}  // namespace lqrl

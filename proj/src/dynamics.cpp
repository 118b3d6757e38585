#include "lqrl/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "lqrl/errors.hpp"

namespace lqrl {

bool VehicleState::finite() const {
    return std::isfinite(z) && std::isfinite(v_r) && std::isfinite(v_e);
}

void EnvConfig::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("EnvConfig: dt must be > 0");
    if (!(std::isfinite(h) && h > 0.0)) throw ConfigError("EnvConfig: h must be > 0");
    if (!(std::isfinite(d0) && d0 >= 0.0)) throw ConfigError("EnvConfig: d0 must be >= 0");
    if (!(std::isfinite(u_min) && std::isfinite(u_max) && u_min < u_max))
        throw ConfigError("EnvConfig: u_min must be < u_max");
    if (horizon < 1) throw ConfigError("EnvConfig: horizon must be >= 1");
}

VehicleState step(const VehicleState& x, double u, double a_l, const EnvConfig& cfg) {
    if (!x.finite() || !std::isfinite(u) || !std::isfinite(a_l)) {
        std::ostringstream oss;
        oss << "dynamics::step: non-finite input (z=" << x.z << ", v_r=" << x.v_r
            << ", v_e=" << x.v_e << ", u=" << u << ", a_l=" << a_l << ")";
        throw NumericError(oss.str());
    }
    VehicleState next;
    next.z = x.z + cfg.dt * (x.v_r - cfg.h * u);
    next.v_r = x.v_r + cfg.dt * (a_l - u);
    next.v_e = x.v_e + cfg.dt * u;
    return next;
}

double lead_accel(double t) {
    return 0.8 * std::sin(0.2 * t) - 0.5 * std::sin(0.05 * t);
}

double clamp_action(double u, const EnvConfig& cfg) {
    if (!std::isfinite(u)) {
        std::ostringstream oss;
        oss << "dynamics::clamp_action: non-finite action u=" << u;
        throw NumericError(oss.str());
    }
    return std::min(cfg.u_max, std::max(cfg.u_min, u));
}

LeadTracking make_lead_tracking(double v_l, const VehicleState& x, const EnvConfig& cfg) {
    return LeadTracking{v_l, x.z + cfg.d0 + cfg.h * x.v_e};
}

LeadTracking update_lead(const LeadTracking& tracking, double a_l,
                         const VehicleState& /*state_before*/,
                         const VehicleState& state_after, const EnvConfig& cfg) {
    LeadTracking next;
    next.v_l = tracking.v_l + cfg.dt * a_l;
    // d is reconstructed from the state definition rather than integrated,
    // so the tracking invariant cannot drift.
    next.d = state_after.z + cfg.d0 + cfg.h * state_after.v_e;
    return next;
}

}  // namespace lqrl

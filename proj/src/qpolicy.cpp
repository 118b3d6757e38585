#include "lqrl/qpolicy.hpp"

#include <cmath>
#include <sstream>

#include "lqrl/errors.hpp"
#include "lqrl/rng.hpp"

namespace lqrl {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

double GateMatrix::unitarity_defect() const {
    // U^dagger U entries.
    const std::complex<double> a = std::conj(m00) * m00 + std::conj(m10) * m10;
    const std::complex<double> b = std::conj(m00) * m01 + std::conj(m10) * m11;
    const std::complex<double> c = std::conj(m01) * m00 + std::conj(m11) * m10;
    const std::complex<double> d = std::conj(m01) * m01 + std::conj(m11) * m11;
    double defect = std::abs(a - 1.0);
    defect = std::max(defect, std::abs(b));
    defect = std::max(defect, std::abs(c));
    defect = std::max(defect, std::abs(d - 1.0));
    return defect;
}

bool PolicyParams::finite() const {
    for (double v : raw) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void PolicyParams::validate() const {
    if (!finite()) throw ConfigError("PolicyParams: all 7 entries must be finite");
}

void EncodingConfig::validate() const {
    if (!(std::isfinite(z_scale) && z_scale > 0.0))
        throw ConfigError("EncodingConfig: z_scale must be > 0");
    if (!(std::isfinite(v_scale) && v_scale > 0.0))
        throw ConfigError("EncodingConfig: v_scale must be > 0");
    if (!(std::isfinite(ve_scale) && ve_scale > 0.0))
        throw ConfigError("EncodingConfig: ve_scale must be > 0");
    if (!(std::isfinite(angle_gain) && angle_gain > 0.0))
        throw ConfigError("EncodingConfig: angle_gain must be > 0");
}

GateMatrix rx(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return GateMatrix{{c, 0.0}, -kI * s, -kI * s, {c, 0.0}};
}

GateMatrix ry(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return GateMatrix{{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
}

GateMatrix rz(double theta) {
    return GateMatrix{std::exp(-kI * (0.5 * theta)), {0.0, 0.0},
                      {0.0, 0.0}, std::exp(kI * (0.5 * theta))};
}

QubitState apply(const GateMatrix& gate, const QubitState& q) {
    return QubitState{gate.m00 * q.amp0 + gate.m01 * q.amp1,
                      gate.m10 * q.amp0 + gate.m11 * q.amp1};
}

QubitState apply_validated(const GateMatrix& gate, const QubitState& q) {
    if (!gate.is_unitary()) {
        std::ostringstream oss;
        oss << "qpolicy::apply_validated: non-unitary gate (defect="
            << gate.unitarity_defect() << ")";
        throw NumericError(oss.str());
    }
    return apply(gate, q);
}

EncodedAngles encode(const VehicleState& x, const EncodingConfig& enc) {
    return EncodedAngles{enc.angle_gain * std::tanh(x.z / enc.z_scale),
                         enc.angle_gain * std::tanh(x.v_r / enc.v_scale),
                         enc.angle_gain * std::tanh(x.v_e / enc.ve_scale)};
}

double expectation_z(const QubitState& q) {
    // Normalized form of |0|^2 - |1|^2: identical on unit states, but it
    // keeps the readout in [-1, 1] exactly and returns exact +-1 on basis
    // states even when |e^{i phi}|^2 rounds away from 1.
    const double p0 = std::norm(q.amp0);
    const double p1 = std::norm(q.amp1);
    return (p0 - p1) / (p0 + p1);
}

double forward(const PolicyParams& p, const VehicleState& x, const EncodingConfig& enc,
               const EnvConfig& cfg) {
    const EncodedAngles ang = encode(x, enc);
    QubitState q;  // |0>
    // Layer 1: data re-uploading, one encoded angle per state component.
    q = apply(rx(ang.phi_z + p.theta1()), q);
    q = apply(ry(ang.phi_vr + p.theta2()), q);
    q = apply(rz(ang.phi_ve + p.theta3()), q);
    // Layer 2: purely variational.
    q = apply(ry(p.theta4()), q);
    q = apply(rz(p.theta5()), q);
    const double m = expectation_z(q);
    const double raw = std::tanh(p.s() * m + p.b());
    return cfg.u_min + 0.5 * (raw + 1.0) * (cfg.u_max - cfg.u_min);
}

PolicyParams init_policy_params(std::uint64_t seed) {
    SplitMix64 gen(seed);
    PolicyParams p;
    for (std::size_t i = 0; i < 5; ++i) p.raw[i] = gen.uniform(-0.1, 0.1);
    p.raw[5] = 1.0;
    p.raw[6] = 0.0;
    return p;
}

}  // namespace lqrl

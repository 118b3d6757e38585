#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "lqrl/dynamics.hpp"

namespace lqrl {

/// Single-qubit state as two complex basis amplitudes.
struct QubitState {
    std::complex<double> amp0{1.0, 0.0};
    std::complex<double> amp1{0.0, 0.0};

    double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
};

/// 2x2 complex gate matrix, row-major.
struct GateMatrix {
    std::complex<double> m00, m01, m10, m11;

    /// Max entrywise deviation of U^dagger * U from the identity.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }
};

/**
 * The 7 trainable scalars of the policy, stored flat for derivative-free
 * optimization: raw[0..4] are the circuit rotation offsets, raw[5] the
 * output scale s, raw[6] the output bias b.
 */
struct PolicyParams {
    static constexpr std::size_t kSize = 7;
    std::array<double, kSize> raw{0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};

    double theta1() const { return raw[0]; }
    double theta2() const { return raw[1]; }
    double theta3() const { return raw[2]; }
    double theta4() const { return raw[3]; }
    double theta5() const { return raw[4]; }
    double s() const { return raw[5]; }
    double b() const { return raw[6]; }

    bool finite() const;
    void validate() const;  // throws ConfigError if any entry is non-finite
};

/// Scales of the state-to-angle encoding.
struct EncodingConfig {
    double z_scale = 10.0;   // [m]
    double v_scale = 10.0;   // [m/s], relative velocity
    double ve_scale = 30.0;  // [m/s], ego velocity
    double angle_gain = 3.14159265358979323846;  // [rad]

    void validate() const;
};

/// Encoded rotation angles, one per state component.
struct EncodedAngles {
    double phi_z;
    double phi_vr;
    double phi_ve;
};

/// Rotation gates about the x/y/z axes (half-angle convention).
GateMatrix rx(double theta);
GateMatrix ry(double theta);
GateMatrix rz(double theta);

/// q' = U * q.
QubitState apply(const GateMatrix& gate, const QubitState& q);

/// Like apply, but rejects non-unitary gates with a NumericError.
QubitState apply_validated(const GateMatrix& gate, const QubitState& q);

/// phi_i = angle_gain * tanh(x_i / scale_i); each |phi_i| < angle_gain.
EncodedAngles encode(const VehicleState& x, const EncodingConfig& enc);

/// Pauli-Z expectation |amp0|^2 - |amp1|^2, in [-1, 1].
double expectation_z(const QubitState& q);

/**
 * Deterministic policy pipeline: from |0>, layer 1 applies
 * Rx(phi_z + theta1), Ry(phi_vr + theta2), Rz(phi_ve + theta3);
 * layer 2 applies Ry(theta4), Rz(theta5). The Pauli-Z readout m is mapped to
 *
 *   u = u_min + (tanh(s*m + b) + 1)/2 * (u_max - u_min),
 *
 * which is strictly inside [u_min, u_max] for finite inputs.
 */
double forward(const PolicyParams& p, const VehicleState& x, const EncodingConfig& enc,
               const EnvConfig& cfg);

/// Seeded initialization: rotation offsets uniform in (-0.1, 0.1), s = 1, b = 0.
PolicyParams init_policy_params(std::uint64_t seed);

}  // namespace lqrl

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace lqrl {

/**
 * @brief Column-parallel per-step telemetry of a closed-loop run.
 *
 * Row k (k = 1..N) describes the k-th applied-control step:
 *   t    time at the end of the step, k*dt [s]
 *   z, v_r, v_e  post-step state x_k
 *   u    the (post-clamp) action applied during the step [m/s^2]
 *   a_l  lead acceleration sampled at the start of the step [m/s^2]
 *   v    Lyapunov value V(x_k) at the end of the step
 *   vdot analytic dV/dt at the start of the step, i.e. at (x_{k-1}, u_k, a_l)
 *
 * The initial state x_0 therefore never appears as a row; metrics run over
 * applied-control steps only.
 */
struct TrajectoryLog {
    std::vector<double> t, z, v_r, v_e, u, a_l, v, vdot;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }

    void push_row(double t_, double z_, double v_r_, double v_e_, double u_,
                  double a_l_, double v_, double vdot_);

    /// Throws ConfigError on ragged columns or non-increasing time.
    void validate() const;
};

/// Fixed header `t,z,v_r,v_e,u,a_l,V,Vdot`; values with 17 significant digits
/// so a parse of the output reproduces every double bit-exactly.
void write_csv(const TrajectoryLog& log, std::ostream& os);

/// Parse a trajectory CSV. Throws IoError with row/column diagnostics.
TrajectoryLog read_csv(std::istream& is);

/// Format one double the way all CSV emitters do (17 significant digits).
std::string format_double(double x);

}  // namespace lqrl

#pragma once

#include <cstddef>
#include <span>

#include "lqrl/lyapunov.hpp"
#include "lqrl/trajectory.hpp"

namespace lqrl {

/// Aggregate evaluation of one logged run.
struct MetricsReport {
    double rmse_z = 0.0;      // [m]
    double mean_abs_u = 0.0;  // [m/s^2]
    double mean_vdot = 0.0;
    double final_v = 0.0;
    double duration = 0.0;  // [s]
    std::size_t n_steps = 0;
};

/// sqrt(1/N * sum z_t^2). Throws ConfigError on an empty series.
double rmse_z(std::span<const double> z);

/// 1/N * sum |u_t|. Throws ConfigError on an empty series.
double mean_abs_u(std::span<const double> u);

/// 1/N * sum vdot_t. Throws ConfigError on an empty series.
double mean_vdot(std::span<const double> vdot);

// Streaming accumulator behind the series metrics; chunked feeding produces
// bit-identical results to a single pass because the element order is the
// summation order.
class MetricsAccumulator {
public:
    void add(double z, double u, double vdot);
    MetricsReport finish(double final_v, double duration) const;

private:
    double sum_z_sq_ = 0.0;
    double sum_abs_u_ = 0.0;
    double sum_vdot_ = 0.0;
    std::size_t n_ = 0;
};

/**
 * Full report over a trajectory log; the final Lyapunov value is recomputed
 * from the last logged state with the supplied weights.
 */
MetricsReport report(const TrajectoryLog& log, const LyapunovParams& p);

/**
 * Report computed from the log columns alone (final Lyapunov value taken
 * from the V column) -- the variant used when only a CSV is available.
 */
MetricsReport report(const TrajectoryLog& log);

}  // namespace lqrl

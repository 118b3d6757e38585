#include "lqrl/metrics.hpp"

#include <cmath>

#include "lqrl/errors.hpp"

namespace lqrl {

namespace {

void require_nonempty(std::span<const double> s, const char* what) {
    if (s.empty()) throw ConfigError(std::string("metrics: empty series for ") + what);
}

// N*dt inferred from the time column; a single-row log carries dt as its
// first (and only) timestamp.
double infer_duration(const TrajectoryLog& log) {
    const double dt = log.size() >= 2 ? log.t[1] - log.t[0] : log.t[0];
    return static_cast<double>(log.size()) * dt;
}

}  // namespace

double rmse_z(std::span<const double> z) {
    require_nonempty(z, "rmse_z");
    double sum = 0.0;
    for (double v : z) sum += v * v;
    return std::sqrt(sum / static_cast<double>(z.size()));
}

double mean_abs_u(std::span<const double> u) {
    require_nonempty(u, "mean_abs_u");
    double sum = 0.0;
    for (double v : u) sum += std::abs(v);
    return sum / static_cast<double>(u.size());
}

double mean_vdot(std::span<const double> vdot) {
    require_nonempty(vdot, "mean_vdot");
    double sum = 0.0;
    for (double v : vdot) sum += v;
    return sum / static_cast<double>(vdot.size());
}

void MetricsAccumulator::add(double z, double u, double vdot) {
    sum_z_sq_ += z * z;
    sum_abs_u_ += std::abs(u);
    sum_vdot_ += vdot;
    ++n_;
}

MetricsReport MetricsAccumulator::finish(double final_v, double duration) const {
    if (n_ == 0) throw ConfigError("metrics: no rows accumulated");
    MetricsReport r;
    const double n = static_cast<double>(n_);
    r.rmse_z = std::sqrt(sum_z_sq_ / n);
    r.mean_abs_u = sum_abs_u_ / n;
    r.mean_vdot = sum_vdot_ / n;
    r.final_v = final_v;
    r.duration = duration;
    r.n_steps = n_;
    return r;
}

namespace {

MetricsReport report_impl(const TrajectoryLog& log, double final_v) {
    log.validate();
    if (log.empty()) throw ConfigError("metrics: empty trajectory");
    MetricsAccumulator acc;
    for (std::size_t i = 0; i < log.size(); ++i) acc.add(log.z[i], log.u[i], log.vdot[i]);
    return acc.finish(final_v, infer_duration(log));
}

}  // namespace

MetricsReport report(const TrajectoryLog& log, const LyapunovParams& p) {
    if (log.empty()) throw ConfigError("metrics: empty trajectory");
    const VehicleState last{log.z.back(), log.v_r.back(), log.v_e.back()};
    return report_impl(log, value(last, p));
}

MetricsReport report(const TrajectoryLog& log) {
    if (log.empty()) throw ConfigError("metrics: empty trajectory");
    return report_impl(log, log.v.back());
}

}  // namespace lqrl

#pragma once

#include <filesystem>
#include <string>

#include "lqrl/trajectory.hpp"

namespace lqrl {

/**
 * Render the three standard panels of a run as one self-contained SVG:
 * spacing error z(t); the two velocities v_r(t) and v_e(t); and dV/dt.
 * One <polyline> per plotted series (four in total).
 */
std::string render_trajectory_svg(const TrajectoryLog& log);

void write_trajectory_svg(const TrajectoryLog& log, const std::filesystem::path& path);

}  // namespace lqrl

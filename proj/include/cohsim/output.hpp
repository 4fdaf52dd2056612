#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cohsim/modespace.hpp"

namespace cohsim {

/// Shortest 17-significant-digit decimal form; round-trips IEEE doubles.
std::string format_double(double value);

/// Columns: t, then per mode re_j, im_j, abs_j, n_j. One row per time point,
/// '\n' line endings, values printed with format_double.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Inverse of write_trajectory_csv (derived columns are recomputed).
Trajectory read_trajectory_csv(std::istream& in);

/// Static 800x500 line chart of |alpha_j(t)| per mode, self-contained SVG 1.1.
void write_svg_plot(std::ostream& out, const Trajectory& traj);

/// Ordered key = value lines.
using Report = std::vector<std::pair<std::string, std::string>>;

void write_report(std::ostream& out, const Report& report);

}  // namespace cohsim

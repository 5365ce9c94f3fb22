#pragma once

#include <ostream>
#include <string>

#include "offhook/sim.hpp"

namespace offhook {

/// Shortest round-trip decimal representation of a double.
std::string fmt_double(double v);

/// Columns: t, frame, s1, s2, s3, s4, s5, u1, u2, is_sample, norm.
/// x-frame runs that carry a z-trace emit an x row and a z row per node,
/// so the file stays time-ordered.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace offhook

#pragma once

#include <string>

#include "pzg/ode.hpp"

namespace pzg {

// Trajectory CSV: header "t,<label_0>,...", one row per sample, doubles with
// 17 significant digits (lossless round trip).
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace pzg

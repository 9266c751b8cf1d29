#pragma once

#include "tilerecon/planner.hpp"

namespace tilerecon {

// Grow-largest-component planner. While start and goal are disjoint, moves a
// removable tile to shrink the shortest gap by one unit; once they overlap,
// grows the largest overlap component by moving removable off-component
// tiles onto empty goal cells adjacent to it. Complete: never Incomplete on
// valid inputs.
PlanResult plan_glc(const Configuration& c_s, Coord robot0, const Configuration& c_t);

}  // namespace tilerecon

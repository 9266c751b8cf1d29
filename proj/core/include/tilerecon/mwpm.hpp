#pragma once

#include "tilerecon/planner.hpp"

namespace tilerecon {

// Matching-driven expansion. Computes one minimum-weight perfect matching up
// front, then repeatedly moves the removable tile with the longest remaining
// matched distance as close to its matched target as possible. Not complete:
// stagnation (a repeated world state, no strictly improving move, or the
// move budget) yields Incomplete rather than an invalid schedule.
PlanResult plan_mwpm(const Configuration& c_s, Coord robot0, const Configuration& c_t);

}  // namespace tilerecon

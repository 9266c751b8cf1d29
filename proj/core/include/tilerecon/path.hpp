#pragma once

#include <optional>
#include <vector>

#include "tilerecon/config.hpp"
#include "tilerecon/coord.hpp"

namespace tilerecon {

// Shortest walk over occupied cells from `from` to `to`, both inclusive.
// Deterministic: BFS expands neighbors north, west, east, south and keeps the
// first parent found. Empty optional when an endpoint is unoccupied or the
// endpoints are disconnected.
std::optional<std::vector<Coord>> robot_path(const Configuration& c, Coord from, Coord to);

// Shortest walk from any cell of `sources` to any cell of `targets`, walking
// only on cells of `graph`. Used by planners to pick pickup/dropoff stances.
std::optional<std::vector<Coord>> multi_path(const Configuration& graph,
                                             const std::vector<Coord>& sources,
                                             const std::vector<Coord>& targets);

}  // namespace tilerecon

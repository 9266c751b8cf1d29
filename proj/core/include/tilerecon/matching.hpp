#pragma once

#include <cstdint>
#include <vector>

#include "tilerecon/config.hpp"

namespace tilerecon {

struct MatchedPair {
    Coord source;
    Coord target;
    int distance;
};

struct Matching {
    // Sorted by distance descending, ties by (source, target) lexicographic.
    std::vector<MatchedPair> pairs;
    std::int64_t total_distance = 0;
};

// Exact minimum-cost assignment (Hungarian, O(n^3)). cost is row-major n*n.
std::vector<int> solve_assignment(const std::vector<std::vector<std::int64_t>>& cost);

// Exact minimum-weight perfect matching between the tiles of c_s and c_t
// under the obstacle-free grid distance.
Matching compute_matching(const Configuration& c_s, const Configuration& c_t);

}  // namespace tilerecon

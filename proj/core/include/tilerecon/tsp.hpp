#pragma once

#include <cstdint>
#include <vector>

#include "tilerecon/config.hpp"

namespace tilerecon {

// Open-tour pickup/dropoff reference cost. An auxiliary node connects to all
// pickups (zero cost, outgoing) and from all dropoffs (zero cost, incoming);
// the tour alternates pickup -> dropoff -> pickup ... with Manhattan edge
// weights, so it decomposes into an ordered sequence of pickup/dropoff legs.
struct TourInstance {
    std::vector<Coord> pickups;   // tiles of the start configuration
    std::vector<Coord> dropoffs;  // tiles of the target configuration
    std::size_t n() const { return pickups.size(); }
};

struct TourLeg {
    int pickup_index;
    int dropoff_index;
};

struct TourResult {
    std::int64_t raw_cost = 0;
    std::int64_t adjusted_cost = 0;  // max(0, raw - 2n)
    std::vector<TourLeg> order;      // visit sequence between aux departures
    bool exact = false;
};

TourInstance build_instance(const Configuration& c_s, const Configuration& c_t);

// Exact below this size (subset DP), heuristic above.
inline constexpr std::size_t kTspExactLimit = 8;

TourResult solve_tour(const TourInstance& inst);

// Exposed for verification: the two routes solve_tour switches between.
TourResult solve_tour_exact(const TourInstance& inst);
TourResult solve_tour_heuristic(const TourInstance& inst);

}  // namespace tilerecon

#pragma once

#include <cstdint>
#include <optional>

#include "tilerecon/schedule.hpp"

namespace tilerecon {

struct OracleLimits {
    // States may only use cells inside this window. By default the union
    // bounding box of start and target inflated by `margin`.
    std::optional<BoundingBox> window;
    int margin = 2;
    std::uint64_t max_expanded = 5'000'000;
};

enum class OracleStatus { Optimal, Infeasible, LimitExceeded };

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    Schedule schedule;
    double cost = 0.0;
};

// Uniform-cost search over world states; exhaustive within the window, so
// the returned schedule is cost-optimal there. Intended for tiny instances.
OracleResult optimal_schedule_oracle(const Configuration& c_s, Coord robot0,
                                     const Configuration& c_t,
                                     const CostWeights& w = CostWeights::unit(),
                                     const OracleLimits& limits = {});

}  // namespace tilerecon

#pragma once

#include <cstddef>
#include <vector>

#include "tilerecon/planner.hpp"
#include "tilerecon/schedule.hpp"

namespace tilerecon {

// A connected part of the configuration that can be detached and moved
// without disconnecting the remainder.
struct FreeComponent {
    std::vector<Coord> tiles;  // sorted lexicographic
    Coord anchor;              // attachment cell toward the remainder
};

enum class FreeComponentStrategy { OneByOne, AllAtOnce };
enum class OrientationChoice { Auto, ForceHorizontal, ForceVertical };

struct Ch2cOptions {
    FreeComponentStrategy strategy = FreeComponentStrategy::OneByOne;
    OrientationChoice orientation = OrientationChoice::Auto;
    CostWeights weights;
};

struct HistogramPlan {
    int base = 0;  // base row (North/South) or base column (East/West)
    Facing facing = Facing::North;
    Configuration histogram;
    Schedule schedule;
    Coord end_robot;  // robot position after the schedule
};

// Axis of the bisector line the planner works against.
enum class BisectorAxis { Horizontal, Vertical };

// Prefers crossing the smaller gap: horizontal bisector iff the vertical gap
// does not exceed the horizontal one. Intersecting boxes fall back to the
// horizontal-axis overlap adaptation.
BisectorAxis choose_orientation(const Configuration& c_s, const Configuration& c_t);

// Free components of c with respect to the histogram being built on `base`
// facing f, ordered leftmost anchor first. Empty iff c already is that
// histogram.
std::vector<FreeComponent> find_free_components(const Configuration& c, int base, Facing f);

// Gathers c into a histogram whose base strip lies on `base` facing f. The
// base may sit inside or beyond c's bounding box on the facing-opposite
// side; tiles on the wrong side of the base are brought around it.
HistogramPlan to_histogram(const Configuration& c, int base, Facing f,
                           const Ch2cOptions& opts, Coord robot0);

struct TransferResult {
    Schedule schedule;
    Coord end_robot;
    std::int64_t shift_pairs = 0;     // moves spent aligning the histograms
    std::int64_t transfer_pairs = 0;  // one per differing tile
};

// Reconfigures between two histograms facing opposing directions. When no
// target cell touches the current structure, tiles from the trailing edge
// first bridge the gap (the shift), then the one-tile-per-iteration transfer
// runs: topmost leftmost source tile to the topmost leftmost fillable target.
TransferResult histogram_transfer(const HistogramPlan& h_s, const HistogramPlan& h_t,
                                  Coord robot);

struct Ch2cPlan {
    PlanStatus status = PlanStatus::Ok;
    Schedule schedule;
    std::string note;
    // schedule index of the first op of each phase; phase k spans
    // [phase_begin[k], phase_begin[k+1]) with phase_begin[3] capping phase 2
    // (the seam walk before the reversed build-out is part of phase 2).
    std::size_t phase_begin[4] = {0, 0, 0, 0};
    HistogramPlan h_s;
    HistogramPlan h_t;
    bool shift_used = false;
};

// Three phases: start -> histogram, histogram -> histogram, then the target's
// own histogram schedule executed in reverse.
Ch2cPlan plan_ch2c(const Configuration& c_s, Coord robot0, const Configuration& c_t,
                   const Ch2cOptions& opts = {});

}  // namespace tilerecon

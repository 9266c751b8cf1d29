#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilerecon/histogram_planner.hpp"
#include "tilerecon/mapgen.hpp"
#include "tilerecon/planner.hpp"
#include "tilerecon/schedule.hpp"

namespace tilerecon {

struct RunRecord {
    std::string map_id;
    std::string family;
    std::size_t n = 0;
    std::string planner;
    std::string options;
    std::string status;  // ok | incomplete | infeasible
    CostBreakdown breakdown;
    std::int64_t pairs = 0;
    std::int64_t tsp_raw = 0;
    std::int64_t tsp_adjusted = 0;
    std::uint64_t seed = 0;
    // Gaps between the bounding boxes (negative when overlapping); filled on
    // every record so bisector comparisons are derivable from the CSV.
    int gap_h = 0;  // vertical separation crossed by a horizontal bisector
    int gap_v = 0;  // horizontal separation crossed by a vertical bisector
    double wall_ms = 0.0;  // sidecar only; never in the deterministic CSV
};

struct ExperimentSpec {
    std::vector<MapFamily> families;
    int count = 200;
    int n_min = 10;
    int n_max = 60;
    std::uint64_t seed = 1;
    std::vector<std::string> planners;  // ch2c | glc | mwpm | tsp
    CostWeights weights;
    FreeComponentStrategy strategy = FreeComponentStrategy::OneByOne;
    OrientationChoice orientation = OrientationChoice::Auto;
    // Adds ch2c runs forced to each bisector axis, for orientation studies.
    bool orientation_compare = false;

    std::string to_json() const;
    static ExperimentSpec from_json(const std::string& text);
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::string csv;           // deterministic; sorted by (family, seed, planner, options)
    std::string summary_json;  // per-planner means, failure rates, bisector statistic
    std::string timings_csv;   // wall-clock sidecar, matches csv row order
};

// Runs every (map, planner, option-set) cell. Any validator rejection of a
// planner schedule throws BenchValidationError with the offending map
// serialized as a repro fixture.
ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs = 1);

struct BenchValidationError : std::runtime_error {
    BenchValidationError(const std::string& what, std::string fixture_json)
        : std::runtime_error(what), fixture(std::move(fixture_json)) {}
    std::string fixture;
};

// The built-in two-armed fixture used by the free-component strategy study:
// a U-shaped start (arms of height 4 on a bar of width 5) over a compact
// target below it.
MapInstance ushape_fixture();

}  // namespace tilerecon

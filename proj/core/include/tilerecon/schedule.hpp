#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilerecon/config.hpp"
#include "tilerecon/coord.hpp"

namespace tilerecon {

enum class OpKind { Move, Pickup, Dropoff };

struct Operation {
    OpKind kind;
    Coord at;  // move target / tile picked / cell filled

    static Operation move(Coord c) { return {OpKind::Move, c}; }
    static Operation pickup(Coord c) { return {OpKind::Pickup, c}; }
    static Operation dropoff(Coord c) { return {OpKind::Dropoff, c}; }

    friend bool operator==(const Operation&, const Operation&) = default;
};

using Schedule = std::vector<Operation>;

// Configuration plus robot; the unit of simulation. The robot always stands
// on a tile and carries at most one tile, which occupies no cell.
struct WorldState {
    Configuration config;
    Coord robot;
    bool carrying = false;
};

struct CostWeights {
    double move_unloaded = 1.0;
    double move_loaded = 1.0;
    double pickup = 1.0;
    double dropoff = 1.0;

    static CostWeights unit() { return {}; }
};

struct CostBreakdown {
    std::int64_t moves_unloaded = 0;
    std::int64_t moves_loaded = 0;
    std::int64_t pickups = 0;
    std::int64_t dropoffs = 0;
    double total = 0.0;
};

double schedule_cost(const CostBreakdown& counts, const CostWeights& w);

enum class OpError {
    NotAdjacent,
    TargetOccupied,
    TargetUnoccupied,
    DisconnectsStructure,
    NotCarrying,
    AlreadyCarrying,
    RobotTile,
};

const char* to_string(OpError e);

// Applies one operation in place; on failure leaves the state untouched and
// reports the violated precondition.
std::optional<OpError> try_apply(WorldState& s, const Operation& op);

// Pure variant; throws std::invalid_argument on an illegal operation.
WorldState apply_op(const WorldState& s, const Operation& op);

struct ValidationReport {
    bool ok = false;
    CostBreakdown breakdown;
    // on failure:
    std::size_t error_index = 0;  // index of the offending op, or ops.size() for end-state errors
    std::string message;
};

// Replays sched from (c_s, robot0, not carrying). Accepts iff every step is
// legal, the final configuration equals c_t and the robot carries nothing.
// This is the ground truth all planners are tested against.
ValidationReport validate_schedule(const Configuration& c_s, Coord robot0,
                                   const Schedule& sched, const Configuration& c_t,
                                   const CostWeights& w = CostWeights::unit());

// Number of pickup/dropoff pairs. Throws std::invalid_argument when pickups
// and dropoffs do not alternate starting with a pickup and ending resolved.
std::int64_t count_pairs(const Schedule& sched);

// Reverses a valid schedule: pickups and dropoffs swap, moves retrace the
// same cells backwards. Replaying the result from the forward end state
// restores the forward start configuration. robot0 is the forward schedule's
// starting robot position (move retargeting needs it).
Schedule reverse_schedule(const Schedule& sched, Coord robot0);

// JSON Lines format: {"op":"move"|"pickup"|"dropoff","x":int,"y":int}
std::string schedule_to_jsonl(const Schedule& sched);
Schedule schedule_from_jsonl(const std::string& text);  // throws std::invalid_argument

std::string breakdown_to_json(const CostBreakdown& b);

}  // namespace tilerecon

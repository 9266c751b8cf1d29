#pragma once

// Shared planner execution helpers: walk the robot, pick a tile, carry it on
// a shortest structure walk, drop it. Every emitted op is legal by
// construction; the validator re-checks everything in the tests.

#include <stdexcept>

#include "tilerecon/path.hpp"
#include "tilerecon/schedule.hpp"

namespace tilerecon::detail {

struct ExecState {
    Configuration tiles;
    Coord robot;
    Schedule sched;
};

inline void append_walk(ExecState& st, const std::vector<Coord>& path) {
    for (std::size_t i = 1; i < path.size(); ++i) st.sched.push_back(Operation::move(path[i]));
    if (!path.empty()) st.robot = path.back();
}

// Walks the robot (unloaded) to `to` over the current structure.
inline bool walk_to(ExecState& st, Coord to) {
    if (st.robot == to) return true;
    auto path = robot_path(st.tiles, st.robot, to);
    if (!path) return false;
    append_walk(st, *path);
    return true;
}

// Moves one tile from `pick` to `drop`. The loaded walk runs on
// `loaded_graph` when given (a sub-structure that must be occupied
// throughout), otherwise on the full structure. Returns false when no legal
// realization exists; the state is left unchanged in that case.
inline bool exec_pair(ExecState& st, Coord pick, Coord drop,
                      const Configuration* loaded_graph = nullptr) {
    if (!st.tiles.contains(pick) || st.tiles.contains(drop)) return false;

    Configuration after_pick = st.tiles;
    after_pick.erase(pick);

    std::vector<Coord> pick_stances, drop_stances;
    for (Coord nb : neighbors4(pick))
        if (after_pick.contains(nb)) pick_stances.push_back(nb);
    for (Coord nb : neighbors4(drop))
        if (after_pick.contains(nb)) drop_stances.push_back(nb);
    if (pick_stances.empty() || drop_stances.empty()) return false;

    std::optional<std::vector<Coord>> loaded;
    if (loaded_graph) {
        Configuration g = *loaded_graph;
        g.erase(pick);
        loaded = multi_path(g, pick_stances, drop_stances);
    }
    if (!loaded) loaded = multi_path(after_pick, pick_stances, drop_stances);
    if (!loaded) return false;

    ExecState backup = st;
    if (st.robot == pick) {
        // Step off the tile about to be picked.
        bool moved = false;
        for (Coord nb : neighbors4(pick)) {
            if (after_pick.contains(nb)) {
                st.sched.push_back(Operation::move(nb));
                st.robot = nb;
                moved = true;
                break;
            }
        }
        if (!moved) {
            st = backup;
            return false;
        }
    }
    if (!walk_to(st, loaded->front())) {
        st = backup;
        return false;
    }
    st.sched.push_back(Operation::pickup(pick));
    st.tiles.erase(pick);
    append_walk(st, *loaded);
    st.sched.push_back(Operation::dropoff(drop));
    st.tiles.insert(drop);
    return true;
}

}  // namespace tilerecon::detail

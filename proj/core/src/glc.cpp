#include "tilerecon/glc.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "exec_util.hpp"
#include "tilerecon/path.hpp"

namespace tilerecon {

namespace {

using detail::ExecState;

int dist_to(const Configuration& g, Coord c) {
    int best = std::numeric_limits<int>::max();
    for (const Coord& t : g.cells()) best = std::min(best, manhattan(c, t));
    return best;
}

// Largest connected component of cells, ties to the one holding the
// lexicographically smallest cell.
std::vector<Coord> largest_component(const Configuration& cells) {
    std::vector<Coord> order = cells.sorted();
    std::unordered_set<Coord, CoordHash> seen;
    std::vector<Coord> best;
    for (Coord s : order) {
        if (seen.count(s)) continue;
        std::vector<Coord> comp{s};
        seen.insert(s);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (Coord nb : neighbors4(comp[i])) {
                if (cells.contains(nb) && seen.insert(nb).second) comp.push_back(nb);
            }
        }
        if (comp.size() > best.size()) best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    return best;
}

// Empty cells adjacent to the structure with `removed` taken out.
std::vector<Coord> frontier_cells(const Configuration& tiles, Coord removed) {
    std::vector<Coord> out;
    std::unordered_set<Coord, CoordHash> seen;
    for (Coord t : tiles.sorted()) {
        if (t == removed) continue;
        for (Coord nb : neighbors4(t)) {
            if (nb == removed || tiles.contains(nb)) continue;
            if (seen.insert(nb).second) out.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PlanResult plan_glc(const Configuration& c_s, Coord robot0, const Configuration& c_t) {
    if (c_s.size() != c_t.size()) throw std::invalid_argument("plan_glc: sizes differ");
    if (!c_s.contains(robot0)) throw std::invalid_argument("plan_glc: robot not on start");
    if (!is_connected(c_s) || !is_connected(c_t))
        throw std::invalid_argument("plan_glc: configurations must be connected");

    if (c_s == c_t) return {PlanStatus::Ok, {}, ""};
    if (c_s.size() == 1) return {PlanStatus::Infeasible, {}, "single tile cannot move itself"};

    ExecState st{c_s, robot0, {}};
    const Configuration& goal = c_t;

    const std::size_t guard = 64 * c_s.size() * c_s.size() + 4096;
    std::size_t iter = 0;

    while (!(st.tiles == goal)) {
        if (++iter > guard) throw std::runtime_error("plan_glc: move budget exhausted");

        Configuration overlap = set_intersection(st.tiles, goal);
        if (overlap.empty()) {
            // Close the shortest gap by one unit: move a removable tile so the
            // minimum start-goal distance strictly shrinks.
            int cur_min = std::numeric_limits<int>::max();
            Coord gap_goal{};
            for (Coord s : st.tiles.sorted()) {
                for (Coord g : goal.sorted()) {
                    int d = manhattan(s, g);
                    if (d < cur_min) {
                        cur_min = d;
                        gap_goal = g;
                    }
                }
            }
            std::vector<Coord> cands = non_articulation_tiles(st.tiles);
            std::sort(cands.begin(), cands.end(), [&](Coord a, Coord b) {
                int da = manhattan(a, gap_goal), db = manhattan(b, gap_goal);
                if (da != db) return da < db;
                return a < b;
            });
            bool moved = false;
            for (Coord pick : cands) {
                Coord best{};
                int best_d = std::numeric_limits<int>::max();
                for (Coord e : frontier_cells(st.tiles, pick)) {
                    int d = dist_to(goal, e);
                    if (d < best_d || (d == best_d && e < best)) {
                        best_d = d;
                        best = e;
                    }
                }
                if (best_d < cur_min) {
                    if (!detail::exec_pair(st, pick, best))
                        throw std::runtime_error("plan_glc: gap move rejected");
                    moved = true;
                    break;
                }
            }
            if (!moved) throw std::runtime_error("plan_glc: no gap-reducing move");
            continue;
        }

        // Grow the largest overlap component.
        std::vector<Coord> comp = largest_component(overlap);
        std::unordered_set<Coord, CoordHash> comp_set(comp.begin(), comp.end());

        std::vector<Coord> targets;  // empty goal cells adjacent to the component
        {
            std::unordered_set<Coord, CoordHash> seen;
            for (Coord c : comp) {
                for (Coord nb : neighbors4(c)) {
                    if (!goal.contains(nb) || st.tiles.contains(nb)) continue;
                    if (seen.insert(nb).second) targets.push_back(nb);
                }
            }
            std::sort(targets.begin(), targets.end());
        }
        if (targets.empty()) throw std::runtime_error("plan_glc: component has no open frontier");

        std::vector<Coord> leaves;
        for (Coord t : non_articulation_tiles(st.tiles))
            if (!comp_set.count(t)) leaves.push_back(t);
        if (leaves.empty()) throw std::runtime_error("plan_glc: no movable leaf");

        Coord pick{}, drop{};
        bool misplaced_found = false;
        int best_d = std::numeric_limits<int>::max();
        for (Coord l : leaves) {
            bool misplaced = !goal.contains(l);
            if (misplaced_found && !misplaced) continue;
            for (Coord g : targets) {
                int d = manhattan(l, g);
                bool better;
                if (misplaced && !misplaced_found) {
                    better = true;  // first misplaced candidate beats any placed one
                } else {
                    better = d < best_d || (d == best_d && (l < pick || (l == pick && g < drop)));
                }
                if (better) {
                    pick = l;
                    drop = g;
                    best_d = d;
                    misplaced_found = misplaced;
                }
            }
        }
        if (!detail::exec_pair(st, pick, drop))
            throw std::runtime_error("plan_glc: grow move rejected");
    }

    return {PlanStatus::Ok, std::move(st.sched), ""};
}

}  // namespace tilerecon

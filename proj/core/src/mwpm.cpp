#include "tilerecon/mwpm.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "exec_util.hpp"
#include "tilerecon/matching.hpp"

namespace tilerecon {

namespace {

struct PairState {
    Coord cur;
    Coord target;
    int initial_rank;
};

std::uint64_t state_digest(const Configuration& tiles, Coord robot) {
    CoordHash ch;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Coord& t : tiles.sorted()) h = (h ^ ch(t)) * 0x100000001B3ULL;
    h = (h ^ ch(robot)) * 0x100000001B3ULL;
    return h;
}

}  // namespace

PlanResult plan_mwpm(const Configuration& c_s, Coord robot0, const Configuration& c_t) {
    if (c_s.size() != c_t.size()) throw std::invalid_argument("plan_mwpm: sizes differ");
    if (!c_s.contains(robot0)) throw std::invalid_argument("plan_mwpm: robot not on start");
    if (!is_connected(c_s) || !is_connected(c_t))
        throw std::invalid_argument("plan_mwpm: configurations must be connected");

    if (c_s == c_t) return {PlanStatus::Ok, {}, ""};
    if (c_s.size() == 1) return {PlanStatus::Infeasible, {}, "single tile cannot move itself"};

    // One matching, computed up front; targets are consumed as tiles arrive.
    Matching m = compute_matching(c_s, c_t);
    std::vector<PairState> pairs;
    pairs.reserve(m.pairs.size());
    for (std::size_t i = 0; i < m.pairs.size(); ++i)
        pairs.push_back({m.pairs[i].source, m.pairs[i].target, static_cast<int>(i)});

    detail::ExecState st{c_s, robot0, {}};
    const std::int64_t budget = 8 * static_cast<std::int64_t>(c_s.size()) * c_s.size();
    std::int64_t moves = 0;
    std::unordered_set<std::uint64_t> seen{state_digest(st.tiles, st.robot)};

    while (!(st.tiles == c_t)) {
        std::vector<Coord> movable = non_articulation_tiles(st.tiles);
        std::unordered_set<Coord, CoordHash> movable_set(movable.begin(), movable.end());

        // Longest current matched distance first; initial rank breaks ties.
        std::vector<int> idx;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (pairs[i].cur != pairs[i].target) idx.push_back(static_cast<int>(i));
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            int da = manhattan(pairs[a].cur, pairs[a].target);
            int db = manhattan(pairs[b].cur, pairs[b].target);
            if (da != db) return da > db;
            return pairs[a].initial_rank < pairs[b].initial_rank;
        });

        bool acted = false;
        for (int pi : idx) {
            PairState& p = pairs[pi];
            if (!movable_set.count(p.cur)) continue;
            const int cur_d = manhattan(p.cur, p.target);

            // Empty structure-adjacent cells, excluding the vacated one; keep
            // only drops that do not lengthen this pair's distance.
            Coord best{};
            int best_d = std::numeric_limits<int>::max();
            bool best_in_goal = false;
            bool found = false;
            std::unordered_set<Coord, CoordHash> seen_cells;
            for (Coord t : st.tiles.sorted()) {
                if (t == p.cur) continue;
                for (Coord e : neighbors4(t)) {
                    if (e == p.cur || st.tiles.contains(e)) continue;
                    if (!seen_cells.insert(e).second) continue;
                    int d = manhattan(e, p.target);
                    if (d > cur_d) continue;
                    bool in_goal = c_t.contains(e);
                    bool better = !found || d < best_d ||
                                  (d == best_d && in_goal && !best_in_goal) ||
                                  (d == best_d && in_goal == best_in_goal && e < best);
                    if (better) {
                        best = e;
                        best_d = d;
                        best_in_goal = in_goal;
                        found = true;
                    }
                }
            }
            if (!found) continue;

            if (!detail::exec_pair(st, p.cur, best)) continue;
            p.cur = best;
            acted = true;
            break;
        }

        if (!acted) return {PlanStatus::Incomplete, {}, "stagnation: no tile can approach its target"};
        if (++moves > budget) return {PlanStatus::Incomplete, {}, "move budget exceeded"};
        if (!seen.insert(state_digest(st.tiles, st.robot)).second)
            return {PlanStatus::Incomplete, {}, "world state repeated"};
    }

    return {PlanStatus::Ok, std::move(st.sched), ""};
}

}  // namespace tilerecon

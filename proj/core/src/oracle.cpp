#include "tilerecon/oracle.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace tilerecon {

namespace {

// Canonical state key: sorted tiles, robot, carrying flag.
struct StateKey {
    std::vector<Coord> tiles;
    Coord robot;
    bool carrying;

    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        CoordHash ch;
        for (const Coord& t : k.tiles) h = h * 0x100000001B3ULL + ch(t);
        h = h * 0x100000001B3ULL + ch(k.robot);
        h = h * 0x100000001B3ULL + (k.carrying ? 1 : 2);
        return static_cast<std::size_t>(h);
    }
};

StateKey make_key(const WorldState& s) {
    return {s.config.sorted(), s.robot, s.carrying};
}

bool in_window(Coord c, const BoundingBox& w) {
    return c.x >= w.xmin && c.x <= w.xmax && c.y >= w.ymin && c.y <= w.ymax;
}

}  // namespace

OracleResult optimal_schedule_oracle(const Configuration& c_s, Coord robot0,
                                     const Configuration& c_t, const CostWeights& w,
                                     const OracleLimits& limits) {
    if (c_s.size() != c_t.size())
        throw std::invalid_argument("oracle: start and target sizes differ");
    if (!c_s.contains(robot0)) throw std::invalid_argument("oracle: robot not on start");
    if (!is_connected(c_s) || !is_connected(c_t))
        throw std::invalid_argument("oracle: configurations must be connected");

    BoundingBox window;
    if (limits.window) {
        window = *limits.window;
    } else {
        BoundingBox a = bounding_box(c_s);
        BoundingBox b = bounding_box(c_t);
        window = {std::min(a.xmin, b.xmin) - limits.margin, std::max(a.xmax, b.xmax) + limits.margin,
                  std::min(a.ymin, b.ymin) - limits.margin, std::max(a.ymax, b.ymax) + limits.margin};
    }

    const StateKey goal_tiles{c_t.sorted(), {}, false};

    struct Node {
        double cost;
        std::uint64_t order;  // tie-break: expansion is FIFO among equal costs
        StateKey key;
    };
    struct NodeCmp {
        bool operator()(const Node& a, const Node& b) const {
            if (a.cost != b.cost) return a.cost > b.cost;
            return a.order > b.order;
        }
    };

    std::unordered_map<StateKey, double, StateKeyHash> best;
    std::unordered_map<StateKey, std::pair<StateKey, Operation>, StateKeyHash> parent;
    std::priority_queue<Node, std::vector<Node>, NodeCmp> open;

    StateKey start = make_key(WorldState{c_s, robot0, false});
    best[start] = 0.0;
    std::uint64_t seq = 0;
    open.push({0.0, seq++, start});
    std::uint64_t expanded = 0;

    auto is_goal = [&](const StateKey& k) {
        return !k.carrying && k.tiles == goal_tiles.tiles;
    };

    while (!open.empty()) {
        Node cur = open.top();
        open.pop();
        auto it = best.find(cur.key);
        if (it == best.end() || cur.cost > it->second) continue;

        if (is_goal(cur.key)) {
            Schedule sched;
            StateKey k = cur.key;
            while (!(k == start)) {
                auto pit = parent.find(k);
                sched.push_back(pit->second.second);
                k = pit->second.first;
            }
            std::reverse(sched.begin(), sched.end());
            return {OracleStatus::Optimal, std::move(sched), cur.cost};
        }

        if (++expanded > limits.max_expanded)
            return {OracleStatus::LimitExceeded, {}, 0.0};

        WorldState st;
        st.config = Configuration(cur.key.tiles);
        st.robot = cur.key.robot;
        st.carrying = cur.key.carrying;

        auto relax = [&](const Operation& op, double step) {
            if (op.kind == OpKind::Dropoff && !in_window(op.at, window)) return;
            WorldState next = st;
            if (try_apply(next, op)) return;
            StateKey nk = make_key(next);
            double nc = cur.cost + step;
            auto bit = best.find(nk);
            if (bit == best.end() || nc < bit->second) {
                best[nk] = nc;
                parent[nk] = {cur.key, op};
                open.push({nc, seq++, nk});
            }
        };

        for (Coord nb : neighbors4(st.robot)) {
            relax(Operation::move(nb), st.carrying ? w.move_loaded : w.move_unloaded);
            relax(Operation::pickup(nb), w.pickup);
            relax(Operation::dropoff(nb), w.dropoff);
        }
    }
    return {OracleStatus::Infeasible, {}, 0.0};
}

}  // namespace tilerecon

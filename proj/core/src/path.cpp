#include "tilerecon/path.hpp"

#include <deque>
#include <unordered_map>

namespace tilerecon {

std::optional<std::vector<Coord>> robot_path(const Configuration& c, Coord from, Coord to) {
    return multi_path(c, {from}, {to});
}

std::optional<std::vector<Coord>> multi_path(const Configuration& graph,
                                             const std::vector<Coord>& sources,
                                             const std::vector<Coord>& targets) {
    std::unordered_map<Coord, Coord, CoordHash> parent;
    std::unordered_set<Coord, CoordHash> target_set;
    for (Coord t : targets)
        if (graph.contains(t)) target_set.insert(t);
    if (target_set.empty()) return std::nullopt;

    std::deque<Coord> queue;
    for (Coord s : sources) {
        if (!graph.contains(s)) continue;
        if (!parent.count(s)) {
            parent.emplace(s, s);
            queue.push_back(s);
        }
    }
    if (queue.empty()) return std::nullopt;

    auto build = [&](Coord end) {
        std::vector<Coord> path{end};
        Coord cur = end;
        while (parent.at(cur) != cur) {
            cur = parent.at(cur);
            path.push_back(cur);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    for (Coord s : queue)
        if (target_set.count(s)) return build(s);

    while (!queue.empty()) {
        Coord cur = queue.front();
        queue.pop_front();
        for (Coord nb : neighbors4(cur)) {
            if (!graph.contains(nb) || parent.count(nb)) continue;
            parent.emplace(nb, cur);
            if (target_set.count(nb)) return build(nb);
            queue.push_back(nb);
        }
    }
    return std::nullopt;
}

}  // namespace tilerecon

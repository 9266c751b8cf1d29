#include "tilerecon/config.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace tilerecon {

Configuration::Configuration(std::vector<Coord> tiles) {
    for (const Coord& c : tiles) cells_.insert(c);
}

Configuration::Configuration(std::initializer_list<Coord> tiles) {
    for (const Coord& c : tiles) cells_.insert(c);
}

std::vector<Coord> Configuration::sorted() const {
    std::vector<Coord> out(cells_.begin(), cells_.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool Configuration::operator==(const Configuration& other) const {
    if (cells_.size() != other.cells_.size()) return false;
    for (const Coord& c : cells_)
        if (!other.contains(c)) return false;
    return true;
}

Configuration set_difference(const Configuration& a, const Configuration& b) {
    Configuration out;
    for (const Coord& c : a.cells_)
        if (!b.contains(c)) out.insert(c);
    return out;
}

Configuration set_intersection(const Configuration& a, const Configuration& b) {
    Configuration out;
    for (const Coord& c : a.cells_)
        if (b.contains(c)) out.insert(c);
    return out;
}

bool is_connected(const Configuration& c) {
    if (c.size() <= 1) return true;
    const auto& cells = c.cells();
    std::unordered_set<Coord, CoordHash> seen;
    std::deque<Coord> queue{*cells.begin()};
    seen.insert(*cells.begin());
    while (!queue.empty()) {
        Coord cur = queue.front();
        queue.pop_front();
        for (Coord nb : neighbors4(cur)) {
            if (c.contains(nb) && seen.insert(nb).second) queue.push_back(nb);
        }
    }
    return seen.size() == c.size();
}

BoundingBox bounding_box(const Configuration& c) {
    if (c.empty()) throw std::invalid_argument("bounding_box: empty configuration");
    BoundingBox bb;
    bool first = true;
    for (const Coord& t : c.cells()) {
        if (first) {
            bb = {t.x, t.x, t.y, t.y};
            first = false;
        } else {
            bb.xmin = std::min(bb.xmin, t.x);
            bb.xmax = std::max(bb.xmax, t.x);
            bb.ymin = std::min(bb.ymin, t.y);
            bb.ymax = std::max(bb.ymax, t.y);
        }
    }
    return bb;
}

namespace {

// Iterative Tarjan lowlink pass over the tile adjacency graph.
std::unordered_set<Coord, CoordHash> articulation_points(const Configuration& c) {
    std::unordered_set<Coord, CoordHash> cut;
    if (c.size() < 3) return cut;

    std::unordered_map<Coord, int, CoordHash> index;
    std::unordered_map<Coord, int, CoordHash> low;
    Coord root = *c.cells().begin();

    struct Frame {
        Coord node;
        Coord parent;
        int next_nb;
        int child_count;
    };
    std::vector<Frame> stack;
    stack.push_back({root, root, 0, 0});
    index[root] = 0;
    low[root] = 0;
    int counter = 1;

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_nb < 4) {
            Coord nb = neighbors4(f.node)[f.next_nb++];
            if (!c.contains(nb) || nb == f.parent) continue;
            auto it = index.find(nb);
            if (it != index.end()) {
                low[f.node] = std::min(low[f.node], it->second);
            } else {
                index[nb] = counter;
                low[nb] = counter;
                ++counter;
                ++f.child_count;
                stack.push_back({nb, f.node, 0, 0});
            }
        } else {
            Frame done = f;
            stack.pop_back();
            if (stack.empty()) {
                if (done.child_count >= 2) cut.insert(done.node);
            } else {
                Frame& up = stack.back();
                low[up.node] = std::min(low[up.node], low[done.node]);
                if (up.node != root && low[done.node] >= index[up.node]) cut.insert(up.node);
            }
        }
    }
    return cut;
}

}  // namespace

std::vector<Coord> non_articulation_tiles(const Configuration& c) {
    auto cut = articulation_points(c);
    std::vector<Coord> out;
    for (const Coord& t : c.cells())
        if (!cut.count(t)) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Coord> removable_tiles(const Configuration& c, Coord robot) {
    if (!c.contains(robot)) throw std::invalid_argument("removable_tiles: robot is not on a tile");
    std::vector<Coord> out;
    for (Coord t : non_articulation_tiles(c))
        if (t != robot) out.push_back(t);
    return out;
}

namespace {

// Checks the North-facing shape: base is the bottom row, columns rise.
bool is_histogram_north(const std::vector<Coord>& tiles) {
    int base = tiles.front().y;
    for (const Coord& t : tiles) base = std::min(base, t.y);

    std::unordered_map<int, std::pair<int, int>> col;  // x -> (min y, max y)
    std::unordered_map<int, int> count;
    for (const Coord& t : tiles) {
        auto it = col.find(t.x);
        if (it == col.end()) {
            col[t.x] = {t.y, t.y};
            count[t.x] = 1;
        } else {
            it->second.first = std::min(it->second.first, t.y);
            it->second.second = std::max(it->second.second, t.y);
            ++count[t.x];
        }
    }
    int xmin = tiles.front().x, xmax = tiles.front().x;
    for (const auto& [x, _] : col) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    for (int x = xmin; x <= xmax; ++x) {
        auto it = col.find(x);
        if (it == col.end()) return false;  // base strip not contiguous
        auto [lo, hi] = it->second;
        if (lo != base) return false;                  // column does not reach the base
        if (count[x] != hi - lo + 1) return false;     // column has a gap
    }
    return true;
}

}  // namespace

bool is_histogram(const Configuration& c, Facing f) {
    if (c.empty()) throw std::invalid_argument("is_histogram: empty configuration");
    std::vector<Coord> tiles = c.sorted();
    // Map facing f to North and reuse one check.
    for (Coord& t : tiles) {
        switch (f) {
            case Facing::North: break;
            case Facing::South: t = {-t.x, -t.y}; break;
            case Facing::East: t = {-t.y, t.x}; break;   // east column -> north column
            case Facing::West: t = {t.y, -t.x}; break;
        }
    }
    return is_histogram_north(tiles);
}

Configuration translate(const Configuration& c, int dx, int dy) {
    Configuration out;
    for (const Coord& t : c.cells()) out.insert({t.x + dx, t.y + dy});
    return out;
}

std::string to_json_array(const Configuration& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Coord& t : c.sorted()) arr.push_back({t.x, t.y});
    return arr.dump();
}

Configuration configuration_from_json_array(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("configuration: bad JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("configuration: expected an array");
    Configuration out;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer())
            throw std::invalid_argument("configuration: expected [x,y] integer pairs");
        out.insert({item[0].get<int>(), item[1].get<int>()});
    }
    return out;
}

}  // namespace tilerecon

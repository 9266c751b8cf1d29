#include <algorithm>
#include <deque>
#include <set>

#include "doctest.h"
#include "tilerecon/config.hpp"
#include "tilerecon/path.hpp"
#include "tilerecon/rng.hpp"

using namespace tilerecon;

namespace {

// Independent oracle: remove each tile, recheck connectivity by flood fill.
std::vector<Coord> removable_brute(const Configuration& c, Coord robot) {
    std::vector<Coord> out;
    for (Coord t : c.sorted()) {
        if (t == robot) continue;
        Configuration rest = c;
        rest.erase(t);
        if (is_connected(rest)) out.push_back(t);
    }
    return out;
}

// Independent BFS distance oracle over occupied cells.
int bfs_oracle(const Configuration& c, Coord from, Coord to) {
    if (!c.contains(from) || !c.contains(to)) return -1;
    std::deque<std::pair<Coord, int>> q{{from, 0}};
    std::set<Coord> seen{from};
    while (!q.empty()) {
        auto [cur, d] = q.front();
        q.pop_front();
        if (cur == to) return d;
        for (Coord nb : neighbors4(cur)) {
            if (c.contains(nb) && seen.insert(nb).second) q.push_back({nb, d + 1});
        }
    }
    return -1;
}

Configuration random_blob(SplitMix64& rng, int n) {
    Configuration c{{0, 0}};
    while (static_cast<int>(c.size()) < n) {
        std::vector<Coord> cand;
        std::set<Coord> seen;
        for (Coord t : c.sorted())
            for (Coord e : neighbors4(t))
                if (!c.contains(e) && seen.insert(e).second) cand.push_back(e);
        std::sort(cand.begin(), cand.end());
        c.insert(cand[rng.below(cand.size())]);
    }
    return c;
}

}  // namespace

TEST_CASE("connectivity basics") {
    CHECK(is_connected(Configuration{}));
    CHECK(is_connected(Configuration{{0, 0}}));
    CHECK_FALSE(is_connected(Configuration{{0, 0}, {1, 1}}));
    CHECK(is_connected(Configuration{{0, 0}, {1, 0}, {1, 1}}));
}

TEST_CASE("removable tiles on small shapes") {
    Configuration bar{{0, 0}, {1, 0}, {2, 0}};
    CHECK(removable_tiles(bar, {1, 0}) == std::vector<Coord>{{0, 0}, {2, 0}});

    Configuration square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    CHECK(removable_tiles(square, {0, 0}) == std::vector<Coord>{{0, 1}, {1, 0}, {1, 1}});

    Configuration one{{0, 0}};
    CHECK(removable_tiles(one, {0, 0}).empty());

    CHECK_THROWS_AS(removable_tiles(bar, {5, 5}), std::invalid_argument);
}

TEST_CASE("removable tiles agree with brute force on all small windows") {
    // Every connected configuration with up to 6 tiles inside a 4x4 window.
    std::vector<Coord> cells;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) cells.push_back({x, y});
    int checked = 0;
    for (unsigned mask = 1; mask < (1u << 16); ++mask) {
        if (__builtin_popcount(mask) > 6) continue;
        Configuration c;
        for (int i = 0; i < 16; ++i)
            if (mask & (1u << i)) c.insert(cells[i]);
        if (!is_connected(c)) continue;
        for (Coord robot : c.sorted()) {
            CHECK(removable_tiles(c, robot) == removable_brute(c, robot));
        }
        ++checked;
    }
    CHECK(checked == 945);  // connected subsets of a 4x4 window with <= 6 cells
}

TEST_CASE("every configuration with two or more tiles has a removable tile") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Configuration c = random_blob(rng, 2 + int(rng.below(14)));
        for (Coord robot : c.sorted()) CHECK_FALSE(removable_tiles(c, robot).empty());
    }
}

TEST_CASE("separation classification") {
    CHECK(classify_separation({0, 3, 0, 2}, {1, 4, 4, 6}) == SeparationCase::HorizontalBisector);
    CHECK(classify_separation({0, 2, 0, 2}, {5, 7, 5, 7}) == SeparationCase::TwoBisectors);
    CHECK(classify_separation({0, 3, 0, 3}, {2, 5, 2, 5}) == SeparationCase::Intersecting);
    // Touching ranges count as disjoint: a bisector line fits between them.
    CHECK(classify_separation({0, 2, 0, 2}, {0, 2, 3, 5}) == SeparationCase::HorizontalBisector);
}

TEST_CASE("separation classification is symmetric") {
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        BoundingBox a, b;
        a.xmin = rng.range(-8, 8);
        a.xmax = a.xmin + rng.range(0, 6);
        a.ymin = rng.range(-8, 8);
        a.ymax = a.ymin + rng.range(0, 6);
        b.xmin = rng.range(-8, 8);
        b.xmax = b.xmin + rng.range(0, 6);
        b.ymin = rng.range(-8, 8);
        b.ymax = b.ymin + rng.range(0, 6);
        CHECK(classify_separation(a, b) == classify_separation(b, a));
    }
}

TEST_CASE("histogram recognition") {
    Configuration bare{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK(is_histogram(bare, Facing::North));

    Configuration column{{0, 0}, {1, 0}, {2, 0}, {1, 1}, {1, 2}};
    CHECK(is_histogram(column, Facing::North));

    Configuration plus{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
    CHECK_FALSE(is_histogram(plus, Facing::North));

    // Column hanging the wrong way.
    CHECK_FALSE(is_histogram(column, Facing::South));
    // Facing east: base is a column, rows extend right.
    Configuration east{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 1}};
    CHECK(is_histogram(east, Facing::East));
    CHECK_FALSE(is_histogram(east, Facing::West));
}

TEST_CASE("histogram recognition is translation invariant") {
    SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        Configuration c = random_blob(rng, 3 + int(rng.below(10)));
        int dx = rng.range(-20, 20), dy = rng.range(-20, 20);
        CHECK(is_histogram(c, Facing::North) == is_histogram(translate(c, dx, dy), Facing::North));
    }
}

TEST_CASE("robot path on small shapes") {
    Configuration bar{{0, 0}, {1, 0}, {2, 0}};
    auto p = robot_path(bar, {0, 0}, {2, 0});
    REQUIRE(p);
    CHECK(*p == std::vector<Coord>{{0, 0}, {1, 0}, {2, 0}});

    CHECK_FALSE(robot_path(bar, {0, 0}, {5, 5}));

    Configuration ring;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (!(x == 1 && y == 1)) ring.insert({x, y});
    auto rp = robot_path(ring, {0, 0}, {2, 2});
    REQUIRE(rp);
    CHECK(rp->size() == 5);  // length 4
}

TEST_CASE("robot path length matches the BFS oracle on random blobs") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        Configuration c = random_blob(rng, 2 + int(rng.below(24)));
        auto tiles = c.sorted();
        Coord from = tiles[rng.below(tiles.size())];
        Coord to = tiles[rng.below(tiles.size())];
        auto p = robot_path(c, from, to);
        REQUIRE(p);
        CHECK(static_cast<int>(p->size()) - 1 == bfs_oracle(c, from, to));
        // path cells are occupied and pairwise adjacent
        for (std::size_t i = 0; i < p->size(); ++i) {
            CHECK(c.contains((*p)[i]));
            if (i) CHECK(adjacent((*p)[i - 1], (*p)[i]));
        }
    }
}

TEST_CASE("grid distance is Manhattan") {
    CHECK(bfs_grid_distance({0, 0}, {0, 0}) == 0);
    CHECK(bfs_grid_distance({0, 0}, {3, 4}) == 7);
    CHECK(bfs_grid_distance({-2, 1}, {1, -1}) == 5);
}

TEST_CASE("configuration json round trip") {
    Configuration c{{0, 0}, {1, 0}, {-3, 7}};
    CHECK(configuration_from_json_array(to_json_array(c)) == c);
    CHECK(to_json_array(Configuration{{0, 0}, {1, 0}}) == "[[0,0],[1,0]]");
    CHECK_THROWS_AS(configuration_from_json_array("[[0]]"), std::invalid_argument);
    CHECK_THROWS_AS(configuration_from_json_array("{}"), std::invalid_argument);
}

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace tilerecon {

// A cell of the infinite integer grid. Two cells are adjacent iff their
// Manhattan distance is exactly 1.
struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline int manhattan(Coord a, Coord b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline bool adjacent(Coord a, Coord b) { return manhattan(a, b) == 1; }

// Neighbor order is fixed: north, west, east, south. Deterministic iteration
// everywhere depends on it.
inline std::array<Coord, 4> neighbors4(Coord c) {
    return {Coord{c.x, c.y + 1}, Coord{c.x - 1, c.y}, Coord{c.x + 1, c.y},
            Coord{c.x, c.y - 1}};
}

// Shortest-path distance on the obstacle-free grid.
inline int bfs_grid_distance(Coord a, Coord b) { return manhattan(a, b); }

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
                          static_cast<std::uint32_t>(c.y);
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        v *= 0xc4ceb9fe1a85ec53ULL;
        v ^= v >> 33;
        return static_cast<std::size_t>(v);
    }
};

inline std::ostream& operator<<(std::ostream& os, const Coord& c) {
    return os << '(' << c.x << ',' << c.y << ')';
}

// Direction in which histogram columns extend away from the base strip.
enum class Facing { North, South, East, West };

inline const char* to_string(Facing f) {
    switch (f) {
        case Facing::North: return "north";
        case Facing::South: return "south";
        case Facing::East: return "east";
        case Facing::West: return "west";
    }
    return "?";
}

struct BoundingBox {
    int xmin = 0;
    int xmax = 0;
    int ymin = 0;
    int ymax = 0;

    int width() const { return xmax - xmin + 1; }
    int height() const { return ymax - ymin + 1; }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

enum class SeparationCase {
    HorizontalBisector,  // only y-ranges disjoint
    VerticalBisector,    // only x-ranges disjoint
    TwoBisectors,        // both ranges disjoint
    Intersecting,        // neither disjoint
};

inline const char* to_string(SeparationCase s) {
    switch (s) {
        case SeparationCase::HorizontalBisector: return "horizontal-bisector";
        case SeparationCase::VerticalBisector: return "vertical-bisector";
        case SeparationCase::TwoBisectors: return "two-bisectors";
        case SeparationCase::Intersecting: return "intersecting";
    }
    return "?";
}

// Integer ranges that merely touch (amax + 1 == bmin) count as disjoint: a
// bisector line fits between them.
inline SeparationCase classify_separation(const BoundingBox& a, const BoundingBox& b) {
    const bool x_disjoint = a.xmax < b.xmin || b.xmax < a.xmin;
    const bool y_disjoint = a.ymax < b.ymin || b.ymax < a.ymin;
    if (x_disjoint && y_disjoint) return SeparationCase::TwoBisectors;
    if (y_disjoint) return SeparationCase::HorizontalBisector;
    if (x_disjoint) return SeparationCase::VerticalBisector;
    return SeparationCase::Intersecting;
}

// Gap between two integer ranges, in cells; 0 when they touch, negative when
// they overlap.
inline int range_gap(int amin, int amax, int bmin, int bmax) {
    if (amax < bmin) return bmin - amax - 1;
    if (bmax < amin) return amin - bmax - 1;
    return -1;
}

}  // namespace tilerecon

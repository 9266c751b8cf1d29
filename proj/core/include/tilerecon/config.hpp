#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "tilerecon/coord.hpp"

namespace tilerecon {

// A sparse set of occupied grid cells. Start and target polyominoes must be
// connected under 4-adjacency; intermediate values handled here may be any
// finite cell set.
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(std::vector<Coord> tiles);
    Configuration(std::initializer_list<Coord> tiles);

    bool contains(Coord c) const { return cells_.count(c) != 0; }
    void insert(Coord c) { cells_.insert(c); }
    void erase(Coord c) { cells_.erase(c); }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    const std::unordered_set<Coord, CoordHash>& cells() const { return cells_; }

    // Tiles in (x, y) lexicographic order; the canonical form used for
    // serialization, hashing and equality.
    std::vector<Coord> sorted() const;

    bool operator==(const Configuration& other) const;

    friend Configuration set_difference(const Configuration& a, const Configuration& b);
    friend Configuration set_intersection(const Configuration& a, const Configuration& b);

  private:
    std::unordered_set<Coord, CoordHash> cells_;
};

bool is_connected(const Configuration& c);

BoundingBox bounding_box(const Configuration& c);  // throws on empty input

// Tiles whose removal keeps the configuration connected (non-articulation
// cells of the adjacency graph).
std::vector<Coord> non_articulation_tiles(const Configuration& c);

// Every tile t != robot such that c minus t stays connected. The robot must
// stand on a tile of c.
std::vector<Coord> removable_tiles(const Configuration& c, Coord robot);

// True iff c is a histogram facing f: one contiguous unit-height base strip
// with every remaining tile part of a straight contiguous column extending
// from the base in direction f only.
bool is_histogram(const Configuration& c, Facing f);

Configuration translate(const Configuration& c, int dx, int dy);

std::string to_json_array(const Configuration& c);                 // [[x,y],...]
Configuration configuration_from_json_array(const std::string&);   // throws std::invalid_argument

}  // namespace tilerecon

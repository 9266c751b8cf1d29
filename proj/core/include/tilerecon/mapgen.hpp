#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilerecon/config.hpp"
#include "tilerecon/rng.hpp"

namespace tilerecon {

enum class MapFamily { Boxy, Snakey, Overlapping, TwoBisector };

const char* to_string(MapFamily f);
std::optional<MapFamily> map_family_from_string(const std::string& s);

struct MapInstance {
    std::string name;
    std::string family;
    std::uint64_t seed = 0;
    Configuration start;
    Configuration target;
    Coord robot0;
    std::size_t n() const { return start.size(); }
};

struct GenParams {
    MapFamily family = MapFamily::Boxy;
    std::uint64_t seed = 0;
    // Tile count; drawn uniformly from [n_min, n_max] when n is unset.
    std::optional<int> n;
    int n_min = 10;
    int n_max = 60;
    // Gap between bounding boxes along separated axes, drawn from [1, gap_max].
    int gap_max = 10;
};

// Deterministic for fixed params: the same seed yields the same map.
MapInstance generate(const GenParams& p);

// Growth primitives, exposed so structural generator properties can be
// checked against the insertion order.
Configuration grow_boxy(int n, SplitMix64& rng, std::vector<Coord>* order = nullptr);
Configuration grow_snakey(int n, SplitMix64& rng, std::vector<Coord>* order = nullptr);

// Map file IO. Format:
// {"name":str,"family":str,"seed":uint64,"robot":[x,y],"start":[[x,y],...],"target":[[x,y],...]}
std::string map_to_json(const MapInstance& m);
MapInstance map_from_json(const std::string& text);  // throws MapFormatError
void write_map(const MapInstance& m, const std::string& path);
MapInstance read_map(const std::string& path);

struct MapFormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace tilerecon

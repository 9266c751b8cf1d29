#include "tilerecon/mapgen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tilerecon {

const char* to_string(MapFamily f) {
    switch (f) {
        case MapFamily::Boxy: return "boxy";
        case MapFamily::Snakey: return "snakey";
        case MapFamily::Overlapping: return "overlapping";
        case MapFamily::TwoBisector: return "twobisector";
    }
    return "?";
}

std::optional<MapFamily> map_family_from_string(const std::string& s) {
    if (s == "boxy") return MapFamily::Boxy;
    if (s == "snakey") return MapFamily::Snakey;
    if (s == "overlapping") return MapFamily::Overlapping;
    if (s == "twobisector") return MapFamily::TwoBisector;
    return std::nullopt;
}

Configuration grow_boxy(int n, SplitMix64& rng, std::vector<Coord>* order) {
    Configuration c;
    Coord cur{0, 0};
    c.insert(cur);
    if (order) order->push_back(cur);
    for (int i = 1; i < n; ++i) {
        // Candidates: empty cells east or north of an existing tile.
        std::vector<Coord> cand;
        std::unordered_set<Coord, CoordHash> seen;
        for (Coord t : c.sorted()) {
            for (Coord e : {Coord{t.x + 1, t.y}, Coord{t.x, t.y + 1}}) {
                if (!c.contains(e) && seen.insert(e).second) cand.push_back(e);
            }
        }
        std::sort(cand.begin(), cand.end());
        Coord pick = cand[rng.below(cand.size())];
        c.insert(pick);
        if (order) order->push_back(pick);
    }
    return c;
}

Configuration grow_snakey(int n, SplitMix64& rng, std::vector<Coord>* order) {
    Configuration c;
    std::vector<Coord> placed{{0, 0}};
    c.insert(placed.front());
    if (order) order->push_back(placed.front());
    for (int i = 1; i < n; ++i) {
        // Parent choice prefers recent tiles: geometric with ratio 1/2 over
        // the placement history, newest first.
        Coord pick{};
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            std::size_t k = 0;
            while (k + 1 < placed.size() && (rng.next() & 1)) ++k;
            Coord parent = placed[placed.size() - 1 - k];
            std::vector<Coord> open;
            for (Coord e : neighbors4(parent))
                if (!c.contains(e)) open.push_back(e);
            if (open.empty()) continue;
            std::sort(open.begin(), open.end());
            pick = open[rng.below(open.size())];
            found = true;
        }
        if (!found) {
            // Dense cluster: fall back to any free neighbor of the structure.
            std::vector<Coord> cand;
            std::unordered_set<Coord, CoordHash> seen;
            for (Coord t : c.sorted())
                for (Coord e : neighbors4(t))
                    if (!c.contains(e) && seen.insert(e).second) cand.push_back(e);
            std::sort(cand.begin(), cand.end());
            pick = cand[rng.below(cand.size())];
        }
        c.insert(pick);
        placed.push_back(pick);
        if (order) order->push_back(pick);
    }
    return c;
}

namespace {

Configuration grow_family(MapFamily f, int n, SplitMix64& rng) {
    switch (f) {
        case MapFamily::Boxy:
        case MapFamily::Overlapping:
        case MapFamily::TwoBisector:
            return grow_boxy(n, rng, nullptr);
        case MapFamily::Snakey:
            return grow_snakey(n, rng, nullptr);
    }
    return {};
}

}  // namespace

MapInstance generate(const GenParams& p) {
    SplitMix64 rng(p.seed);
    int n = p.n ? *p.n : rng.range(p.n_min, p.n_max);
    if (n < 2) throw std::invalid_argument("generate: need at least 2 tiles");

    // Snakey shapes are used for both sides of a Snakey map; the other
    // families pair two boxy-grown polyominoes.
    MapFamily shape = p.family == MapFamily::Snakey ? MapFamily::Snakey : MapFamily::Boxy;
    Configuration start = grow_family(shape, n, rng);
    Configuration target = grow_family(shape, n, rng);

    BoundingBox sb = bounding_box(start);
    BoundingBox tb = bounding_box(target);

    int dx = 0, dy = 0;
    switch (p.family) {
        case MapFamily::Boxy:
        case MapFamily::Snakey: {
            // Target below the start with a vertical gap; horizontal offset
            // free, so maps land in the one- or two-bisector cases.
            int gap = rng.range(1, p.gap_max);
            dy = sb.ymin - gap - tb.ymax;
            int span = std::max(sb.width(), tb.width());
            dx = rng.range(-span, span) + sb.xmin - tb.xmin;
            break;
        }
        case MapFamily::TwoBisector: {
            int gap_y = rng.range(1, p.gap_max);
            int gap_x = rng.range(1, p.gap_max);
            dy = sb.ymin - gap_y - tb.ymax;
            dx = rng.next() & 1 ? sb.xmax + gap_x + 1 - tb.xmin
                                : sb.xmin - gap_x - 1 - tb.xmax;
            break;
        }
        case MapFamily::Overlapping: {
            // Offsets bounded so both ranges always intersect.
            dx = rng.range(-(tb.width() - 1), sb.width() - 1) + sb.xmin - tb.xmin;
            dy = rng.range(-(tb.height() - 1), sb.height() - 1) + sb.ymin - tb.ymin;
            break;
        }
    }
    target = translate(target, dx, dy);

    MapInstance m;
    m.family = to_string(p.family);
    m.seed = p.seed;
    m.start = std::move(start);
    m.target = std::move(target);
    m.robot0 = m.start.sorted().front();
    std::ostringstream name;
    name << m.family << "-" << std::hex << p.seed;
    m.name = name.str();
    return m;
}

std::string map_to_json(const MapInstance& m) {
    nlohmann::ordered_json j;
    j["name"] = m.name;
    j["family"] = m.family;
    j["seed"] = m.seed;
    j["robot"] = {m.robot0.x, m.robot0.y};
    auto tiles = [](const Configuration& c) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Coord& t : c.sorted()) arr.push_back({t.x, t.y});
        return arr;
    };
    j["start"] = tiles(m.start);
    j["target"] = tiles(m.target);
    return j.dump();
}

MapInstance map_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MapFormatError(std::string("map: bad JSON: ") + e.what());
    }
    MapInstance m;
    try {
        m.name = j.value("name", "");
        m.family = j.value("family", "");
        m.seed = j.value("seed", std::uint64_t{0});
        auto parse_tiles = [](const nlohmann::json& arr) {
            Configuration c;
            for (const auto& item : arr) c.insert({item.at(0).get<int>(), item.at(1).get<int>()});
            return c;
        };
        m.start = parse_tiles(j.at("start"));
        m.target = parse_tiles(j.at("target"));
        m.robot0 = {j.at("robot").at(0).get<int>(), j.at("robot").at(1).get<int>()};
    } catch (const nlohmann::json::exception& e) {
        throw MapFormatError(std::string("map: missing or malformed field: ") + e.what());
    }
    if (m.start.size() != m.target.size())
        throw MapFormatError("SizeMismatch: start and target tile counts differ");
    if (!is_connected(m.start))
        throw MapFormatError("DisconnectedConfiguration: start is not connected");
    if (!is_connected(m.target))
        throw MapFormatError("DisconnectedConfiguration: target is not connected");
    if (!m.start.contains(m.robot0))
        throw MapFormatError("RobotOffStructure: robot start cell is not a start tile");
    return m;
}

void write_map(const MapInstance& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_map: cannot open " + path);
    out << map_to_json(m) << "\n";
}

MapInstance read_map(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_map: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return map_from_json(ss.str());
}

}  // namespace tilerecon

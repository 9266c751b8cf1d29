#include "tilerecon/schedule.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tilerecon {

double schedule_cost(const CostBreakdown& counts, const CostWeights& w) {
    return w.move_unloaded * static_cast<double>(counts.moves_unloaded) +
           w.move_loaded * static_cast<double>(counts.moves_loaded) +
           w.pickup * static_cast<double>(counts.pickups) +
           w.dropoff * static_cast<double>(counts.dropoffs);
}

const char* to_string(OpError e) {
    switch (e) {
        case OpError::NotAdjacent: return "NotAdjacent";
        case OpError::TargetOccupied: return "TargetOccupied";
        case OpError::TargetUnoccupied: return "TargetUnoccupied";
        case OpError::DisconnectsStructure: return "DisconnectsStructure";
        case OpError::NotCarrying: return "NotCarrying";
        case OpError::AlreadyCarrying: return "AlreadyCarrying";
        case OpError::RobotTile: return "RobotTile";
    }
    return "?";
}

std::optional<OpError> try_apply(WorldState& s, const Operation& op) {
    switch (op.kind) {
        case OpKind::Move: {
            if (!adjacent(s.robot, op.at)) return OpError::NotAdjacent;
            if (!s.config.contains(op.at)) return OpError::TargetUnoccupied;
            s.robot = op.at;
            return std::nullopt;
        }
        case OpKind::Pickup: {
            if (s.carrying) return OpError::AlreadyCarrying;
            if (op.at == s.robot) return OpError::RobotTile;
            if (!adjacent(s.robot, op.at)) return OpError::NotAdjacent;
            if (!s.config.contains(op.at)) return OpError::TargetUnoccupied;
            s.config.erase(op.at);
            if (!is_connected(s.config)) {
                s.config.insert(op.at);
                return OpError::DisconnectsStructure;
            }
            s.carrying = true;
            return std::nullopt;
        }
        case OpKind::Dropoff: {
            if (!s.carrying) return OpError::NotCarrying;
            if (!adjacent(s.robot, op.at)) return OpError::NotAdjacent;
            if (s.config.contains(op.at)) return OpError::TargetOccupied;
            s.config.insert(op.at);
            if (!is_connected(s.config)) {  // cannot happen next to the robot's tile
                s.config.erase(op.at);
                return OpError::DisconnectsStructure;
            }
            s.carrying = false;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

WorldState apply_op(const WorldState& s, const Operation& op) {
    WorldState next = s;
    if (auto err = try_apply(next, op))
        throw std::invalid_argument(std::string("apply_op: ") + to_string(*err));
    return next;
}

ValidationReport validate_schedule(const Configuration& c_s, Coord robot0,
                                   const Schedule& sched, const Configuration& c_t,
                                   const CostWeights& w) {
    ValidationReport rep;
    if (!c_s.contains(robot0)) {
        rep.error_index = 0;
        rep.message = "robot start position is not on the start configuration";
        return rep;
    }
    WorldState st{c_s, robot0, false};
    for (std::size_t i = 0; i < sched.size(); ++i) {
        const Operation& op = sched[i];
        const bool loaded = st.carrying;
        if (auto err = try_apply(st, op)) {
            rep.error_index = i;
            std::ostringstream msg;
            msg << "op " << i << ": " << to_string(*err);
            rep.message = msg.str();
            return rep;
        }
        switch (op.kind) {
            case OpKind::Move: (loaded ? rep.breakdown.moves_loaded : rep.breakdown.moves_unloaded)++; break;
            case OpKind::Pickup: rep.breakdown.pickups++; break;
            case OpKind::Dropoff: rep.breakdown.dropoffs++; break;
        }
    }
    if (st.carrying) {
        rep.error_index = sched.size();
        rep.message = "schedule ends while carrying a tile";
        return rep;
    }
    if (!(st.config == c_t)) {
        rep.error_index = sched.size();
        rep.message = "FinalMismatch: end configuration differs from the target";
        return rep;
    }
    rep.ok = true;
    rep.breakdown.total = schedule_cost(rep.breakdown, w);
    return rep;
}

std::int64_t count_pairs(const Schedule& sched) {
    bool carrying = false;
    std::int64_t pairs = 0;
    for (const Operation& op : sched) {
        if (op.kind == OpKind::Pickup) {
            if (carrying) throw std::invalid_argument("count_pairs: pickup while carrying");
            carrying = true;
        } else if (op.kind == OpKind::Dropoff) {
            if (!carrying) throw std::invalid_argument("count_pairs: dropoff while not carrying");
            carrying = false;
            ++pairs;
        }
    }
    if (carrying) throw std::invalid_argument("count_pairs: schedule ends while carrying");
    return pairs;
}

Schedule reverse_schedule(const Schedule& sched, Coord robot0) {
    // Robot position before each op; only moves change it.
    std::vector<Coord> before(sched.size());
    Coord pos = robot0;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        before[i] = pos;
        if (sched[i].kind == OpKind::Move) pos = sched[i].at;
    }
    Schedule out;
    out.reserve(sched.size());
    for (std::size_t i = sched.size(); i-- > 0;) {
        const Operation& op = sched[i];
        switch (op.kind) {
            case OpKind::Move: out.push_back(Operation::move(before[i])); break;
            case OpKind::Pickup: out.push_back(Operation::dropoff(op.at)); break;
            case OpKind::Dropoff: out.push_back(Operation::pickup(op.at)); break;
        }
    }
    return out;
}

std::string schedule_to_jsonl(const Schedule& sched) {
    std::ostringstream os;
    for (const Operation& op : sched) {
        const char* kind = op.kind == OpKind::Move ? "move"
                           : op.kind == OpKind::Pickup ? "pickup"
                                                       : "dropoff";
        os << "{\"op\":\"" << kind << "\",\"x\":" << op.at.x << ",\"y\":" << op.at.y << "}\n";
    }
    return os.str();
}

Schedule schedule_from_jsonl(const std::string& text) {
    Schedule out;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("schedule line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.contains("op") || !j.contains("x") || !j.contains("y"))
            throw std::invalid_argument("schedule line " + std::to_string(lineno) +
                                        ": expected op/x/y");
        std::string op = j["op"].get<std::string>();
        Coord at{j["x"].get<int>(), j["y"].get<int>()};
        if (op == "move")
            out.push_back(Operation::move(at));
        else if (op == "pickup")
            out.push_back(Operation::pickup(at));
        else if (op == "dropoff")
            out.push_back(Operation::dropoff(at));
        else
            throw std::invalid_argument("schedule line " + std::to_string(lineno) +
                                        ": unknown op '" + op + "'");
    }
    return out;
}

std::string breakdown_to_json(const CostBreakdown& b) {
    nlohmann::ordered_json j;
    j["moves_unloaded"] = b.moves_unloaded;
    j["moves_loaded"] = b.moves_loaded;
    j["pickups"] = b.pickups;
    j["dropoffs"] = b.dropoffs;
    j["total"] = b.total;
    return j.dump();
}

}  // namespace tilerecon

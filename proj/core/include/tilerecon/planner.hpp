#pragma once

#include <string>

#include "tilerecon/schedule.hpp"

namespace tilerecon {

enum class PlanStatus { Ok, Incomplete, Infeasible };

inline const char* to_string(PlanStatus s) {
    switch (s) {
        case PlanStatus::Ok: return "ok";
        case PlanStatus::Incomplete: return "incomplete";
        case PlanStatus::Infeasible: return "infeasible";
    }
    return "?";
}

struct PlanResult {
    PlanStatus status = PlanStatus::Ok;
    Schedule schedule;
    std::string note;  // reason for incomplete/infeasible outcomes
};

}  // namespace tilerecon

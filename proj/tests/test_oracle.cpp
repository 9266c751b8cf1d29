#include "doctest.h"
#include "tilerecon/oracle.hpp"
#include "tilerecon/rng.hpp"

using namespace tilerecon;

TEST_CASE("oracle trivial cases") {
    Configuration c{{0, 0}, {1, 0}};
    OracleResult same = optimal_schedule_oracle(c, {0, 0}, c);
    CHECK(same.status == OracleStatus::Optimal);
    CHECK(same.cost == 0.0);
    CHECK(same.schedule.empty());

    OracleResult shift =
        optimal_schedule_oracle(c, {0, 0}, Configuration{{0, 0}, {0, 1}});
    CHECK(shift.status == OracleStatus::Optimal);
    CHECK(shift.cost == 2.0);
    ValidationReport rep =
        validate_schedule(c, {0, 0}, shift.schedule, Configuration{{0, 0}, {0, 1}});
    CHECK(rep.ok);
}

TEST_CASE("oracle regression: domino shifted three cells right") {
    // Frozen from the oracle's own uniform-cost search.
    Configuration s{{0, 0}, {1, 0}};
    Configuration t{{3, 0}, {4, 0}};
    OracleResult r = optimal_schedule_oracle(s, {0, 0}, t);
    REQUIRE(r.status == OracleStatus::Optimal);
    CHECK(validate_schedule(s, {0, 0}, r.schedule, t).ok);
    CHECK(r.cost == 9.0);
}

TEST_CASE("oracle detects infeasible single-tile instances") {
    OracleResult r =
        optimal_schedule_oracle(Configuration{{0, 0}}, {0, 0}, Configuration{{3, 3}});
    CHECK(r.status == OracleStatus::Infeasible);
}

TEST_CASE("oracle respects the state budget") {
    Configuration s{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    Configuration t{{0, 5}, {1, 5}, {2, 5}, {3, 5}};
    OracleLimits lim;
    lim.max_expanded = 10;
    OracleResult r = optimal_schedule_oracle(s, {0, 0}, t, CostWeights::unit(), lim);
    CHECK(r.status == OracleStatus::LimitExceeded);
}

TEST_CASE("oracle beats or matches randomized valid schedules") {
    // Random search never finds a cheaper valid schedule than the oracle.
    SplitMix64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        // two random connected triominoes in a 5x5 window
        auto rand_tri = [&](int ox) {
            Configuration c;
            Coord cur{ox + int(rng.below(3)), int(rng.below(3))};
            c.insert(cur);
            while (c.size() < 3) {
                auto nb = neighbors4(cur);
                Coord nxt = nb[rng.below(4)];
                if (nxt.x < ox || nxt.x > ox + 4 || nxt.y < 0 || nxt.y > 4) continue;
                c.insert(nxt);
                cur = nxt;
            }
            return c;
        };
        Configuration s = rand_tri(0);
        Configuration t = rand_tri(0);
        if (s.size() != t.size()) continue;
        Coord robot = s.sorted().front();
        OracleResult best = optimal_schedule_oracle(s, robot, t);
        REQUIRE(best.status == OracleStatus::Optimal);
        REQUIRE(validate_schedule(s, robot, best.schedule, t).ok);

        // random walks that happen to reach the target
        for (int attempt = 0; attempt < 30; ++attempt) {
            WorldState st{s, robot, false};
            Schedule sched;
            double cost = 0;
            for (int step = 0; step < 60; ++step) {
                std::vector<Operation> legal;
                for (Coord nb : neighbors4(st.robot)) {
                    for (auto kind : {OpKind::Move, OpKind::Pickup, OpKind::Dropoff}) {
                        WorldState probe = st;
                        if (!try_apply(probe, {kind, nb})) legal.push_back({kind, nb});
                    }
                }
                if (legal.empty()) break;
                Operation op = legal[rng.below(legal.size())];
                try_apply(st, op);
                sched.push_back(op);
                cost += 1.0;
                if (!st.carrying && st.config == t) {
                    CHECK(cost >= best.cost);
                    break;
                }
            }
        }
    }
}

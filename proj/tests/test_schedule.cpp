#include <algorithm>

#include "doctest.h"
#include "tilerecon/rng.hpp"
#include "tilerecon/schedule.hpp"

using namespace tilerecon;

namespace {

// Random legal-op walk used as a schedule generator for round-trip and
// conservation properties. Always ends not carrying.
struct RandomRun {
    Configuration start;
    Coord robot0;
    Schedule sched;
    WorldState end;
};

RandomRun random_run(SplitMix64& rng, int tiles, int steps) {
    Configuration c{{0, 0}};
    while (static_cast<int>(c.size()) < tiles) {
        std::vector<Coord> cand;
        for (Coord t : c.sorted())
            for (Coord e : neighbors4(t))
                if (!c.contains(e)) cand.push_back(e);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        c.insert(cand[rng.below(cand.size())]);
    }
    RandomRun run;
    run.start = c;
    run.robot0 = c.sorted()[rng.below(c.size())];
    WorldState st{c, run.robot0, false};
    for (int i = 0; i < steps; ++i) {
        std::vector<Operation> legal;
        for (Coord nb : neighbors4(st.robot)) {
            for (auto kind : {OpKind::Move, OpKind::Pickup, OpKind::Dropoff}) {
                Operation op{kind, nb};
                WorldState probe = st;
                if (!try_apply(probe, op)) legal.push_back(op);
            }
        }
        if (legal.empty()) break;
        Operation op = legal[rng.below(legal.size())];
        REQUIRE_FALSE(try_apply(st, op));
        run.sched.push_back(op);
    }
    // Resolve a trailing pickup; the robot may need to step out of a pocket.
    for (int guard = 0; st.carrying && guard < 200; ++guard) {
        bool dropped = false;
        for (Coord nb : neighbors4(st.robot)) {
            Operation op = Operation::dropoff(nb);
            WorldState probe = st;
            if (!try_apply(probe, op)) {
                try_apply(st, op);
                run.sched.push_back(op);
                dropped = true;
                break;
            }
        }
        if (dropped) break;
        std::vector<Operation> moves;
        for (Coord nb : neighbors4(st.robot)) {
            WorldState probe = st;
            if (!try_apply(probe, Operation::move(nb))) moves.push_back(Operation::move(nb));
        }
        REQUIRE_FALSE(moves.empty());
        Operation op = moves[rng.below(moves.size())];
        try_apply(st, op);
        run.sched.push_back(op);
    }
    REQUIRE_FALSE(st.carrying);
    run.end = st;
    return run;
}

}  // namespace

TEST_CASE("apply_op basics") {
    WorldState s{Configuration{{0, 0}, {1, 0}}, {0, 0}, false};
    WorldState after = apply_op(s, Operation::pickup({1, 0}));
    CHECK(after.config == Configuration{{0, 0}});
    CHECK(after.carrying);
    CHECK(after.robot == Coord{0, 0});

    WorldState carrying{Configuration{{0, 0}}, {0, 0}, true};
    WorldState dropped = apply_op(carrying, Operation::dropoff({0, 1}));
    CHECK(dropped.config == Configuration{{0, 0}, {0, 1}});
    CHECK_FALSE(dropped.carrying);
}

TEST_CASE("apply_op reports each violated precondition") {
    WorldState bar{Configuration{{0, 0}, {1, 0}, {2, 0}}, {0, 0}, false};

    WorldState t = bar;
    CHECK(try_apply(t, Operation::pickup({1, 0})) == OpError::DisconnectsStructure);
    t = bar;
    CHECK(try_apply(t, Operation::pickup({0, 0})) == OpError::RobotTile);
    t = bar;
    CHECK(try_apply(t, Operation::pickup({2, 0})) == OpError::NotAdjacent);
    t = bar;
    CHECK(try_apply(t, Operation::pickup({0, 1})) == OpError::TargetUnoccupied);
    t = bar;
    CHECK(try_apply(t, Operation::dropoff({0, 1})) == OpError::NotCarrying);
    t = bar;
    CHECK(try_apply(t, Operation::move({0, 1})) == OpError::TargetUnoccupied);
    t = bar;
    CHECK(try_apply(t, Operation::move({2, 0})) == OpError::NotAdjacent);

    WorldState c{Configuration{{0, 0}, {1, 0}}, {0, 0}, true};
    t = c;
    CHECK(try_apply(t, Operation::pickup({1, 0})) == OpError::AlreadyCarrying);
    t = c;
    CHECK(try_apply(t, Operation::dropoff({1, 0})) == OpError::TargetOccupied);
}

TEST_CASE("validate_schedule on the domino example") {
    Configuration s{{0, 0}, {1, 0}};
    Configuration t{{0, 0}, {0, 1}};

    SUBCASE("empty schedule on equal configurations") {
        ValidationReport rep = validate_schedule(s, {0, 0}, {}, s);
        CHECK(rep.ok);
        CHECK(rep.breakdown.total == 0.0);
    }
    SUBCASE("two-op reconfiguration") {
        Schedule sched{Operation::pickup({1, 0}), Operation::dropoff({0, 1})};
        ValidationReport rep = validate_schedule(s, {0, 0}, sched, t);
        CHECK(rep.ok);
        CHECK(rep.breakdown.pickups == 1);
        CHECK(rep.breakdown.dropoffs == 1);
        CHECK(rep.breakdown.moves_loaded == 0);
        CHECK(rep.breakdown.moves_unloaded == 0);
        CHECK(rep.breakdown.total == 2.0);
    }
    SUBCASE("picking the robot tile fails at index 0") {
        Schedule sched{Operation::pickup({0, 0})};
        ValidationReport rep = validate_schedule(s, {0, 0}, sched, t);
        CHECK_FALSE(rep.ok);
        CHECK(rep.error_index == 0);
        CHECK(rep.message.find("RobotTile") != std::string::npos);
    }
    SUBCASE("final mismatch is reported") {
        ValidationReport rep = validate_schedule(s, {0, 0}, {}, t);
        CHECK_FALSE(rep.ok);
        CHECK(rep.message.find("FinalMismatch") != std::string::npos);
    }
}

TEST_CASE("schedule cost arithmetic") {
    CHECK(schedule_cost({}, CostWeights::unit()) == 0.0);
    CostBreakdown counts{3, 2, 1, 1, 0.0};
    CHECK(schedule_cost(counts, CostWeights::unit()) == 7.0);
    CHECK(schedule_cost(counts, CostWeights{1, 2, 5, 5}) == 17.0);
}

TEST_CASE("cost is monotone in each weight") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        CostBreakdown counts{static_cast<std::int64_t>(rng.below(50)),
                             static_cast<std::int64_t>(rng.below(50)),
                             static_cast<std::int64_t>(rng.below(50)),
                             static_cast<std::int64_t>(rng.below(50)), 0.0};
        CostWeights w{double(rng.below(5)), double(rng.below(5)), double(rng.below(5)),
                      double(rng.below(5))};
        double base = schedule_cost(counts, w);
        CostWeights b1 = w;
        b1.move_unloaded += 1;
        CostWeights b2 = w;
        b2.move_loaded += 1;
        CostWeights b3 = w;
        b3.pickup += 1;
        CostWeights b4 = w;
        b4.dropoff += 1;
        for (const CostWeights& bumped : {b1, b2, b3, b4})
            CHECK(schedule_cost(counts, bumped) >= base);
    }
}

TEST_CASE("count_pairs") {
    CHECK(count_pairs({}) == 0);
    Schedule s{Operation::pickup({0, 0}), Operation::dropoff({0, 1}), Operation::move({1, 0}),
               Operation::pickup({2, 0}), Operation::dropoff({2, 1})};
    CHECK(count_pairs(s) == 2);
    Schedule bad{Operation::pickup({0, 0}), Operation::pickup({1, 0})};
    CHECK_THROWS_AS(count_pairs(bad), std::invalid_argument);
    Schedule dangling{Operation::pickup({0, 0})};
    CHECK_THROWS_AS(count_pairs(dangling), std::invalid_argument);
}

TEST_CASE("reverse_schedule on the domino example") {
    CHECK(reverse_schedule({}, {0, 0}).empty());
    Schedule sched{Operation::pickup({1, 0}), Operation::dropoff({0, 1})};
    Schedule rev = reverse_schedule(sched, {0, 0});
    CHECK(rev == Schedule{Operation::pickup({0, 1}), Operation::dropoff({1, 0})});
    ValidationReport rep = validate_schedule(Configuration{{0, 0}, {0, 1}}, {0, 0}, rev,
                                             Configuration{{0, 0}, {1, 0}});
    CHECK(rep.ok);
}

TEST_CASE("reverse round trip on random valid schedules") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        RandomRun run = random_run(rng, 3 + int(rng.below(8)), 20 + int(rng.below(40)));
        ValidationReport fwd = validate_schedule(run.start, run.robot0, run.sched, run.end.config);
        REQUIRE(fwd.ok);
        Schedule rev = reverse_schedule(run.sched, run.robot0);
        ValidationReport back = validate_schedule(run.end.config, run.end.robot, rev, run.start);
        REQUIRE(back.ok);
        CHECK(back.breakdown.pickups == fwd.breakdown.pickups);
        CHECK(back.breakdown.moves_loaded == fwd.breakdown.moves_loaded);
        CHECK(back.breakdown.moves_unloaded == fwd.breakdown.moves_unloaded);
    }
}

TEST_CASE("tile conservation and pair lower bound on random runs") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        RandomRun run = random_run(rng, 3 + int(rng.below(6)), 30);
        WorldState st{run.start, run.robot0, false};
        std::size_t n = run.start.size();
        for (const Operation& op : run.sched) {
            REQUIRE_FALSE(try_apply(st, op));
            CHECK(st.config.size() + (st.carrying ? 1 : 0) == n);
            CHECK(is_connected(st.config));
        }
        Configuration only_start = set_difference(run.start, st.config);
        CHECK(count_pairs(run.sched) >= static_cast<std::int64_t>(only_start.size()));
    }
}

TEST_CASE("schedule jsonl round trip") {
    Schedule s{Operation::move({1, 0}), Operation::pickup({2, 0}), Operation::dropoff({2, -1})};
    std::string text = schedule_to_jsonl(s);
    CHECK(text ==
          "{\"op\":\"move\",\"x\":1,\"y\":0}\n{\"op\":\"pickup\",\"x\":2,\"y\":0}\n"
          "{\"op\":\"dropoff\",\"x\":2,\"y\":-1}\n");
    CHECK(schedule_from_jsonl(text) == s);
    CHECK_THROWS_AS(schedule_from_jsonl("{\"op\":\"fly\",\"x\":0,\"y\":0}"), std::invalid_argument);
}

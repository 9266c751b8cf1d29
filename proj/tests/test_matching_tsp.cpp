#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "tilerecon/matching.hpp"
#include "tilerecon/rng.hpp"
#include "tilerecon/tsp.hpp"

using namespace tilerecon;

namespace {

Configuration random_cells(SplitMix64& rng, int n, int span) {
    Configuration c;
    while (static_cast<int>(c.size()) < n)
        c.insert({rng.range(-span, span), rng.range(-span, span)});
    return c;
}

std::int64_t matching_brute(const std::vector<Coord>& src, const std::vector<Coord>& dst) {
    std::vector<int> perm(src.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t best = INT64_MAX;
    do {
        std::int64_t tot = 0;
        for (std::size_t i = 0; i < src.size(); ++i) tot += manhattan(src[i], dst[perm[i]]);
        best = std::min(best, tot);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("matching basics") {
    Configuration s{{0, 0}, {1, 0}};
    Matching id = compute_matching(s, s);
    CHECK(id.total_distance == 0);

    Matching shifted = compute_matching(s, Configuration{{0, 2}, {1, 2}});
    CHECK(shifted.total_distance == 4);
    for (const MatchedPair& p : shifted.pairs) {
        CHECK(p.distance == 2);
        CHECK(p.target == Coord{p.source.x, 2});
    }
    CHECK_THROWS_AS(compute_matching(s, Configuration{{0, 0}}), std::invalid_argument);
}

TEST_CASE("matching is sorted by distance descending") {
    Configuration s{{0, 0}, {5, 0}};
    Configuration t{{0, 1}, {9, 0}};
    Matching m = compute_matching(s, t);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].distance >= m.pairs[1].distance);
}

TEST_CASE("matching equals factorial brute force") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + int(rng.below(6));  // up to 7
        Configuration s = random_cells(rng, n, 6);
        Configuration t = random_cells(rng, n, 6);
        Matching m = compute_matching(s, t);
        CHECK(m.total_distance == matching_brute(s.sorted(), t.sorted()));
    }
}

TEST_CASE("tour instance basics") {
    Configuration s{{0, 0}};
    Configuration t{{0, 5}};
    TourInstance one = build_instance(s, t);
    CHECK(one.n() == 1);
    TourResult r = solve_tour(one);
    CHECK(r.exact);
    CHECK(r.raw_cost == 5);
    CHECK(r.adjusted_cost == 3);  // 5 - 2*1

    // Identical configurations: co-located pickup/dropoff legs cost zero and
    // the raw tour reduces to a shortest open path through the cells (3 on
    // the unit square); the -2n adjustment clamps to zero.
    Configuration same{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    TourResult zero = solve_tour(build_instance(same, same));
    CHECK(zero.raw_cost == 3);
    CHECK(zero.adjusted_cost == 0);  // clamped from 3 - 8
}

TEST_CASE("tour order alternates pickups and dropoffs") {
    SplitMix64 rng(11);
    Configuration s = random_cells(rng, 3, 5);
    Configuration t = random_cells(rng, 3, 5);
    TourInstance inst = build_instance(s, t);
    CHECK(inst.pickups.size() == 3);
    CHECK(inst.dropoffs.size() == 3);
    TourResult r = solve_tour(inst);
    REQUIRE(r.order.size() == 3);
    std::vector<bool> pu(3, false), du(3, false);
    for (const TourLeg& leg : r.order) {
        CHECK_FALSE(pu[leg.pickup_index]);
        CHECK_FALSE(du[leg.dropoff_index]);
        pu[leg.pickup_index] = true;
        du[leg.dropoff_index] = true;
    }
}

TEST_CASE("exact tour cost equals its own leg sum") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + int(rng.below(5));
        TourInstance inst = build_instance(random_cells(rng, n, 7), random_cells(rng, n, 7));
        TourResult r = solve_tour_exact(inst);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < r.order.size(); ++i) {
            total += manhattan(inst.pickups[r.order[i].pickup_index],
                               inst.dropoffs[r.order[i].dropoff_index]);
            if (i + 1 < r.order.size())
                total += manhattan(inst.dropoffs[r.order[i].dropoff_index],
                                   inst.pickups[r.order[i + 1].pickup_index]);
        }
        CHECK(total == r.raw_cost);
    }
}

TEST_CASE("heuristic tour is never below the exact optimum") {
    SplitMix64 rng(1);
    int equal = 0, trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        int n = 2 + int(rng.below(7));  // up to 8
        TourInstance inst = build_instance(random_cells(rng, n, 8), random_cells(rng, n, 8));
        TourResult exact = solve_tour_exact(inst);
        TourResult heur = solve_tour_heuristic(inst);
        CHECK(heur.raw_cost >= exact.raw_cost);
        if (heur.raw_cost == exact.raw_cost) ++equal;
        CHECK(heur.adjusted_cost ==
              std::max<std::int64_t>(0, heur.raw_cost - 2 * static_cast<std::int64_t>(inst.n())));
    }
    // The polishing passes should recover the optimum on most small instances.
    CHECK(equal >= trials * 60 / 100);
    MESSAGE("heuristic matched exact on ", equal, "/", trials);
}

TEST_CASE("heuristic regression: matches exact on the seed-5 instance") {
    SplitMix64 rng(5);
    TourInstance inst = build_instance(random_cells(rng, 6, 8), random_cells(rng, 6, 8));
    TourResult exact = solve_tour_exact(inst);
    TourResult heur = solve_tour_heuristic(inst);
    CHECK(heur.raw_cost == exact.raw_cost);
}

#include "tilerecon/tsp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tilerecon/matching.hpp"

namespace tilerecon {

TourInstance build_instance(const Configuration& c_s, const Configuration& c_t) {
    if (c_s.size() != c_t.size())
        throw std::invalid_argument("build_instance: sizes differ");
    return {c_s.sorted(), c_t.sorted()};
}

namespace {

std::int64_t adjusted(std::int64_t raw, std::size_t n) {
    std::int64_t a = raw - 2 * static_cast<std::int64_t>(n);
    return a < 0 ? 0 : a;
}

std::int64_t tour_cost(const TourInstance& inst, const std::vector<TourLeg>& order) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        total += manhattan(inst.pickups[order[i].pickup_index],
                           inst.dropoffs[order[i].dropoff_index]);
        if (i + 1 < order.size())
            total += manhattan(inst.dropoffs[order[i].dropoff_index],
                               inst.pickups[order[i + 1].pickup_index]);
    }
    return total;  // aux edges cost zero
}

}  // namespace

TourResult solve_tour_exact(const TourInstance& inst) {
    const int n = static_cast<int>(inst.n());
    TourResult res;
    res.exact = true;
    if (n == 0) return res;
    if (n > static_cast<int>(kTspExactLimit))
        throw std::invalid_argument("solve_tour_exact: instance too large");

    const std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
    const int full = (1 << n) - 1;

    auto dpy = [&](int i, int j) { return manhattan(inst.pickups[i], inst.dropoffs[j]); };
    auto dyp = [&](int j, int i) { return manhattan(inst.dropoffs[j], inst.pickups[i]); };

    // dp[maskP][maskQ][j]: min cost standing at dropoff j having used the
    // masked pickups/dropoffs; popcount(maskP) == popcount(maskQ) always.
    const std::size_t planes = static_cast<std::size_t>(full + 1) * (full + 1);
    std::vector<std::int64_t> dp(planes * n, INF);
    std::vector<int> par(planes * n, -1);  // packed (prevMaskP, prevMaskQ, prevJ, i)
    auto idx = [&](int mp, int mq, int j) {
        return (static_cast<std::size_t>(mp) * (full + 1) + mq) * n + j;
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::size_t k = idx(1 << i, 1 << j, j);
            std::int64_t c = dpy(i, j);
            if (c < dp[k]) {
                dp[k] = c;
                par[k] = i;  // first leg: remember the pickup
            }
        }

    for (int mp = 1; mp <= full; ++mp) {
        const int cp = __builtin_popcount(mp);
        for (int mq = 1; mq <= full; ++mq) {
            if (__builtin_popcount(mq) != cp) continue;
            for (int j = 0; j < n; ++j) {
                if (!(mq & (1 << j))) continue;
                std::int64_t cur = dp[idx(mp, mq, j)];
                if (cur >= INF) continue;
                for (int i = 0; i < n; ++i) {
                    if (mp & (1 << i)) continue;
                    for (int k = 0; k < n; ++k) {
                        if (mq & (1 << k)) continue;
                        std::int64_t nc = cur + dyp(j, i) + dpy(i, k);
                        std::size_t ni = idx(mp | (1 << i), mq | (1 << k), k);
                        if (nc < dp[ni]) {
                            dp[ni] = nc;
                            par[ni] = (j << 8) | (i << 4) | 0x1000;  // prev j, pickup i
                        }
                    }
                }
            }
        }
    }

    std::int64_t bestCost = INF;
    int bestJ = -1;
    for (int j = 0; j < n; ++j) {
        std::int64_t c = dp[idx(full, full, j)];
        if (c < bestCost) {
            bestCost = c;
            bestJ = j;
        }
    }

    // Reconstruct legs back to front.
    std::vector<TourLeg> order;
    int mp = full, mq = full, j = bestJ;
    while (true) {
        int code = par[idx(mp, mq, j)];
        if (code & 0x1000) {
            int pj = (code >> 8) & 0xF;
            int i = (code >> 4) & 0xF;
            order.push_back({i, j});
            mp &= ~(1 << i);
            mq &= ~(1 << j);
            j = pj;
        } else {
            order.push_back({code, j});
            break;
        }
    }
    std::reverse(order.begin(), order.end());

    res.raw_cost = bestCost;
    res.adjusted_cost = adjusted(bestCost, inst.n());
    res.order = std::move(order);
    return res;
}

TourResult solve_tour_heuristic(const TourInstance& inst) {
    const int n = static_cast<int>(inst.n());
    TourResult res;
    res.exact = false;
    if (n == 0) return res;

    // Pair pickups with dropoffs by exact assignment on leg lengths, then
    // order the legs nearest-neighbor and polish.
    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = manhattan(inst.pickups[i], inst.dropoffs[j]);
    std::vector<int> mate = solve_assignment(cost);

    std::vector<TourLeg> legs(n);
    for (int i = 0; i < n; ++i) legs[i] = {i, mate[i]};

    auto total = [&](const std::vector<TourLeg>& o) { return tour_cost(inst, o); };

    auto nearest_neighbor = [&](int first) {
        std::vector<char> used(n, false);
        std::vector<TourLeg> order;
        used[first] = true;
        order.push_back(legs[first]);
        int cur = first;
        for (int step = 1; step < n; ++step) {
            int best = -1;
            std::int64_t bestD = std::numeric_limits<std::int64_t>::max();
            for (int i = 0; i < n; ++i) {
                if (used[i]) continue;
                std::int64_t d = manhattan(inst.dropoffs[legs[cur].dropoff_index],
                                           inst.pickups[legs[i].pickup_index]);
                if (d < bestD) {
                    bestD = d;
                    best = i;
                }
            }
            used[best] = true;
            order.push_back(legs[best]);
            cur = best;
        }
        return order;
    };

    // First-improvement local search over leg relocations, leg position
    // swaps, dropoff exchanges and dropoff 3-rotations.
    auto polish = [&](std::vector<TourLeg> order) {
        std::int64_t best = total(order);
        bool improved = true;
        int rounds = 0;
        while (improved && rounds++ < 64) {
            improved = false;
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    auto cand = order;
                    TourLeg moved = cand[i];
                    cand.erase(cand.begin() + i);
                    cand.insert(cand.begin() + j, moved);
                    std::int64_t c = total(cand);
                    if (c < best) {
                        best = c;
                        order = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    auto cand = order;
                    std::swap(cand[i].dropoff_index, cand[j].dropoff_index);
                    std::int64_t c = total(cand);
                    if (c < best) {
                        best = c;
                        order = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    auto cand = order;
                    std::swap(cand[i], cand[j]);
                    std::int64_t c = total(cand);
                    if (c < best) {
                        best = c;
                        order = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    auto cand = order;
                    std::swap(cand[i].pickup_index, cand[j].pickup_index);
                    std::int64_t c = total(cand);
                    if (c < best) {
                        best = c;
                        order = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
            for (int i = 0; i < n && !improved; ++i) {
                for (int j = 0; j < n && !improved; ++j) {
                    if (i == j) continue;
                    for (int k = 0; k < n; ++k) {
                        if (k == i || k == j) continue;
                        auto cand = order;
                        int di = cand[i].dropoff_index;
                        cand[i].dropoff_index = cand[j].dropoff_index;
                        cand[j].dropoff_index = cand[k].dropoff_index;
                        cand[k].dropoff_index = di;
                        std::int64_t c = total(cand);
                        if (c < best) {
                            best = c;
                            order = std::move(cand);
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        return std::pair(best, order);
    };

    std::vector<TourLeg> best_order;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const int starts = std::min(n, 8);
    for (int s = 0; s < starts; ++s) {
        auto [c, order] = polish(nearest_neighbor(s));
        if (c < best) {
            best = c;
            best_order = std::move(order);
        }
    }

    res.raw_cost = best;
    res.adjusted_cost = adjusted(best, inst.n());
    res.order = std::move(best_order);
    return res;
}

TourResult solve_tour(const TourInstance& inst) {
    if (inst.pickups.size() != inst.dropoffs.size())
        throw std::invalid_argument("solve_tour: sizes differ");
    if (inst.n() <= kTspExactLimit) return solve_tour_exact(inst);
    return solve_tour_heuristic(inst);
}

}  // namespace tilerecon

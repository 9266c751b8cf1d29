#include "tilerecon/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tilerecon {

// Hungarian algorithm, potentials formulation (the classic O(n^3) version
// with 1-based dummy row/column).
std::vector<int> solve_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_assignment: matrix is not square");

    const std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(n + 1, INF);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            std::int64_t delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) assignment[p[j] - 1] = j - 1;
    return assignment;
}

Matching compute_matching(const Configuration& c_s, const Configuration& c_t) {
    if (c_s.size() != c_t.size())
        throw std::invalid_argument("compute_matching: sizes differ");
    Matching m;
    if (c_s.empty()) return m;

    std::vector<Coord> src = c_s.sorted();
    std::vector<Coord> dst = c_t.sorted();
    const int n = static_cast<int>(src.size());
    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = bfs_grid_distance(src[i], dst[j]);

    std::vector<int> assign = solve_assignment(cost);
    for (int i = 0; i < n; ++i) {
        int d = static_cast<int>(cost[i][assign[i]]);
        m.pairs.push_back({src[i], dst[assign[i]], d});
        m.total_distance += d;
    }
    std::stable_sort(m.pairs.begin(), m.pairs.end(), [](const MatchedPair& a, const MatchedPair& b) {
        if (a.distance != b.distance) return a.distance > b.distance;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    return m;
}

}  // namespace tilerecon

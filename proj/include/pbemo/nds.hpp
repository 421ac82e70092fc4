#ifndef PBEMO_NDS_HPP
#define PBEMO_NDS_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "pbemo/core.hpp"

namespace pbemo {

/// Fast non-dominated sorting over an arbitrary strict dominance relation.
/// Returns front index per input position (0 = best). If the relation is not
/// a strict partial order and some residual points all dominate each other in
/// a cycle, the remaining points are dumped into one final front so the sort
/// always terminates.
template <typename Dom>
std::vector<std::size_t> nondominated_rank(const std::vector<Vec>& fs, Dom&& dom)
{
    const std::size_t n = fs.size();
    std::vector<std::size_t> rank(n, 0);
    if (n == 0)
        return rank;

    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> dominator_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dom(fs[i], fs[j])) {
                dominated_by[i].push_back(j);
                ++dominator_count[j];
            } else if (dom(fs[j], fs[i])) {
                dominated_by[j].push_back(i);
                ++dominator_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominator_count[i] == 0) {
            rank[i] = 0;
            current.push_back(i);
        }
    }

    std::size_t assigned = current.size();
    std::size_t front = 0;
    while (assigned < n) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated_by[i]) {
                if (--dominator_count[j] == 0) {
                    rank[j] = front + 1;
                    next.push_back(j);
                }
            }
        }
        if (next.empty()) {
            // cycle guard: rank everything that is left
            for (std::size_t i = 0; i < n; ++i) {
                if (dominator_count[i] > 0) {
                    dominator_count[i] = 0;
                    rank[i] = front + 1;
                    next.push_back(i);
                }
            }
        }
        assigned += next.size();
        current = std::move(next);
        ++front;
    }
    return rank;
}

inline std::vector<std::size_t> pareto_rank(const std::vector<Vec>& fs)
{
    return nondominated_rank(fs, [](const Vec& a, const Vec& b) { return dominates(a, b); });
}

/// NSGA-II crowding distance for the members of one front (indices into fs).
/// Returns one value per front member, aligned with `front`.
inline std::vector<double> crowding_distance(const std::vector<Vec>& fs,
                                             const std::vector<std::size_t>& front)
{
    const std::size_t n = front.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cd(n, 0.0);
    if (n <= 2) {
        for (double& v : cd)
            v = inf;
        return cd;
    }
    const std::size_t m = fs[front.front()].size();
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        for (std::size_t i = 0; i < n; ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fs[front[a]][obj] < fs[front[b]][obj];
        });
        const double lo = fs[front[order.front()]][obj];
        const double hi = fs[front[order.back()]][obj];
        cd[order.front()] = inf;
        cd[order.back()] = inf;
        if (hi > lo) {
            for (std::size_t i = 1; i + 1 < n; ++i) {
                cd[order[i]] += (fs[front[order[i + 1]]][obj] - fs[front[order[i - 1]]][obj]) / (hi - lo);
            }
        }
    }
    return cd;
}

} // namespace pbemo

#endif

#ifndef PBEMO_POSTPROCESS_HPP
#define PBEMO_POSTPROCESS_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "pbemo/core.hpp"
#include "pbemo/rng.hpp"

// Subset selection from the external archive: the iterative distance-based
// subset selection (IDSS) baseline and the preference-based postprocessing
// method built on top of it.
//
// Inside IDSS the normalization bounds are computed once from the full input
// set and stay fixed for the whole selection. Re-normalizing per candidate
// subset collapses the measure (any two points distinct in every dimension
// normalize to opposite unit-box corners), which defeats the selection for
// small k.

namespace pbemo {

struct PostprocessParams {
    std::size_t k = 100;
    std::size_t t_max = 10000;
    RoiSpec roi;
};

/// Uniformity level of a set of objective vectors: the minimum pairwise
/// Euclidean distance after min-max normalization over the set itself.
inline double uniformity_objectives(const std::vector<Vec>& fs)
{
    if (fs.size() < 2)
        throw input_error("uniformity: need at least two solutions");
    const std::vector<Vec> u = normalize_set(fs);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const double d = euclid(u[i], u[j]);
            if (d < best)
                best = d;
        }
    }
    return best;
}

inline double uniformity(const std::vector<Solution>& X)
{
    std::vector<Vec> fs;
    fs.reserve(X.size());
    for (const Solution& s : X)
        fs.push_back(s.f);
    return uniformity_objectives(fs);
}

/// Uniformity under externally supplied normalization bounds; the objective
/// IDSS maximizes. Sets with fewer than two members score +infinity.
inline double uniformity_against(const std::vector<Vec>& fs, const Bounds& bounds)
{
    if (fs.size() < 2)
        return std::numeric_limits<double>::infinity();
    std::vector<Vec> u;
    u.reserve(fs.size());
    for (const Vec& f : fs)
        u.push_back(normalize_against(f, bounds));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const double d = euclid(u[i], u[j]);
            if (d < best)
                best = d;
        }
    }
    return best;
}

/// Iterative distance-based subset selection. Starting from a random size-k
/// subset, each of t_max iterations adds one random outsider and removes the
/// member whose removal leaves the most uniform remainder. Removal ties are
/// broken uniformly at random: whenever the surviving closest pair is
/// untouched, every other member ties at the current minimum distance, and
/// the random choice among them is what lets the selection drift across
/// equal-uniformity subsets instead of freezing in the first local optimum.
/// Returns A itself when |A| <= k.
inline std::vector<Solution> idss(const std::vector<Solution>& A, std::size_t k, std::size_t t_max,
                                  Rng& rng)
{
    const std::size_t n = A.size();
    if (n <= k)
        return A;

    std::vector<Vec> fa;
    fa.reserve(n);
    for (const Solution& s : A)
        fa.push_back(s.f);
    const Bounds bounds = bounds_of(fa);
    std::vector<Vec> unit;
    unit.reserve(n);
    for (const Vec& f : fa)
        unit.push_back(normalize_against(f, bounds));

    // partial Fisher-Yates: first k entries form the initial subset
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> sel(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());

    const std::size_t cap = k + 1;
    std::vector<double> dist(cap * cap, 0.0); // distances between current sel slots
    auto pair_dist = [&](std::size_t a, std::size_t b) { return euclid(unit[a], unit[b]); };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = pair_dist(sel[i], sel[j]);
            dist[i * cap + j] = d;
            dist[j * cap + i] = d;
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> score(cap, 0.0);
    std::vector<std::size_t> ties;
    for (std::size_t t = 0; t < t_max; ++t) {
        const std::size_t pool_pos = rng.below(pool.size());
        sel.push_back(pool[pool_pos]);
        const std::size_t K = sel.size(); // == k + 1
        for (std::size_t i = 0; i + 1 < K; ++i) {
            const double d = pair_dist(sel[i], sel[K - 1]);
            dist[i * cap + (K - 1)] = d;
            dist[(K - 1) * cap + i] = d;
        }

        if (K <= 2) {
            // remainders are singletons; every removal scores +infinity
            score[0] = inf;
            score[1] = inf;
        } else {
            double dmin = inf;
            std::size_t pa = 0;
            std::size_t pb = 1;
            for (std::size_t i = 0; i < K; ++i) {
                for (std::size_t j = i + 1; j < K; ++j) {
                    if (dist[i * cap + j] < dmin) {
                        dmin = dist[i * cap + j];
                        pa = i;
                        pb = j;
                    }
                }
            }
            // removing anything outside the closest pair keeps that pair's
            // distance as the minimum
            for (std::size_t c = 0; c < K; ++c) {
                if (c != pa && c != pb) {
                    score[c] = dmin;
                    continue;
                }
                double s = inf;
                for (std::size_t i = 0; i < K; ++i) {
                    if (i == c)
                        continue;
                    for (std::size_t j = i + 1; j < K; ++j) {
                        if (j == c)
                            continue;
                        if (dist[i * cap + j] < s)
                            s = dist[i * cap + j];
                    }
                }
                score[c] = s;
            }
        }

        double best_score = -inf;
        for (std::size_t c = 0; c < K; ++c)
            best_score = std::max(best_score, score[c]);
        ties.clear();
        for (std::size_t c = 0; c < K; ++c) {
            if (score[c] == best_score)
                ties.push_back(c);
        }
        const std::size_t worst = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];

        pool[pool_pos] = sel[worst];
        const std::size_t last = sel.size() - 1;
        if (worst != last) {
            sel[worst] = sel[last];
            for (std::size_t i = 0; i < last; ++i) {
                if (i == worst)
                    continue;
                dist[i * cap + worst] = dist[i * cap + last];
                dist[worst * cap + i] = dist[last * cap + i];
            }
        }
        sel.pop_back();
    }

    std::sort(sel.begin(), sel.end());
    std::vector<Solution> out;
    out.reserve(k);
    for (std::size_t idx : sel)
        out.push_back(A[idx]);
    return out;
}

/// The preference-based postprocessing method. Picks the archive solution
/// closest to z, gathers everything within radius r of it, then either fills
/// up with nearest neighbours (|X| < k) or thins with IDSS (|X| > k).
inline std::vector<Solution> pref_postprocess(const std::vector<Solution>& A,
                                              const PostprocessParams& params, Rng& rng)
{
    const std::size_t k = params.k;
    if (A.size() <= k)
        return A;
    validate_roi(params.roi, A.front().f.size());

    std::size_t center = 0;
    double center_dist = euclid(A.front().f, params.roi.z);
    for (std::size_t i = 1; i < A.size(); ++i) {
        const double d = euclid(A[i].f, params.roi.z);
        if (d < center_dist) {
            center_dist = d;
            center = i;
        }
    }
    const Vec fc = A[center].f;

    std::vector<char> in_subset(A.size(), 0);
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (euclid(A[i].f, fc) <= params.roi.r) {
            in_subset[i] = 1;
            subset.push_back(i);
        }
    }

    while (subset.size() < k) {
        std::size_t best = A.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (in_subset[i])
                continue;
            const double d = euclid(A[i].f, fc);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        in_subset[best] = 1;
        subset.push_back(best);
    }

    std::vector<Solution> X;
    X.reserve(subset.size());
    std::sort(subset.begin(), subset.end());
    for (std::size_t i : subset)
        X.push_back(A[i]);

    if (X.size() > k)
        return idss(X, k, params.t_max, rng);
    return X;
}

} // namespace pbemo

#endif

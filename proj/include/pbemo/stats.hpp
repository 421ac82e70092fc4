#ifndef PBEMO_STATS_HPP
#define PBEMO_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pbemo/core.hpp"

// Statistical comparison machinery: two-sided Wilcoxon rank-sum with the
// (+/-/~=) verdict convention, and Friedman average rankings. Samples of at
// most 8 per side use the exact permutation distribution of the rank sum;
// larger samples use the tie-corrected normal approximation with continuity
// correction.

namespace pbemo {

struct SampleSet {
    std::vector<double> values;
    std::string label;
};

enum class Verdict { Plus, Minus, Similar };

inline const char* verdict_symbol(Verdict v)
{
    switch (v) {
    case Verdict::Plus: return "+";
    case Verdict::Minus: return "-";
    case Verdict::Similar: return "≈";
    }
    return "?";
}

struct RankSumResult {
    double p_value = 1.0;
    Verdict verdict = Verdict::Similar;
    double w_statistic = 0.0; // rank sum of the first sample
    bool exact = false;
};

namespace detail {

/// Midranks (1-based, ties share the mean rank) of the pooled values.
inline std::vector<double> midranks(const std::vector<double>& pooled)
{
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]])
            ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t)
            rank[order[t]] = shared;
        i = j + 1;
    }
    return rank;
}

inline double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Exact two-sided p-value by enumerating every assignment of n_a of the
/// pooled midranks to the first sample.
inline double exact_rank_sum_p(const std::vector<double>& ranks, std::size_t na, double w_obs)
{
    const std::size_t n = ranks.size();
    std::vector<std::size_t> comb(na);
    for (std::size_t i = 0; i < na; ++i)
        comb[i] = i;
    std::uint64_t total = 0;
    std::uint64_t count_le = 0;
    std::uint64_t count_ge = 0;
    while (true) {
        double w = 0.0;
        for (std::size_t i : comb)
            w += ranks[i];
        ++total;
        if (w <= w_obs)
            ++count_le;
        if (w >= w_obs)
            ++count_ge;
        // next combination in lexicographic order
        std::size_t i = na;
        while (i > 0) {
            --i;
            if (comb[i] != i + n - na) {
                ++comb[i];
                for (std::size_t j = i + 1; j < na; ++j)
                    comb[j] = comb[j - 1] + 1;
                break;
            }
            if (i == 0)
                return std::min(1.0, 2.0 * std::min(static_cast<double>(count_le) / static_cast<double>(total),
                                                    static_cast<double>(count_ge) / static_cast<double>(total)));
        }
    }
}

} // namespace detail

/// Two-sided rank-sum test. Verdict is Plus when `a` is significantly smaller
/// (better under minimization) at p < 0.05, Minus when significantly larger,
/// Similar otherwise; direction is read off the sample medians.
inline RankSumResult wilcoxon_rank_sum(const SampleSet& a, const SampleSet& b)
{
    const std::size_t na = a.values.size();
    const std::size_t nb = b.values.size();
    if (na < 2 || nb < 2)
        throw input_error("wilcoxon_rank_sum: both samples need at least 2 values");
    for (double v : a.values)
        if (!std::isfinite(v))
            throw input_error("wilcoxon_rank_sum: non-finite value in sample");
    for (double v : b.values)
        if (!std::isfinite(v))
            throw input_error("wilcoxon_rank_sum: non-finite value in sample");

    std::vector<double> pooled = a.values;
    pooled.insert(pooled.end(), b.values.begin(), b.values.end());
    const std::vector<double> ranks = detail::midranks(pooled);
    const std::size_t n = pooled.size();

    double w = 0.0;
    for (std::size_t i = 0; i < na; ++i)
        w += ranks[i];

    RankSumResult res;
    res.w_statistic = w;

    if (na <= 8 && nb <= 8) {
        res.exact = true;
        res.p_value = detail::exact_rank_sum_p(ranks, na, w);
    } else {
        const double mean = static_cast<double>(na) * static_cast<double>(n + 1) / 2.0;
        double tie_term = 0.0;
        {
            std::vector<double> sorted = pooled;
            std::sort(sorted.begin(), sorted.end());
            std::size_t i = 0;
            while (i < n) {
                std::size_t j = i;
                while (j + 1 < n && sorted[j + 1] == sorted[i])
                    ++j;
                const double t = static_cast<double>(j - i + 1);
                tie_term += t * t * t - t;
                i = j + 1;
            }
        }
        const double nn = static_cast<double>(n);
        const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0
                           * (nn + 1.0 - tie_term / (nn * (nn - 1.0)));
        if (var <= 0.0) {
            res.p_value = 1.0;
        } else {
            double diff = w - mean;
            diff -= diff > 0.0 ? 0.5 : (diff < 0.0 ? -0.5 : 0.0); // continuity correction
            const double z = diff / std::sqrt(var);
            res.p_value = std::min(1.0, std::erfc(std::fabs(z) / 1.4142135623730950488));
        }
    }

    if (res.p_value < 0.05) {
        const double ma = detail::median(a.values);
        const double mb = detail::median(b.values);
        if (ma < mb)
            res.verdict = Verdict::Plus;
        else if (ma > mb)
            res.verdict = Verdict::Minus;
        else
            res.verdict = w < static_cast<double>(na) * static_cast<double>(n + 1) / 2.0
                              ? Verdict::Plus
                              : Verdict::Minus;
    }
    return res;
}

/// Per-column average Friedman ranks: within each row the smallest value gets
/// rank 1 (ties share the mean rank); ranks are then averaged over rows.
inline std::vector<double> friedman_ranks(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty())
        throw input_error("friedman_ranks: need at least one row");
    const std::size_t cols = rows.front().size();
    if (cols < 2)
        throw input_error("friedman_ranks: need at least two treatments");
    std::vector<double> avg(cols, 0.0);
    for (const std::vector<double>& row : rows) {
        if (row.size() != cols)
            throw input_error("friedman_ranks: ragged matrix");
        for (double v : row)
            if (!std::isfinite(v))
                throw input_error("friedman_ranks: missing or non-finite cell");
        const std::vector<double> r = detail::midranks(row);
        for (std::size_t c = 0; c < cols; ++c)
            avg[c] += r[c];
    }
    for (double& v : avg)
        v /= static_cast<double>(rows.size());
    return avg;
}

/// Index of the best (lowest) average rank; ties go to the smallest index.
inline std::size_t best_treatment(const std::vector<double>& avg_ranks)
{
    if (avg_ranks.empty())
        throw input_error("best_treatment: empty ranks");
    std::size_t best = 0;
    for (std::size_t i = 1; i < avg_ranks.size(); ++i) {
        if (avg_ranks[i] < avg_ranks[best])
            best = i;
    }
    return best;
}

} // namespace pbemo

#endif

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "pbemo/rng.hpp"
#include "pbemo/stats.hpp"

using namespace pbemo;

namespace {

// Exhaustive permutation oracle: enumerates every subset assignment with a
// selection mask and next_permutation, independent of the library's
// combination walk.
double oracle_exact_p(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();

    // midranks
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    auto rank_of = [&](double v) {
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (sorted[i] < v)
                lo += 1.0;
            if (sorted[i] <= v)
                hi += 1.0;
        }
        return (lo + 1.0 + hi) / 2.0;
    };
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i)
        ranks[i] = rank_of(pooled[i]);

    double w_obs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        w_obs += ranks[i];

    std::vector<int> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(a.size()), 1);
    std::sort(mask.begin(), mask.end());
    long total = 0;
    long le = 0;
    long ge = 0;
    do {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i])
                w += ranks[i];
        ++total;
        if (w <= w_obs)
            ++le;
        if (w >= w_obs)
            ++ge;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return std::min(1.0, 2.0 * std::min(static_cast<double>(le) / total,
                                        static_cast<double>(ge) / total));
}

} // namespace

TEST_CASE("identical samples are similar with p = 1")
{
    const SampleSet a{{0.5, 0.7, 0.9}, "a"};
    const RankSumResult res = wilcoxon_rank_sum(a, a);
    CHECK(res.p_value == 1.0);
    CHECK(res.verdict == Verdict::Similar);
}

TEST_CASE("fully separated large samples give a strong plus")
{
    SampleSet a{{}, "a"};
    SampleSet b{{}, "b"};
    for (int i = 0; i < 31; ++i) {
        a.values.push_back(0.001 + i * 1e-5);
        b.values.push_back(0.1 + i * 1e-4);
    }
    const RankSumResult res = wilcoxon_rank_sum(a, b);
    CHECK_FALSE(res.exact);
    CHECK(res.p_value < 0.001);
    CHECK(res.verdict == Verdict::Plus);
    const RankSumResult rev = wilcoxon_rank_sum(b, a);
    CHECK(rev.verdict == Verdict::Minus);
    CHECK(rev.p_value == Catch::Approx(res.p_value).margin(1e-15));
}

TEST_CASE("textbook instance matches the exact enumeration")
{
    const SampleSet a{{1.83, 0.50, 1.62, 2.48, 1.68, 1.88, 1.55, 3.06}, "a"};
    const SampleSet b{{0.878, 0.647, 0.598, 2.05, 1.06, 1.29, 1.06}, "b"};
    const RankSumResult res = wilcoxon_rank_sum(a, b);
    CHECK(res.exact);
    CHECK(res.p_value ==
          Catch::Approx(oracle_exact_p(a.values, b.values)).margin(1e-6));
}

TEST_CASE("exact p-values match the permutation oracle on random small samples")
{
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t na = 2 + rng.below(5);
        const std::size_t nb = 2 + rng.below(5);
        SampleSet a{{}, "a"};
        SampleSet b{{}, "b"};
        for (std::size_t i = 0; i < na; ++i)
            a.values.push_back(std::round(rng.uniform() * 20.0) / 4.0); // ties likely
        for (std::size_t i = 0; i < nb; ++i)
            b.values.push_back(std::round(rng.uniform() * 20.0) / 4.0);
        const RankSumResult res = wilcoxon_rank_sum(a, b);
        REQUIRE(res.exact);
        CHECK(res.p_value == Catch::Approx(oracle_exact_p(a.values, b.values)).margin(1e-6));
    }
}

TEST_CASE("verdicts are antisymmetric")
{
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        SampleSet a{{}, "a"};
        SampleSet b{{}, "b"};
        for (int i = 0; i < 7; ++i) {
            a.values.push_back(rng.uniform());
            b.values.push_back(rng.uniform() + 0.2 * rng.uniform());
        }
        const Verdict ab = wilcoxon_rank_sum(a, b).verdict;
        const Verdict ba = wilcoxon_rank_sum(b, a).verdict;
        if (ab == Verdict::Plus)
            CHECK(ba == Verdict::Minus);
        else if (ab == Verdict::Minus)
            CHECK(ba == Verdict::Plus);
        else
            CHECK(ba == Verdict::Similar);
    }
}

TEST_CASE("friedman ranks: unanimous winner and shared ties")
{
    // column 0 smallest in every row
    const std::vector<double> r1 = friedman_ranks({{1, 2, 3}, {0.1, 5, 4}, {2, 9, 3}});
    CHECK(r1[0] == 1.0);

    // two tied best columns share rank 1.5
    const std::vector<double> r2 = friedman_ranks({{1, 1, 2}});
    CHECK(r2[0] == 1.5);
    CHECK(r2[1] == 1.5);
    CHECK(r2[2] == 3.0);

    CHECK_THROWS_AS(friedman_ranks({}), input_error);
    CHECK_THROWS_AS(friedman_ranks({{1}}), input_error);
    CHECK_THROWS_AS(friedman_ranks({{1, 2}, {1}}), input_error);
}

TEST_CASE("friedman ranks match a per-row sort oracle and sum to c(c+1)/2")
{
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng.below(8);
        const std::size_t cols = 2 + rng.below(5);
        std::vector<std::vector<double>> matrix(rows, std::vector<double>(cols));
        for (auto& row : matrix)
            for (double& v : row)
                v = std::round(rng.uniform() * 10.0) / 2.0;

        const std::vector<double> avg = friedman_ranks(matrix);

        // oracle: per-row ranking via sorting with midrank ties
        std::vector<double> expect(cols, 0.0);
        for (const auto& row : matrix) {
            for (std::size_t c = 0; c < cols; ++c) {
                double less = 0.0;
                double equal = 0.0;
                for (std::size_t o = 0; o < cols; ++o) {
                    if (row[o] < row[c])
                        less += 1.0;
                    if (row[o] == row[c])
                        equal += 1.0;
                }
                expect[c] += less + (equal + 1.0) / 2.0;
            }
        }
        double column_total = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            expect[c] /= static_cast<double>(rows);
            CHECK(avg[c] == Catch::Approx(expect[c]).margin(1e-12));
            column_total += avg[c];
        }
        const double want = static_cast<double>(cols) * (cols + 1) / 2.0;
        CHECK(column_total == Catch::Approx(want).margin(1e-9));
    }
}

TEST_CASE("rank computation is invariant under monotone transforms")
{
    Rng rng(55);
    std::vector<std::vector<double>> matrix(6, std::vector<double>(4));
    for (auto& row : matrix)
        for (double& v : row)
            v = rng.uniform();
    const std::vector<double> base = friedman_ranks(matrix);
    for (auto& row : matrix)
        for (double& v : row)
            v = std::exp(3.0 * v) + 1.0;
    CHECK(friedman_ranks(matrix) == base);
}

TEST_CASE("best treatment is the argmin with smallest-index ties")
{
    CHECK(best_treatment({2.0, 1.0, 3.0}) == 1);
    CHECK(best_treatment({1.5, 1.5, 1.5}) == 0);
    CHECK_THROWS_AS(best_treatment({}), input_error);

    // synthetic winner recovery
    Rng rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t cols = 3 + rng.below(4);
        const std::size_t winner = rng.below(cols);
        std::vector<std::vector<double>> matrix;
        for (int r = 0; r < 9; ++r) {
            std::vector<double> row(cols);
            for (std::size_t c = 0; c < cols; ++c)
                row[c] = (c == winner ? 0.0 : 1.0) + rng.uniform() * 0.5;
            matrix.push_back(std::move(row));
        }
        CHECK(best_treatment(friedman_ranks(matrix)) == winner);
    }
}

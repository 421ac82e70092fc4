#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "pbemo/postprocess.hpp"

using namespace pbemo;

namespace {

Solution sol(Vec f)
{
    Solution s;
    s.f = std::move(f);
    return s;
}

std::vector<Solution> random_archive(Rng& rng, std::size_t count, std::size_t m)
{
    std::vector<Solution> out;
    for (std::size_t i = 0; i < count; ++i) {
        Vec f(m);
        for (double& v : f)
            v = rng.uniform();
        out.push_back(sol(std::move(f)));
    }
    return out;
}

/// Random mutually non-dominated set of size within [lo, hi].
std::vector<Solution> random_nondominated(Rng& rng, std::size_t lo, std::size_t hi, std::size_t m)
{
    while (true) {
        std::vector<Vec> pts;
        for (int i = 0; i < 40; ++i) {
            Vec f(m);
            for (double& v : f)
                v = rng.uniform();
            pts.push_back(std::move(f));
        }
        std::vector<Vec> nd;
        for (const Vec& p : pts) {
            bool dominated = false;
            for (const Vec& q : pts) {
                if (q != p && weakly_dominates(q, p)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated)
                nd.push_back(p);
        }
        if (nd.size() >= lo) {
            std::vector<Solution> out;
            for (std::size_t i = 0; i < std::min(nd.size(), hi); ++i)
                out.push_back(sol(nd[i]));
            return out;
        }
    }
}

std::multiset<double> distance_multiset(const std::vector<Solution>& set, const Vec& center)
{
    std::multiset<double> out;
    for (const Solution& s : set)
        out.insert(euclid(s.f, center));
    return out;
}

// Literal re-execution of the selection loop with naive uniformity calls;
// consumes the rng in exactly the same order as the library version.
std::vector<std::size_t> naive_idss_indices(const std::vector<Solution>& A, std::size_t k,
                                            std::size_t t_max, Rng& rng)
{
    const std::size_t n = A.size();
    std::vector<Vec> fa;
    for (const Solution& s : A)
        fa.push_back(s.f);
    const Bounds bounds = bounds_of(fa);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    for (std::size_t i = 0; i < k; ++i)
        std::swap(order[i], order[i + rng.below(n - i)]);
    std::vector<std::size_t> selected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());

    for (std::size_t t = 0; t < t_max; ++t) {
        const std::size_t pool_pos = rng.below(pool.size());
        selected.push_back(pool[pool_pos]);
        std::vector<double> score(selected.size());
        for (std::size_t c = 0; c < selected.size(); ++c) {
            std::vector<Vec> rest;
            for (std::size_t i = 0; i < selected.size(); ++i) {
                if (i != c)
                    rest.push_back(A[selected[i]].f);
            }
            score[c] = uniformity_against(rest, bounds);
        }
        const double best_score = *std::max_element(score.begin(), score.end());
        std::vector<std::size_t> ties;
        for (std::size_t c = 0; c < selected.size(); ++c) {
            if (score[c] == best_score)
                ties.push_back(c);
        }
        const std::size_t best_pos = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];
        pool[pool_pos] = selected[best_pos];
        selected[best_pos] = selected.back();
        selected.pop_back();
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

} // namespace

TEST_CASE("uniformity basics")
{
    CHECK(uniformity({sol({0, 1}), sol({1, 0})}) == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(uniformity({sol({0.3, 0.3}), sol({0.3, 0.3}), sol({1, 0})}) == 0.0);
    CHECK_THROWS_AS(uniformity({sol({1, 1})}), input_error);
}

TEST_CASE("uniformity equals a brute-force pair scan")
{
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Solution> X = random_archive(rng, 5, 3);
        std::vector<Vec> fs;
        for (const Solution& s : X)
            fs.push_back(s.f);
        const std::vector<Vec> u = normalize_set(fs);
        double best = 1e300;
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = i + 1; j < u.size(); ++j)
                best = std::min(best, euclid(u[i], u[j]));
        CHECK(uniformity(X) == best);
    }
}

TEST_CASE("idss returns the archive when it is small enough")
{
    Rng rng(1);
    const std::vector<Solution> A = random_archive(rng, 6, 2);
    Rng sel(2);
    const std::vector<Solution> out = idss(A, 6, 100, sel);
    REQUIRE(out.size() == A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        CHECK(out[i].f == A[i].f);
    Rng sel2(2);
    CHECK(idss(A, 10, 100, sel2).size() == 6);
}

TEST_CASE("idss cached scoring is bit-identical to the naive loop")
{
    Rng rng(33);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 8 + rng.below(20);
        const std::size_t k = 2 + rng.below(5);
        const std::size_t m = 2 + rng.below(3);
        const std::vector<Solution> A = random_archive(rng, n, m);
        const std::uint64_t seed = rng.next_word();
        Rng lib_rng(seed);
        Rng ref_rng(seed);
        const std::vector<Solution> got = idss(A, k, 200, lib_rng);
        const std::vector<std::size_t> want = naive_idss_indices(A, k, 200, ref_rng);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(got[i].f == A[want[i]].f);
    }
}

TEST_CASE("idss output beats the median random subset")
{
    Rng data_rng(77);
    const std::vector<Solution> A = random_archive(data_rng, 50, 3);
    Rng sel(78);
    const std::vector<Solution> chosen = idss(A, 10, 10000, sel);
    REQUIRE(chosen.size() == 10);
    const double achieved = uniformity(chosen);

    Rng base_rng(79);
    std::vector<double> baseline;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::size_t> order(A.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        for (std::size_t i = 0; i < 10; ++i)
            std::swap(order[i], order[i + base_rng.below(order.size() - i)]);
        std::vector<Solution> subset;
        for (std::size_t i = 0; i < 10; ++i)
            subset.push_back(A[order[i]]);
        baseline.push_back(uniformity(subset));
    }
    std::sort(baseline.begin(), baseline.end());
    CHECK(achieved >= baseline[baseline.size() / 2]);
}

TEST_CASE("idss finds the extremes of a collinear archive")
{
    const std::vector<Solution> A{sol({0.0, 1.0}), sol({1.0 / 3, 2.0 / 3}),
                                  sol({2.0 / 3, 1.0 / 3}), sol({1.0, 0.0})};
    Rng seeds(5);
    int found = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Rng sel(seeds.next_word());
        const std::vector<Solution> out = idss(A, 2, 1000, sel);
        REQUIRE(out.size() == 2);
        if ((out[0].f == Vec{0.0, 1.0} && out[1].f == Vec{1.0, 0.0}))
            ++found;
    }
    CHECK(found >= 99);
}

TEST_CASE("idss reaches the exhaustive optimum on toy archives")
{
    Rng rng(2025);
    int optimal = 0;
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t k = 2 + rng.below(3);
        const std::vector<Solution> A = random_nondominated(rng, k + 2, 12, 2);
        const std::size_t n = A.size();
        std::vector<Vec> fa;
        for (const Solution& s : A)
            fa.push_back(s.f);
        const Bounds bounds = bounds_of(fa);

        // exhaustive enumeration of all k-subsets under the same bounds
        double best = -1.0;
        std::vector<int> mask(n, 0);
        std::fill(mask.end() - static_cast<std::ptrdiff_t>(k), mask.end(), 1);
        do {
            std::vector<Vec> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask[i])
                    subset.push_back(A[i].f);
            best = std::max(best, uniformity_against(subset, bounds));
        } while (std::next_permutation(mask.begin(), mask.end()));

        Rng sel(rng.next_word());
        const std::vector<Solution> out = idss(A, k, 10000, sel);
        std::vector<Vec> fs;
        for (const Solution& s : out)
            fs.push_back(s.f);
        if (uniformity_against(fs, bounds) >= best - 1e-12)
            ++optimal;
    }
    CHECK(optimal == trials);
}

TEST_CASE("pref_postprocess returns the archive when small and is idempotent")
{
    Rng rng(3);
    const std::vector<Solution> A = random_archive(rng, 7, 2);
    PostprocessParams params;
    params.k = 10;
    params.t_max = 100;
    params.roi = {{0.6, 0.4}, 0.1};
    Rng sel(4);
    const std::vector<Solution> once = pref_postprocess(A, params, sel);
    REQUIRE(once.size() == A.size());
    Rng sel2(5);
    const std::vector<Solution> twice = pref_postprocess(once, params, sel2);
    REQUIRE(twice.size() == once.size());
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(twice[i].f == once[i].f);
}

TEST_CASE("case 1 output is the k nearest to the center")
{
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng.below(3);
        const std::vector<Solution> A = random_archive(rng, 30 + rng.below(40), m);
        PostprocessParams params;
        params.k = 5 + rng.below(10);
        params.t_max = 50;
        params.roi.z = Vec(m, 0.4);
        params.roi.r = 0.02; // tiny ball so the fill loop fires

        // oracle center: nearest archive member to z
        std::size_t center = 0;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (euclid(A[i].f, params.roi.z) < euclid(A[center].f, params.roi.z))
                center = i;
        }
        const Vec fc = A[center].f;
        std::vector<double> dists;
        for (const Solution& s : A)
            dists.push_back(euclid(s.f, fc));
        std::vector<double> sorted = dists;
        std::sort(sorted.begin(), sorted.end());

        Rng sel(rng.next_word());
        const std::vector<Solution> out = pref_postprocess(A, params, sel);
        REQUIRE(out.size() == params.k);

        // k-nearest-neighbour oracle, compared as distance multisets so
        // exact-distance ties stay legal
        const std::multiset<double> got = distance_multiset(out, fc);
        std::multiset<double> want(sorted.begin(),
                                   sorted.begin() + static_cast<std::ptrdiff_t>(params.k));
        CHECK(got == want);
    }
}

TEST_CASE("case 2 output lies within the radius and is thinned to k")
{
    Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 2;
        const std::vector<Solution> A = random_archive(rng, 120, m);
        PostprocessParams params;
        params.k = 8;
        params.t_max = 500;
        params.roi.z = Vec(m, 0.4);
        params.roi.r = 0.8; // wide ball so the subset overflows

        std::size_t center = 0;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (euclid(A[i].f, params.roi.z) < euclid(A[center].f, params.roi.z))
                center = i;
        }
        const Vec fc = A[center].f;

        Rng sel(rng.next_word());
        const std::vector<Solution> out = pref_postprocess(A, params, sel);
        REQUIRE(out.size() == params.k);
        for (const Solution& s : out)
            CHECK(euclid(s.f, fc) <= params.roi.r);
    }
}

TEST_CASE("output size is always min(k, |A|)")
{
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        const std::vector<Solution> A = random_archive(rng, n, 2);
        PostprocessParams params;
        params.k = 1 + rng.below(20);
        params.t_max = 60;
        params.roi.z = {0.6, 0.4};
        params.roi.r = 0.05 + rng.uniform() * 0.5;
        Rng sel(rng.next_word());
        CHECK(pref_postprocess(A, params, sel).size() == std::min(params.k, n));
        Rng sel2(rng.next_word());
        CHECK(idss(A, params.k, 60, sel2).size() == std::min(params.k, n));
    }
}

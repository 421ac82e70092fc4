#include <catch2/catch_amalgamated.hpp>

#include "pbemo/core.hpp"
#include "pbemo/rng.hpp"

using namespace pbemo;

namespace {

Vec random_vec(Rng& rng, std::size_t m, double lo = 0.0, double hi = 1.0)
{
    Vec v(m);
    for (double& x : v)
        x = lo + (hi - lo) * rng.uniform();
    return v;
}

} // namespace

TEST_CASE("dominates basic cases")
{
    CHECK(dominates({1, 2}, {2, 3}));
    CHECK_FALSE(dominates({1, 2}, {1, 2}));
    CHECK_FALSE(dominates({1, 3}, {2, 2}));
    CHECK(dominates({1, 2}, {1, 3}));
    CHECK_THROWS_AS(dominates({1, 2}, {1, 2, 3}), input_error);
}

TEST_CASE("weak dominance basic cases")
{
    CHECK(weakly_dominates({1, 2}, {1, 2}));
    CHECK(weakly_dominates({1, 2}, {2, 3}));
    CHECK_FALSE(weakly_dominates({1, 3}, {2, 2}));
    CHECK_THROWS_AS(weakly_dominates({1}, {1, 2}), input_error);
}

TEST_CASE("euclid basic cases")
{
    CHECK(euclid({0, 0}, {0, 0}) == 0.0);
    CHECK(euclid({0, 0}, {3, 4}) == 5.0);
    CHECK(euclid({0.6, 0.4}, {0.5, 0.5}) == Catch::Approx(0.1414213562373095).epsilon(1e-12));
    CHECK_THROWS_AS(euclid({1, 2, 3}, {1, 2}), input_error);
}

TEST_CASE("dominance is a strict partial order on random triples")
{
    Rng rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 2 + rng.below(4);
        const Vec a = random_vec(rng, m);
        const Vec b = random_vec(rng, m);
        const Vec c = random_vec(rng, m);
        CHECK_FALSE(dominates(a, a));
        CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        if (dominates(a, b) && dominates(b, c))
            CHECK(dominates(a, c));
        // weak dominance decomposes into dominance or equality
        CHECK(weakly_dominates(a, b) == (dominates(a, b) || a == b));
    }
}

TEST_CASE("euclid satisfies the triangle inequality")
{
    Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = 2 + rng.below(5);
        const Vec a = random_vec(rng, m, -5, 5);
        const Vec b = random_vec(rng, m, -5, 5);
        const Vec c = random_vec(rng, m, -5, 5);
        CHECK(euclid(a, c) <= euclid(a, b) + euclid(b, c) + 1e-12);
    }
}

TEST_CASE("normalize_set maps to the unit box")
{
    const std::vector<Vec> corners = normalize_set({{0, 1}, {1, 0}});
    CHECK(corners[0] == Vec{0, 1});
    CHECK(corners[1] == Vec{1, 0});

    const std::vector<Vec> scaled = normalize_set({{2, 4}, {4, 8}});
    CHECK(scaled[0] == Vec{0, 0});
    CHECK(scaled[1] == Vec{1, 1});

    // degenerate first dimension collapses to 0
    const std::vector<Vec> degenerate = normalize_set({{1, 1}, {1, 2}});
    CHECK(degenerate[0] == Vec{0, 0});
    CHECK(degenerate[1] == Vec{0, 1});

    CHECK_THROWS_AS(normalize_set({{1, 2}}), input_error);
}

TEST_CASE("normalize_set is invariant under positive affine transforms")
{
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng.below(4);
        const std::size_t n = 2 + rng.below(10);
        std::vector<Vec> F;
        for (std::size_t i = 0; i < n; ++i)
            F.push_back(random_vec(rng, m, -3, 3));
        Vec scale(m);
        Vec shift(m);
        for (std::size_t d = 0; d < m; ++d) {
            scale[d] = 0.1 + 5.0 * rng.uniform();
            shift[d] = -10.0 + 20.0 * rng.uniform();
        }
        std::vector<Vec> G = F;
        for (Vec& g : G)
            for (std::size_t d = 0; d < m; ++d)
                g[d] = scale[d] * g[d] + shift[d];
        const std::vector<Vec> nf = normalize_set(F);
        const std::vector<Vec> ng = normalize_set(G);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < m; ++d)
                CHECK(nf[i][d] == Catch::Approx(ng[i][d]).margin(1e-12));
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pbemo/indicators.hpp"
#include "pbemo/problems.hpp"
#include "pbemo/rng.hpp"

using namespace pbemo;

namespace {

std::vector<Vec> random_set(Rng& rng, std::size_t count, std::size_t m)
{
    std::vector<Vec> out;
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(m);
        for (double& x : v)
            x = rng.uniform();
        out.push_back(std::move(v));
    }
    return out;
}

// test-side double-loop recomputation, written independently
double naive_igd(const std::vector<Vec>& X, const std::vector<Vec>& S, bool plus)
{
    double acc = 0.0;
    for (const Vec& s : S) {
        double nearest = 1e300;
        for (const Vec& x : X) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                double diff = x[i] - s[i];
                if (plus && diff < 0.0)
                    diff = 0.0;
                d2 += diff * diff;
            }
            nearest = std::min(nearest, std::sqrt(d2));
        }
        acc += nearest;
    }
    return acc / static_cast<double>(S.size());
}

} // namespace

TEST_CASE("igd basic values")
{
    const std::vector<Vec> S{{0, 0}};
    CHECK(igd({{3, 4}}, S) == 5.0);
    CHECK(igd(S, S) == 0.0);
    CHECK_THROWS_AS(igd({}, S), input_error);
    CHECK_THROWS_AS(igd(S, {}), input_error);
}

TEST_CASE("igd_plus counts only objective excess")
{
    CHECK(igd_plus({{2, 0}}, {{1, 1}}) == 1.0);
    // every reference point weakly dominated -> zero
    CHECK(igd_plus({{0, 0}}, {{1, 1}, {0.5, 2}}) == 0.0);
}

TEST_CASE("igd family matches naive recomputation")
{
    Rng rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 2 + rng.below(5);
        const std::vector<Vec> X = random_set(rng, 1 + rng.below(30), m);
        const std::vector<Vec> S = random_set(rng, 1 + rng.below(20), m);
        CHECK(igd(X, S) == Catch::Approx(naive_igd(X, S, false)).margin(1e-12));
        CHECK(igd_plus(X, S) == Catch::Approx(naive_igd(X, S, true)).margin(1e-12));
        CHECK(igd_plus(X, S) <= igd(X, S) + 1e-15);
    }
}

TEST_CASE("igd is translation invariant")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + rng.below(4);
        std::vector<Vec> X = random_set(rng, 10, m);
        std::vector<Vec> S = random_set(rng, 10, m);
        Vec shift(m);
        for (double& v : shift)
            v = -2.0 + 4.0 * rng.uniform();
        const double before = igd(X, S);
        for (Vec& x : X)
            for (std::size_t d = 0; d < m; ++d)
                x[d] += shift[d];
        for (Vec& s : S)
            for (std::size_t d = 0; d < m; ++d)
                s[d] += shift[d];
        CHECK(igd(X, S) == Catch::Approx(before).margin(1e-12));
    }
}

TEST_CASE("igd_plus never increases under pointwise improvement")
{
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 2 + rng.below(3);
        std::vector<Vec> X = random_set(rng, 5, m);
        const std::vector<Vec> S = random_set(rng, 8, m);
        const double before = igd_plus(X, S);
        // improve one member: subtract a non-negative amount per coordinate
        const std::size_t pick = rng.below(X.size());
        for (std::size_t d = 0; d < m; ++d)
            X[pick][d] -= rng.uniform() * 0.5;
        CHECK(igd_plus(X, S) <= before + 1e-15);
    }
}

TEST_CASE("roi_ref_subset picks the closest point and a strict ball")
{
    const RoiSpec roi{{0.6, 0.4}, 0.1};

    // front sample on DTLZ1, mirroring the running example
    const IndicatorRefSet set = sample_front(make_problem(ProblemId::DTLZ1, 2), 5000, 77);
    const RoiRefSubset sub = roi_ref_subset(set.points, roi);

    // oracle: linear scan for the closest point
    std::size_t best = 0;
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (euclid(set.points[i], roi.z) < euclid(set.points[best], roi.z))
            best = i;
    }
    CHECK(sub.s_c == set.points[best]);
    CHECK_FALSE(sub.points.empty());
    std::size_t within = 0;
    for (const Vec& s : set.points) {
        if (euclid(s, sub.s_c) < roi.r)
            ++within;
    }
    CHECK(sub.points.size() == within);
    for (const Vec& p : sub.points)
        CHECK(euclid(p, sub.s_c) < roi.r);

    // radius below the point spacing keeps only s_c itself
    const RoiSpec tiny{{0.6, 0.4}, 1e-12};
    const RoiRefSubset only_center = roi_ref_subset(set.points, tiny);
    CHECK(only_center.points.size() == 1);
    CHECK(only_center.points.front() == sub.s_c);

    // radius beyond the front diameter keeps everything
    const RoiSpec huge{{0.6, 0.4}, 100.0};
    CHECK(roi_ref_subset(set.points, huge).points.size() == set.points.size());
}

TEST_CASE("igd_c equals igd against the restricted set")
{
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 2 + rng.below(3);
        const std::vector<Vec> X = random_set(rng, 12, m);
        const std::vector<Vec> S = random_set(rng, 40, m);
        RoiSpec roi;
        roi.z = Vec(m, 0.5);
        roi.r = 0.2 + rng.uniform();
        const RoiRefSubset sub = roi_ref_subset(S, roi);
        CHECK(igd_c(X, S, roi) == igd(X, sub.points));
        CHECK(igd_plus_c(X, S, roi) == igd_plus(X, sub.points));
    }
}

TEST_CASE("covering the restricted set exactly gives zero")
{
    const std::vector<Vec> S{{0, 1}, {0.1, 0.9}, {5, 5}};
    const RoiSpec roi{{0, 1}, 0.2};
    const RoiRefSubset sub = roi_ref_subset(S, roi);
    REQUIRE(sub.points.size() == 2);
    CHECK(igd_c(sub.points, S, roi) == 0.0);
}

#ifndef PBEMO_PROBLEMS_HPP
#define PBEMO_PROBLEMS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pbemo/core.hpp"
#include "pbemo/rng.hpp"

// DTLZ1-DTLZ4 test problems, Pareto-front samplers for indicator reference
// sets, and the per-m default reference points used throughout.

namespace pbemo {

enum class ProblemId { DTLZ1, DTLZ2, DTLZ3, DTLZ4 };

inline const char* problem_name(ProblemId id)
{
    switch (id) {
    case ProblemId::DTLZ1: return "DTLZ1";
    case ProblemId::DTLZ2: return "DTLZ2";
    case ProblemId::DTLZ3: return "DTLZ3";
    case ProblemId::DTLZ4: return "DTLZ4";
    }
    return "?";
}

inline ProblemId problem_from_name(const std::string& name)
{
    if (name == "DTLZ1" || name == "dtlz1") return ProblemId::DTLZ1;
    if (name == "DTLZ2" || name == "dtlz2") return ProblemId::DTLZ2;
    if (name == "DTLZ3" || name == "dtlz3") return ProblemId::DTLZ3;
    if (name == "DTLZ4" || name == "dtlz4") return ProblemId::DTLZ4;
    throw config_error("unknown problem: " + name);
}

struct ProblemSpec {
    ProblemId id = ProblemId::DTLZ2;
    int m = 2; // objectives
    int n = 11; // decision variables
};

/// n follows the DTLZ definition: k = 5 distance variables for DTLZ1,
/// k = 10 for DTLZ2-4, n = m - 1 + k.
inline ProblemSpec make_problem(ProblemId id, int m)
{
    if (m < 2)
        throw config_error("DTLZ problems need m >= 2");
    const int k = id == ProblemId::DTLZ1 ? 5 : 10;
    return ProblemSpec{id, m, m - 1 + k};
}

inline ProblemSpec make_problem(const std::string& name, int m)
{
    return make_problem(problem_from_name(name), m);
}

namespace detail {

inline double dtlz1_g(const Vec& x, int m)
{
    const std::size_t k = x.size() - static_cast<std::size_t>(m - 1);
    double sum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(m - 1); i < x.size(); ++i) {
        const double d = x[i] - 0.5;
        sum += d * d - std::cos(20.0 * 3.14159265358979323846 * d);
    }
    return 100.0 * (static_cast<double>(k) + sum);
}

inline double dtlz2_g(const Vec& x, int m)
{
    double sum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(m - 1); i < x.size(); ++i) {
        const double d = x[i] - 0.5;
        sum += d * d;
    }
    return sum;
}

} // namespace detail

constexpr double kDtlz4Alpha = 100.0;

inline Vec evaluate(const ProblemSpec& p, const Vec& x)
{
    if (x.size() != static_cast<std::size_t>(p.n))
        throw input_error("decision vector has " + std::to_string(x.size())
                          + " entries, expected " + std::to_string(p.n));
    for (double xi : x) {
        if (!(xi >= 0.0 && xi <= 1.0))
            throw input_error("decision variable out of [0,1]: " + std::to_string(xi));
    }
    const int m = p.m;
    const double half_pi = 1.57079632679489661923132169164;
    Vec f(static_cast<std::size_t>(m));

    if (p.id == ProblemId::DTLZ1) {
        const double g = detail::dtlz1_g(x, m);
        for (int i = 0; i < m; ++i) {
            double v = 0.5 * (1.0 + g);
            for (int j = 0; j < m - 1 - i; ++j)
                v *= x[static_cast<std::size_t>(j)];
            if (i > 0)
                v *= 1.0 - x[static_cast<std::size_t>(m - 1 - i)];
            f[static_cast<std::size_t>(i)] = v;
        }
        return f;
    }

    const double g = p.id == ProblemId::DTLZ3 ? detail::dtlz1_g(x, m) : detail::dtlz2_g(x, m);
    const bool biased = p.id == ProblemId::DTLZ4;
    auto pos = [&](int j) {
        const double v = x[static_cast<std::size_t>(j)];
        return biased ? std::pow(v, kDtlz4Alpha) : v;
    };
    for (int i = 0; i < m; ++i) {
        double v = 1.0 + g;
        for (int j = 0; j < m - 1 - i; ++j)
            v *= std::cos(pos(j) * half_pi);
        if (i > 0)
            v *= std::sin(pos(m - 1 - i) * half_pi);
        f[static_cast<std::size_t>(i)] = v;
    }
    return f;
}

/// Points sampled from the analytic Pareto front, used as IGD-family
/// reference sets.
struct IndicatorRefSet {
    std::vector<Vec> points;
    std::uint64_t seed = 0;
    std::size_t count = 0;
};

/// Samples `count` points on the analytic front. DTLZ1: uniform Dirichlet on
/// the simplex scaled by 0.5. DTLZ2-4: absolute standard normals projected
/// onto the unit sphere (uniform on the positive orthant).
inline IndicatorRefSet sample_front(const ProblemSpec& p, std::size_t count, std::uint64_t seed)
{
    if (count < 1)
        throw input_error("sample_front: count must be >= 1");
    IndicatorRefSet set;
    set.seed = seed;
    set.count = count;
    set.points.reserve(count);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(p.id) * 64 + static_cast<std::uint64_t>(p.m)));
    const std::size_t m = static_cast<std::size_t>(p.m);
    for (std::size_t c = 0; c < count; ++c) {
        Vec s(m);
        if (p.id == ProblemId::DTLZ1) {
            double sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                s[i] = -std::log(rng.uniform_pos());
                sum += s[i];
            }
            for (std::size_t i = 0; i < m; ++i)
                s[i] = 0.5 * s[i] / sum;
        } else {
            double norm = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                s[i] = std::fabs(rng.normal());
                norm += s[i] * s[i];
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                s.assign(m, 0.0);
                s[0] = 1.0;
            } else {
                for (std::size_t i = 0; i < m; ++i)
                    s[i] /= norm;
            }
        }
        set.points.push_back(std::move(s));
    }
    return set;
}

/// Reference set sizes: dense enough that the ROI restriction at r = 0.1
/// keeps hundreds of points.
inline std::size_t default_front_sample_count(int m)
{
    return m <= 3 ? 10000 : 50000;
}

/// The per-m reference points used in the experiments.
inline Vec default_reference_point(int m)
{
    switch (m) {
    case 2: return {0.6, 0.4};
    case 3: return {0.5, 0.3, 0.2};
    case 4: return {0.4, 0.3, 0.2, 0.1};
    case 5: return {0.3, 0.25, 0.2, 0.15, 0.1};
    case 6: return {0.3, 0.2, 0.15, 0.13, 0.12, 0.1};
    default:
        throw config_error("no default reference point for m = " + std::to_string(m)
                           + "; supply z explicitly");
    }
}

} // namespace pbemo

#endif

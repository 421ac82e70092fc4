#ifndef PBEMO_CORE_HPP
#define PBEMO_CORE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types and the Pareto-dominance relations shared by every other
// component. All problems are minimization; comparisons use exact IEEE double
// semantics (no epsilon fuzz) so that results are reproducible and match
// brute-force re-computation bit for bit.

namespace pbemo {

using Vec = std::vector<double>;

/// Malformed data handed to an operation (dimension mismatch, out-of-range
/// coordinate, empty input where a non-empty one is required).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid or unsupported configuration (unknown algorithm id, bad plan file,
/// unsupported parameter combination).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One evaluated individual: decision vector in [0,1]^n, its objective vector,
/// and the value of the evaluation counter when it was created.
struct Solution {
    Vec x;
    Vec f;
    std::uint64_t birth_eval = 0;
};

/// A reference point z plus the ROI radius r, both in objective space.
struct RoiSpec {
    Vec z;
    double r = 0.1;
};

inline void check_same_size(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) {
        throw input_error("vector length mismatch: " + std::to_string(a.size())
                          + " vs " + std::to_string(b.size()));
    }
}

/// a dominates b: a is no worse in every objective and strictly better in at
/// least one.
inline bool dominates(const Vec& a, const Vec& b)
{
    check_same_size(a, b);
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i])
            return false;
        if (a[i] < b[i])
            strictly_better = true;
    }
    return strictly_better;
}

/// a weakly dominates b: a is no worse in every objective.
inline bool weakly_dominates(const Vec& a, const Vec& b)
{
    check_same_size(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i])
            return false;
    }
    return true;
}

inline double euclid(const Vec& a, const Vec& b)
{
    check_same_size(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Per-dimension bounds of a set of vectors.
struct Bounds {
    Vec lo;
    Vec hi;
};

inline Bounds bounds_of(const std::vector<Vec>& set)
{
    if (set.empty())
        throw input_error("bounds_of: empty set");
    Bounds b{set.front(), set.front()};
    for (const Vec& v : set) {
        check_same_size(set.front(), v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < b.lo[i])
                b.lo[i] = v[i];
            if (v[i] > b.hi[i])
                b.hi[i] = v[i];
        }
    }
    return b;
}

/// Min-max normalizes one vector against precomputed bounds. A degenerate
/// dimension (hi == lo) maps to 0 so downstream distances stay finite.
inline Vec normalize_against(const Vec& v, const Bounds& b)
{
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double range = b.hi[i] - b.lo[i];
        out[i] = range > 0.0 ? (v[i] - b.lo[i]) / range : 0.0;
    }
    return out;
}

/// Per-dimension min-max normalization over F; output entries lie in [0,1].
inline std::vector<Vec> normalize_set(const std::vector<Vec>& F)
{
    if (F.size() < 2)
        throw input_error("normalize_set: need at least two vectors");
    const Bounds b = bounds_of(F);
    std::vector<Vec> out;
    out.reserve(F.size());
    for (const Vec& v : F)
        out.push_back(normalize_against(v, b));
    return out;
}

inline void validate_roi(const RoiSpec& roi, std::size_t m)
{
    if (roi.z.size() != m)
        throw config_error("reference point has " + std::to_string(roi.z.size())
                           + " entries, expected " + std::to_string(m));
    for (double zi : roi.z) {
        if (!std::isfinite(zi))
            throw config_error("reference point entries must be finite");
    }
    if (!(roi.r > 0.0))
        throw config_error("ROI radius must be positive");
}

} // namespace pbemo

#endif

#ifndef PBEMO_INDICATORS_HPP
#define PBEMO_INDICATORS_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "pbemo/core.hpp"

// IGD-family quality indicators and their ROI-restricted variants. The ROI
// restriction keeps only reference points strictly within radius r of the
// reference point's nearest neighbour on the sampled front.

namespace pbemo {

/// The dominance-aware distance used by IGD+: only objective excess counts.
inline double d_plus(const Vec& x, const Vec& s)
{
    check_same_size(x, s);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - s[i];
        if (d > 0.0)
            sum += d * d;
    }
    return std::sqrt(sum);
}

namespace detail {

template <typename Dist>
double igd_impl(const std::vector<Vec>& X, const std::vector<Vec>& S, Dist&& dist)
{
    if (X.empty() || S.empty())
        throw input_error("igd: X and S must be non-empty");
    double total = 0.0;
    for (const Vec& s : S) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& x : X) {
            const double d = dist(x, s);
            if (d < best)
                best = d;
        }
        total += best;
    }
    return total / static_cast<double>(S.size());
}

} // namespace detail

/// Average distance from each reference point in S to its nearest member of X.
inline double igd(const std::vector<Vec>& X, const std::vector<Vec>& S)
{
    return detail::igd_impl(X, S, [](const Vec& x, const Vec& s) { return euclid(x, s); });
}

inline double igd_plus(const std::vector<Vec>& X, const std::vector<Vec>& S)
{
    return detail::igd_impl(X, S, [](const Vec& x, const Vec& s) { return d_plus(x, s); });
}

/// The ROI restriction of a reference set: the point closest to z and every
/// reference point strictly within radius r of it.
struct RoiRefSubset {
    Vec s_c;
    std::vector<Vec> points;
};

inline RoiRefSubset roi_ref_subset(const std::vector<Vec>& S, const RoiSpec& roi)
{
    if (S.empty())
        throw input_error("roi_ref_subset: empty reference set");
    validate_roi(roi, S.front().size());
    std::size_t best = 0;
    double best_dist = euclid(S.front(), roi.z);
    for (std::size_t i = 1; i < S.size(); ++i) {
        const double d = euclid(S[i], roi.z);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    RoiRefSubset out;
    out.s_c = S[best];
    for (const Vec& s : S) {
        if (euclid(s, out.s_c) < roi.r)
            out.points.push_back(s);
    }
    return out;
}

inline double igd_c(const std::vector<Vec>& X, const std::vector<Vec>& S, const RoiSpec& roi)
{
    const RoiRefSubset sub = roi_ref_subset(S, roi);
    if (sub.points.empty())
        throw config_error("igd_c: reference set too sparse for radius r");
    return igd(X, sub.points);
}

inline double igd_plus_c(const std::vector<Vec>& X, const std::vector<Vec>& S, const RoiSpec& roi)
{
    const RoiRefSubset sub = roi_ref_subset(S, roi);
    if (sub.points.empty())
        throw config_error("igd_plus_c: reference set too sparse for radius r");
    return igd_plus(X, sub.points);
}

} // namespace pbemo

#endif

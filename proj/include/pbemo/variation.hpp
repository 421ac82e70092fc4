#ifndef PBEMO_VARIATION_HPP
#define PBEMO_VARIATION_HPP

#include <cmath>
#include <utility>

#include "pbemo/core.hpp"
#include "pbemo/rng.hpp"

// Real-coded variation on [0,1]^n: simulated binary crossover and polynomial
// mutation in the classic bounded formulation, with final clipping.

namespace pbemo {

constexpr double kSbxEta = 20.0;
constexpr double kSbxProb = 1.0;
constexpr double kPmEta = 20.0;

namespace detail {
inline double clip01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
} // namespace detail

/// Simulated binary crossover. Identical parents produce identical children.
inline std::pair<Vec, Vec> sbx_crossover(const Vec& p1, const Vec& p2, double eta_c, Rng& rng,
                                         double pc = kSbxProb)
{
    check_same_size(p1, p2);
    Vec c1 = p1;
    Vec c2 = p2;
    if (rng.uniform() > pc)
        return {std::move(c1), std::move(c2)};

    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.uniform() > 0.5)
            continue;
        double y1 = p1[i];
        double y2 = p2[i];
        if (std::fabs(y1 - y2) <= 1e-14)
            continue;
        if (y1 > y2)
            std::swap(y1, y2);
        const double yl = 0.0;
        const double yu = 1.0;
        const double u = rng.uniform();

        double beta = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
        double alpha = 2.0 - std::pow(beta, -(eta_c + 1.0));
        double betaq = u <= 1.0 / alpha
                           ? std::pow(u * alpha, 1.0 / (eta_c + 1.0))
                           : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta_c + 1.0));
        double a = 0.5 * (y1 + y2 - betaq * (y2 - y1));

        beta = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
        alpha = 2.0 - std::pow(beta, -(eta_c + 1.0));
        betaq = u <= 1.0 / alpha
                    ? std::pow(u * alpha, 1.0 / (eta_c + 1.0))
                    : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta_c + 1.0));
        double b = 0.5 * (y1 + y2 + betaq * (y2 - y1));

        a = detail::clip01(a);
        b = detail::clip01(b);
        if (rng.uniform() <= 0.5)
            std::swap(a, b);
        c1[i] = a;
        c2[i] = b;
    }
    return {std::move(c1), std::move(c2)};
}

/// Polynomial mutation; each variable mutates with probability pm.
inline Vec poly_mutation(const Vec& c, double eta_m, double pm, Rng& rng)
{
    Vec out = c;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.uniform() >= pm)
            continue;
        const double y = out[i];
        const double delta1 = y;
        const double delta2 = 1.0 - y;
        const double u = rng.uniform();
        const double mut_pow = 1.0 / (eta_m + 1.0);
        double deltaq;
        if (u <= 0.5) {
            const double xy = 1.0 - delta1;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            const double xy = 1.0 - delta2;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        out[i] = detail::clip01(y + deltaq);
    }
    return out;
}

} // namespace pbemo

#endif

#ifndef PBEMO_RNG_HPP
#define PBEMO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

// Seeded randomness with a fixed stream-splitting discipline. Each run owns
// one logical seed; sub-streams are derived with splitmix64 so that adding a
// consumer to one stream never perturbs the others:
//
//   stream 0 "init"      - initial population sampling
//   stream 1 "variation" - crossover and mutation draws
//   stream 2 "selection" - mating selection and subset-selection draws
//
// All variates are produced from raw mt19937_64 words (the engine's output
// sequence is fixed by the standard); std::uniform_* distributions are
// avoided because their draw counts are implementation-defined.

namespace pbemo {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent sub-seed from (seed, tag).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(tag * 0x9e3779b97f4a7c15ULL + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_word() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1].
    double uniform_pos()
    {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, unbiased.
    std::size_t below(std::size_t n)
    {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = engine_();
        while (v >= limit)
            v = engine_();
        return static_cast<std::size_t>(v % bound);
    }

    /// Standard normal via Box-Muller (two uniforms per variate, no caching).
    double normal()
    {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 engine_;
};

namespace rng_stream {
constexpr std::uint64_t init = 0;
constexpr std::uint64_t variation = 1;
constexpr std::uint64_t selection = 2;
} // namespace rng_stream

} // namespace pbemo

#endif

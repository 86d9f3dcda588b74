#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

// Deterministic, seedable random number generation.
//
// All randomized results in this library are reproducible from a 64-bit
// seed. The generator is xoshiro256** (Blackman/Vigna), seeded through
// the splitmix64 finalizer, so results can be replayed by independent
// re-implementations:
//
//   splitmix64(state): state += 0x9E3779B97F4A7C15;
//                      z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//                      z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//                      return z ^ (z >> 31)
//
//   xoshiro256** state: four consecutive splitmix64 outputs.
//
// Independent sub-streams (per trial, per matrix row, ...) are derived with
// derive_stream(master, index) below, never by reusing a raw counter as a
// seed.

namespace scorecmp {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state = 0;
    constexpr std::uint64_t next() {
        state += kGolden64;
        return splitmix64_mix(state);
    }
};

// Seed for an independent sub-stream. Results must not depend on the order
// in which sub-streams are consumed, so parallel or restarted runs agree.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t stream) {
    return splitmix64_mix(master + kGolden64 * (stream + 1));
}

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden64;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53 significant bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe as a log() argument
    double next_open() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // unbiased integer in [0, bound), Lemire's method
    std::uint64_t next_below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // standard normal, Box-Muller; consumes exactly two uniforms per call
    double next_normal() {
        const double r = std::sqrt(-2.0 * std::log(next_open()));
        return r * std::cos(6.283185307179586476925287 * next_double());
    }

    // Exact binomial draw. Sequential CDF inversion, with a complement flip
    // for p > 1/2 and a halving split whenever n*log(1-p) would leave the
    // range where the running pmf is representable.
    std::int64_t next_binomial(std::int64_t n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        if (p > 0.5) return n - next_binomial(n, 1.0 - p);
        const double log_q = std::log1p(-p);
        if (static_cast<double>(n) * -log_q > 600.0) {
            const std::int64_t half = n / 2;
            return next_binomial(half, p) + next_binomial(n - half, p);
        }
        double pmf = std::exp(static_cast<double>(n) * log_q);
        double cdf = pmf;
        const double ratio = p / (1.0 - p);
        const double u = next_double();
        std::int64_t k = 0;
        while (u > cdf && k < n) {
            ++k;
            pmf *= static_cast<double>(n - k + 1) / static_cast<double>(k) * ratio;
            cdf += pmf;
        }
        return k;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace scorecmp

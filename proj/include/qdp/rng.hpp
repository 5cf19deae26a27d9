#pragma once

#include <cstdint>

namespace qdp {

// SplitMix64. Small, fast, and identical on every platform, which is what we
// need for byte-reproducible experiment outputs (std::uniform_int_distribution
// is implementation-defined).
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, m) by rejection, exact for any m > 0.
    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % m;
    }

    // Uniform double in [0, 1).
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Counter-based seed split: child streams of a master seed are derived by
// hashing (master, index) so that trials can be farmed out to workers in any
// order while the per-trial randomness stays fixed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xD1B54A32D192ED03ull * (index + 1)));
    g.next();
    return g.next();
}

}  // namespace qdp

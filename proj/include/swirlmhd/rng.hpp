#pragma once

#include <cstdint>

namespace swirlmhd {

/// SplitMix64: 64-bit-state portable generator (Steele, Lea, Flood 2014).
/// state' = state + 0x9E3779B97F4A7C15; output mixes the new state through
/// two xor-shift-multiply rounds. Identical sequences on every platform for
/// a given seed, which keeps generated corpora and reports byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace swirlmhd

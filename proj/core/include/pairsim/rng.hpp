#pragma once

#include <cstdint>
#include <random>

namespace pairsim {

/// Seeded random source. Identical (seed, stream) pairs reproduce the same
/// sequence on every platform; split() derives statistically independent
/// streams from the same base seed so parallel work stays reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t next() { return gen_(); }

    Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
    }

    std::uint64_t seed() const { return seed_; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace pairsim

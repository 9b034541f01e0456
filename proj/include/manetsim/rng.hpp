#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace manetsim {

/// Deterministic random stream. Every consumer of randomness in a run
/// gets its own stream keyed by (scenario seed, purpose, index), so the
/// draws of one subsystem never shift another subsystem's sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(purpose),
                          static_cast<std::uint32_t>(index)};
        engine_.seed(seq);
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Inverse-CDF exponential sample with the given mean.
    double exponential(double mean) {
        if (mean <= 0.0) {
            throw std::invalid_argument("exponential mean must be positive");
        }
        return -mean * std::log1p(-uniform());
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint8_t byte() { return static_cast<std::uint8_t>(engine_() & 0xff); }

private:
    std::mt19937_64 engine_;
};

/// Stream purposes. Fixed tags keep seed derivation stable across runs.
namespace rng_purpose {
inline constexpr std::uint64_t placement = 1;
inline constexpr std::uint64_t secrets = 2;
inline constexpr std::uint64_t traffic = 3;
inline constexpr std::uint64_t gray_drops = 4;
}  // namespace rng_purpose

}  // namespace manetsim

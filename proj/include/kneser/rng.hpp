#pragma once

#include <cstdint>

namespace kneser {

// Counter-based randomness: every draw is a pure function of (seed, key).

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(splitmix64(seed) ^ splitmix64(key ^ 0x6a09e667f3bcc909ULL));
}

/// Per-task seed, e.g. per Monte Carlo trial.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return mix_key(seed, index); }

/// Uniform in [0,1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t key) {
    return static_cast<double>(mix_key(seed, key) >> 11) * 0x1.0p-53;
}

/// Small sequential generator for test drivers and random colorings.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_++); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // rejection keeps the draw unbiased
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do x = next(); while (x >= limit);
        return x % bound;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace kneser

#pragma once

#include <cstdint>

namespace cardsort {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 +
// distributions because the standard distributions are not bit-stable across
// standard library implementations, and report determinism is a contract.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Per-iteration substream: the seed xor the iteration index, pushed through
// the generator's own mixing so adjacent indices decorrelate.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ index);
    return SplitMix64(mixer.next_u64());
}

}  // namespace cardsort

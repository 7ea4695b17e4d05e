#pragma once

// Counter-based deterministic generator (splitmix64). The randomized code
// constructions take an explicit seed; identical seeds reproduce identical
// draws on every platform. No global randomness anywhere.

#include <cstdint>

namespace gsc {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw in [0, bound); bound < 2^31 keeps the modulo bias
    // below 2^-33.
    std::uint32_t below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(next() % bound);
    }

private:
    std::uint64_t state_;
};

}  // namespace gsc

#pragma once

#include <cstdint>

namespace npairs {

// splitmix64: 64-bit-state PRNG, seed-reproducible across platforms.
// Constants from the reference implementation (Steele, Lea, Flood 2014).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0. Rejection-free modulo is fine here:
    // the bias is < bound / 2^64 and these draws feed test generators only.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Fork an independent stream, e.g. one per source in a simulation.
    SplitMix64 fork(std::uint64_t salt) {
        SplitMix64 s(state ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
        s.next();
        return s;
    }
};

}  // namespace npairs

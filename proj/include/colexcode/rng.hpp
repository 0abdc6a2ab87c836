#pragma once

#include <array>
#include <cstdint>

namespace colexcode::rng {

// Recorded in every Monte Carlo report so runs can be reproduced elsewhere.
inline constexpr const char* kRngId = "xoshiro256ss-splitmix64";

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Deterministic per-stream seed derivation; stream 0 is the base seed itself
// hashed, so distinct (seed, stream) pairs give independent generators.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm{seed ^ (0x632be59bd9b4e019ULL * (stream + 1))};
    return sm.next();
}

struct Xoshiro256ss {
    std::array<std::uint64_t, 4> s;

    static Xoshiro256ss seeded(std::uint64_t seed) {
        SplitMix64 sm{seed};
        return Xoshiro256ss{{sm.next(), sm.next(), sm.next(), sm.next()}};
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // 53-bit mantissa uniform in [0, 1); bit-stable across platforms.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }
};

}  // namespace colexcode::rng

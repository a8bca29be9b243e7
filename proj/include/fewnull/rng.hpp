#pragma once

#include <cstdint>

namespace fewnull {

/// Seedable, portable random generator: xoshiro256** state initialized with
/// SplitMix64. Identical seeds give identical streams on every platform.
///
/// Stream-splitting rule used throughout the project: parallel trial t of an
/// experiment with master seed s draws from Rng(s ^ Rng::mix(t)), so results
/// do not depend on scheduling order. Sweeps over several n derive a
/// per-point seed the same way before splitting into trials.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix_next(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Unbiased integer in [0, bound); bound must be positive.
    uint64_t below(uint64_t bound) {
        // Rejection sampling over the largest multiple of bound.
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % bound;
        }
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double prob) {
        if (prob <= 0.0) return false;
        if (prob >= 1.0) return true;
        return unit_double() < prob;
    }

    /// SplitMix64 finalizer, used as the stream-splitting hash.
    static uint64_t mix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static Rng for_trial(uint64_t seed, uint64_t trial) { return Rng(seed ^ mix(trial)); }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static uint64_t splitmix_next(uint64_t& s) {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t state_[4];
};

}  // namespace fewnull

#pragma once

#include <cstdint>
#include <random>

namespace cliffdec {

// Seedable, splittable randomness. Every experiment takes a master seed;
// per-trial streams are derived from (master seed, trial index) so trials are
// reproducible in isolation and insensitive to execution order.
//
// mt19937_64 has a standard-specified output sequence, and all bounded /
// floating draws below are implemented by hand, so identical seeds produce
// identical streams on any conforming platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(mix(seed)) {}

    static Rng for_trial(uint64_t master_seed, uint64_t trial_index) {
        return Rng(mix(master_seed) ^ mix(0x9e3779b97f4a7c15ull * (trial_index + 1)));
    }

    uint64_t next_u64() { return engine_(); }

    // uniform on [0, bound), bound >= 1; rejection keeps it exactly uniform
    uint64_t next_below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool() { return next_u64() >> 63; }

    // uniform on [0, 1) with 53 random bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

private:
    // splitmix64 finalizer; decorrelates small/sequential seeds
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace cliffdec

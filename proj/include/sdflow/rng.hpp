// Counter-based 64-bit generator (splitmix64): output k is a pure function of
// seed and k, so streams are reproducible across languages.
#ifndef SDFLOW_RNG_HPP
#define SDFLOW_RNG_HPP

#include <cstdint>

namespace sdflow {

struct SplitMix64 {
    uint64_t counter = 0;
    uint64_t seed = 0;

    explicit SplitMix64(uint64_t s) : seed(s) {}

    uint64_t next_u64() {
        uint64_t z = seed + (++counter) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in [-1,1)
    double next_signed() { return 2.0 * next_double() - 1.0; }
};

}  // namespace sdflow

#endif

#pragma once

#include <cstdint>

namespace weylab {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based stream: value i of stream `seed` is a pure function of
// (seed, i), so parallel consumers can draw in any order and still agree.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x9E3779B97F4A7C15ull));
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_unit(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_u64(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace weylab

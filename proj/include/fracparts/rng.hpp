#pragma once

// Counter-based seedable generator with splittable streams.  Every draw is a
// pure function of (seed, stream, counter), so chunked parallel sampling is
// bitwise reproducible regardless of thread count.

#include <cmath>
#include <cstdint>

namespace fracparts {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct CounterRng {
    std::uint64_t key = 0;
    std::uint64_t ctr = 0;

    // stafford mix13 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    explicit CounterRng(std::uint64_t seed = kDefaultSeed, std::uint64_t stream = 0)
        : key(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream * 0xD1B54A32D192ED03ull + 1)) {}

    std::uint64_t next_u64() { return mix(key + (++ctr) * 0x9E3779B97F4A7C15ull); }

    // uniform on [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller (one value per call, second discarded)
    double next_gaussian() {
        double u1 = next_unit();
        double u2 = next_unit();
        while (u1 == 0.0) u1 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }
};

}  // namespace fracparts

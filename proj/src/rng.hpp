#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace harmlens {

// Deterministic cross-platform generator; std::mt19937 distributions are
// not bit-stable across standard library implementations.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    // Standard complex normal via Box-Muller; real and imaginary parts are
    // independent N(0, 1/2) so E|Z|^2 = 1.
    std::complex<double> complex_normal() {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        const double radius = std::sqrt(-std::log(u));
        const double angle = 2.0 * std::numbers::pi * uniform01();
        return std::polar(radius, angle);
    }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    SplitMix64 rng(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL));
    return rng.next();
}

}  // namespace harmlens

// Seeded random number generation with explicit streams.
//
// All sampling in the library goes through Rng so that results are
// reproducible bit-for-bit: the engine is std::mt19937_64 (fully specified
// by the standard) and the distribution transforms are implemented here by
// inversion / Box-Muller instead of relying on unspecified std::*_distribution
// algorithms. Parallel work derives one stream per task index from
// (seed, index) so serial and threaded runs agree exactly.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace nfvsim {

// SplitMix64 mixing step; used to decorrelate derived stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate (inversion; never returns inf).
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    // Standard normal pair via Box-Muller; consumes exactly two uniforms.
    void normal_pair(double& z0, double& z1) {
        double u = uniform01();
        double v = uniform01();
        // Avoid log(0): shift u into (0, 1].
        double r = std::sqrt(-2.0 * std::log1p(-u));
        double theta = 6.283185307179586476925286766559 * v;
        z0 = r * std::cos(theta);
        z1 = r * std::sin(theta);
    }

    void fill_normal(std::span<double> out, double stddev) {
        std::size_t i = 0;
        double z0, z1;
        for (; i + 1 < out.size(); i += 2) {
            normal_pair(z0, z1);
            out[i] = z0 * stddev;
            out[i + 1] = z1 * stddev;
        }
        if (i < out.size()) {
            normal_pair(z0, z1);
            out[i] = z0 * stddev;
        }
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace nfvsim

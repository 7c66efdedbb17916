#ifndef BYZGD_RNG_HPP
#define BYZGD_RNG_HPP

#include <cstdint>
#include <random>

#include "byzgd/vec.hpp"

namespace byzgd {

// Mixes key components into a single 64-bit state (splitmix64 finalizer).
// Every random draw in the project is keyed by (seed, stream ids...) so
// results are reproducible under any parallel execution schedule.
uint64_t mix_key(uint64_t a, uint64_t b = 0x9e3779b97f4a7c15ull,
                 uint64_t c = 0x2545f4914f6cdd1dull, uint64_t e = 0);

// One independent random stream. Draws uniforms from a mt19937_64 seeded by
// the mixed key; normals go through the inverse normal CDF so the project has
// a single, auditable normal-generation pathway.
class RngStream {
public:
    explicit RngStream(uint64_t key) : gen_(key) {}
    RngStream(uint64_t seed, uint64_t s1, uint64_t s2 = 0, uint64_t s3 = 0)
        : gen_(mix_key(seed, s1 ^ 0x9e3779b97f4a7c15ull,
                       s2 ^ 0x2545f4914f6cdd1dull, s3)) {}

    // Uniform on the open interval (0, 1).
    double uniform() {
        uint64_t bits = gen_() >> 11; // 53 random bits
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    double normal(); // standard normal via inverse CDF (see robust_stats)

    double rademacher() { return (gen_() & 1) ? 1.0 : -1.0; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return std::uniform_int_distribution<uint64_t>(0, n - 1)(gen_);
    }

    Vector normal_vector(std::size_t d) {
        Vector v(d);
        for (auto& x : v) x = normal();
        return v;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace byzgd

#endif

#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

#include "zelab/errors.hpp"

namespace zelab {

// splitmix64 finalizer.  Used both as the seed-derivation hash and to expand
// a user seed before it reaches the engine, so that small consecutive seeds
// still give unrelated streams.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives a child seed from a master seed and a path of integer tags
// (module id, round, column, ...).  Deterministic and order-sensitive:
// derive_seed(s, {1, 2}) != derive_seed(s, {2, 1}).
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t tag : path) s = mix64(s ^ mix64(tag));
    return s;
}

// Fixed per-module stream ids, so different modules seeded from the same
// master seed never share a stream.
namespace stream {
inline constexpr std::uint64_t construct = 1;
inline constexpr std::uint64_t coupon = 2;
inline constexpr std::uint64_t sampler = 3;
inline constexpr std::uint64_t adversary = 4;
} // namespace stream

// mt19937_64 wrapper with explicit, implementation-independent sampling.
// std::uniform_int_distribution and friends are avoided on purpose: their
// output is unspecified across standard libraries, and transcripts must be
// reproducible byte for byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    // Uniform draw from [0, n).  Rejection sampling over the top of the
    // 64-bit range keeps it exactly uniform.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw DomainError("Rng::below: n must be positive");
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace zelab

#pragma once

#include <cstdint>
#include <random>

namespace cop {

/// splitmix64 step, used to derive independent substream seeds from one
/// user-facing 64-bit seed. Standard constants from Steele et al.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives the seed of substream `index` from `seed` by iterating splitmix64.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/**
 * Seeded random stream over std::mt19937_64.
 *
 * The engine's output sequence is pinned by the C++ standard, and all
 * variates are produced by inverse-CDF transforms (no distribution objects),
 * so a (seed, call sequence) pair reproduces the stream exactly.
 */
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0,1): ((x >> 11) + 0.5) * 2^-53.
    double uniform01();

    /// Standard normal via the AS 241 inverse CDF.
    double normal();

    /// Student-t with 2 degrees of freedom, closed-form inverse CDF.
    double student_t2();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace cop

#include "cop/rng.hpp"

#include "cop/normal.hpp"

namespace cop {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t i = 0; i < index; ++i) {
        out = splitmix64(state);
    }
    return out;
}

double rng_stream::uniform01() {
    const std::uint64_t bits = engine_() >> 11; // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double rng_stream::normal() {
    return normal_quantile(uniform01());
}

double rng_stream::student_t2() {
    return student_t2_quantile(uniform01());
}

} // namespace cop

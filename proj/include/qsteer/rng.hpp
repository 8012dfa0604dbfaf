#pragma once

#include <cstdint>
#include <random>

namespace qsteer {

using Rng = std::mt19937_64;

// Independent stream for trajectory `index` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

// Uniform double in [0,1) built from the top 53 bits.
double uniform01(Rng& rng);

// Uniform integer in [0, n), rejection sampled so it does not depend on
// the standard library's distribution implementation.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace qsteer

#pragma once

// Seeded generators. The state path is integer-only and fully specified
// by the C++ standard, so a (value, stream) pair gives the same draws on
// every platform.

#include <cstdint>
#include <random>

namespace necktie::rng {

struct Seed {
    std::uint64_t value = 0xC0FFEE;
    std::uint32_t stream = 0;
};

using Engine = std::mt19937_64;

/// Engine seeded through seed_seq{value lo, value hi, stream}.
Engine make_engine(Seed seed);

/// Uniform on (0, 1], never 0, built from the top 53 bits of one draw.
double uniform_open0(Engine& eng);

/// Unit exponential by inversion of uniform_open0.
double exponential(Engine& eng);

}  // namespace necktie::rng

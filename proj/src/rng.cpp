#include "necktie/rng.hpp"

#include <cmath>

namespace necktie::rng {

Engine make_engine(Seed seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed.value & 0xFFFFFFFFu),
                      static_cast<std::uint32_t>(seed.value >> 32), seed.stream};
    return Engine(seq);
}

double uniform_open0(Engine& eng) {
    // (k + 1) 2^-53 with k uniform on [0, 2^53).
    return std::ldexp(static_cast<double>((eng() >> 11) + 1), -53);
}

double exponential(Engine& eng) { return -std::log(uniform_open0(eng)); }

}  // namespace necktie::rng

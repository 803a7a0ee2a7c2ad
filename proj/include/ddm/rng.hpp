#pragma once

#include <array>
#include <cstdint>

#include "ddm/matrix.hpp"

namespace ddm {

// Deterministic splittable RNG: splitmix64 seed expansion feeding
// xoshiro256++. Identical (seed, stream_id) always reproduces the same
// sequence; distinct stream_ids give independent streams, so parallel code
// derives one stream per unit of work instead of sharing state.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::array<std::uint64_t, 4> state{};

    std::uint64_t next_u64();

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit();
    // Uniform double in (0, 1]; never zero (safe under log).
    double next_unit_open();
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller; draws consumed in pairs.
    void fill_gaussian(double* dst, std::size_t count);
    double next_gaussian();
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_id);

// n x d matrix of i.i.d. standard normal entries. n, d >= 1.
Matrix gaussian(RngStream& rng, std::size_t n, std::size_t d);

}  // namespace ddm

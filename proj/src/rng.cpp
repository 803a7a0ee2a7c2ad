#include "ddm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddm {

namespace {

struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix64(std::uint64_t x) {
    SplitMix64 sm(x);
    return sm.next();
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) {
    RngStream r;
    r.seed = seed;
    r.stream_id = stream_id;
    // Hash (seed, stream_id) into the splitmix state so streams are
    // independent without coordination.
    SplitMix64 sm(seed ^ mix64(stream_id + 0x9E3779B97F4A7C15ULL));
    for (auto& w : r.state) w = sm.next();
    if ((r.state[0] | r.state[1] | r.state[2] | r.state[3]) == 0) r.state[0] = 1;
    return r;
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state[0] + state[3], 23) + state[0];
    const std::uint64_t t = state[1] << 17;
    state[2] ^= state[0];
    state[3] ^= state[1];
    state[1] ^= state[2];
    state[0] ^= state[3];
    state[2] ^= t;
    state[3] = rotl(state[3], 45);
    return result;
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

void RngStream::fill_gaussian(double* dst, std::size_t count) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < count; i += 2) {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        dst[i] = r * std::cos(two_pi * u2);
        if (i + 1 < count) dst[i + 1] = r * std::sin(two_pi * u2);
    }
}

double RngStream::next_gaussian() {
    double z;
    fill_gaussian(&z, 1);
    return z;
}

Matrix gaussian(RngStream& rng, std::size_t n, std::size_t d) {
    if (n < 1 || d < 1) throw std::invalid_argument("gaussian: n and d must be >= 1");
    Matrix m(n, d);
    rng.fill_gaussian(m.data.data(), m.size());
    return m;
}

}  // namespace ddm

#include "rsskl/rng.hpp"

#include <cmath>

namespace rsskl {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
    // splitmix64 sequence, the seeding recommended for xoshiro.
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s += kGolden;
        word = mix64(s);
    }
}

RandomStream RandomStream::substream(std::uint64_t master_seed, std::uint64_t index,
                                     std::uint64_t attempt) {
    std::uint64_t z = master_seed;
    z = mix64(z + kGolden * (index + 1));
    z = mix64(z + 0xD1B54A32D192ED03ull * (attempt + 1));
    return RandomStream(z);
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform01() {
    // 53 random bits, shifted off the open endpoints.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

}  // namespace rsskl

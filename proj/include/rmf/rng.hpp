#pragma once

#include <cstdint>

namespace rmf {

// Counter-based random draws: every value is a fixed 64-bit avalanche hash of
// the (seed, trial, key, subkey) tuple, so draws are reproducible and
// independent of evaluation order. There is no stream state to share or
// advance, which is what makes trial-parallel simulation coordination-free.
namespace rng {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t trial,
                             std::uint64_t key, std::uint64_t subkey = 0) noexcept {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (trial + 0xbf58476d1ce4e5b9ULL));
    h = mix64(h ^ (key + 0x94d049bb133111ebULL));
    h = mix64(h ^ (subkey + 0xd6e8feb86659fd93ULL));
    return h;
}

// +1 or -1 with equal probability.
constexpr int sign_draw(std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t key, std::uint64_t subkey = 0) noexcept {
    return (draw(seed, trial, key, subkey) >> 63) ? -1 : 1;
}

// Uniform on the open interval (0,1): a 53-bit lattice shifted by half a step,
// so 0 and 1 are never produced.
constexpr double uniform01(std::uint64_t seed, std::uint64_t trial,
                           std::uint64_t key, std::uint64_t subkey = 0) noexcept {
    const std::uint64_t bits = draw(seed, trial, key, subkey) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

}  // namespace rng
}  // namespace rmf

#pragma once

#include <array>
#include <cstdint>

namespace mwin::rng {

/// Philox4x32-10 block cipher: maps a 128-bit counter and
/// a 64-bit key to 128 pseudorandom bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Uniform in the open interval (0, 1) with 53 random bits, from block `index` under `seed`.
double uniform(std::uint64_t seed, std::uint64_t index);

/// Standard normal by inverse-CDF transform of uniform(seed, index):
/// z = −√2 · erfc⁻¹(2u).
double standard_normal(std::uint64_t seed, std::uint64_t index);

}  // namespace mwin::rng

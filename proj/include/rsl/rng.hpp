#pragma once

#include <array>
#include <cstdint>

namespace rsl {

// Philox 4x32-10 counter-based block cipher (Salmon et al. construction).
// Each (counter, key) pair maps to 128 independent pseudo-random bits, so
// draws are addressable: parallel evaluation order cannot change a stream.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// One standard normal draw addressed by (seed, sample_index, entry_index),
// bit-identical regardless of evaluation order or thread count.
double gaussian_at(std::uint64_t seed, std::uint64_t sample_index,
                   std::uint64_t entry_index);

// Uniform draw in [0, 1) with the same addressing.
double uniform_at(std::uint64_t seed, std::uint64_t sample_index,
                  std::uint64_t entry_index);

}  // namespace rsl

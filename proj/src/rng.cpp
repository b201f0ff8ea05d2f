#include "rsl/rng.hpp"

#include <cmath>
#include <numbers>

namespace rsl {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& c,
                                               const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> c = counter;
  std::array<std::uint32_t, 2> k = key;
  c = round_once(c, k);
  for (int round = 1; round < 10; ++round) {
    k[0] += kWeyl0;
    k[1] += kWeyl1;
    c = round_once(c, k);
  }
  return c;
}

namespace {

inline std::array<std::uint32_t, 4> block_at(std::uint64_t seed,
                                             std::uint64_t sample_index,
                                             std::uint64_t entry_index) {
  std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(entry_index),
      static_cast<std::uint32_t>(entry_index >> 32),
      static_cast<std::uint32_t>(sample_index),
      static_cast<std::uint32_t>(sample_index >> 32),
  };
  std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed),
      static_cast<std::uint32_t>(seed >> 32),
  };
  return philox4x32(counter, key);
}

}  // namespace

double uniform_at(std::uint64_t seed, std::uint64_t sample_index,
                  std::uint64_t entry_index) {
  std::array<std::uint32_t, 4> x = block_at(seed, sample_index, entry_index);
  std::uint64_t bits = (static_cast<std::uint64_t>(x[1]) << 32) | x[0];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double gaussian_at(std::uint64_t seed, std::uint64_t sample_index,
                   std::uint64_t entry_index) {
  std::array<std::uint32_t, 4> x = block_at(seed, sample_index, entry_index);
  std::uint64_t a = (static_cast<std::uint64_t>(x[1]) << 32) | x[0];
  std::uint64_t b = (static_cast<std::uint64_t>(x[3]) << 32) | x[2];
  // u1 in (0, 1] so the log is finite; u2 in [0, 1).
  double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
  double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rsl

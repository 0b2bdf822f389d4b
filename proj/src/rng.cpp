// SPDX-License-Identifier: Apache-2.0

#include "riscov/rng.hpp"

#include <cmath>

namespace riscov {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t& c0, std::uint32_t& c1, std::uint32_t& c2,
                       std::uint32_t& c3, std::uint32_t k0, std::uint32_t k1) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
  std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
  std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
  std::uint32_t n1 = static_cast<std::uint32_t>(p1);
  std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
  std::uint32_t n3 = static_cast<std::uint32_t>(p0);
  c0 = n0; c1 = n1; c2 = n2; c3 = n3;
}
}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::uint64_t key, std::uint32_t c0,
                                           std::uint32_t c1, std::uint32_t c2,
                                           std::uint32_t c3) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  round_once(c0, c1, c2, c3, k0, k1);
  for (int i = 1; i < 10; ++i) {
    k0 += kWeyl0;
    k1 += kWeyl1;
    round_once(c0, c1, c2, c3, k0, k1);
  }
  return {c0, c1, c2, c3};
}

std::uint64_t uniform_u64(std::uint64_t key, std::uint32_t c0, std::uint32_t c1,
                          std::uint32_t c2, std::uint32_t c3) {
  auto x = philox4x32_10(key, c0, c1, c2, c3);
  return (static_cast<std::uint64_t>(x[1]) << 32) | x[0];
}

std::complex<double> standard_complex_normal(std::uint64_t seed, std::uint32_t slot,
                                             std::uint32_t trial, std::uint32_t link) {
  auto x = philox4x32_10(seed, slot, trial, link, 0);
  std::uint64_t a = (static_cast<std::uint64_t>(x[1]) << 32) | x[0];
  std::uint64_t b = (static_cast<std::uint64_t>(x[3]) << 32) | x[2];
  // u1 in (0,1] keeps the log finite; u2 in [0,1).
  double u1 = (a == ~0ULL) ? 1.0 : std::ldexp(static_cast<double>(a + 1), -64);
  double u2 = std::ldexp(static_cast<double>(b), -64);
  double r = std::sqrt(-std::log(u1));
  double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

std::uint64_t mix_u64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random number generation (Philox-4x32, 10 rounds).
// Every draw is a pure function of (key, counter), so simulation results do
// not depend on evaluation order or thread count. Channel sampling uses the
// counter layout (slot, trial, link, 0) under the master seed; auxiliary
// streams (e.g. random phase baselines) derive a distinct key from the same
// seed so they never collide with channel draws.

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace riscov {

// One 128-bit Philox-4x32-10 block. Matches the reference test vectors of
// the original counter-based generator publication.
std::array<std::uint32_t, 4> philox4x32_10(std::uint64_t key, std::uint32_t c0,
                                           std::uint32_t c1, std::uint32_t c2,
                                           std::uint32_t c3);

// First/second 64-bit halves of a block, assembled little-end first.
std::uint64_t uniform_u64(std::uint64_t key, std::uint32_t c0, std::uint32_t c1,
                          std::uint32_t c2, std::uint32_t c3);

// Standard circularly-symmetric complex Gaussian (unit total variance,
// i.e. each component has variance 1/2), one block per draw:
//   u1 in (0,1], u2 in [0,1),  w = sqrt(-ln u1) * exp(i*2*pi*u2).
std::complex<double> standard_complex_normal(std::uint64_t seed, std::uint32_t slot,
                                             std::uint32_t trial, std::uint32_t link);

// Key for auxiliary streams that must not collide with channel sampling.
inline std::uint64_t auxiliary_key(std::uint64_t seed) {
  return seed ^ 0x9E3779B97F4A7C15ULL;
}

// 64-bit integer hash (splitmix64 finalizer); used to derive per-point seeds.
std::uint64_t mix_u64(std::uint64_t x);

}  // namespace riscov

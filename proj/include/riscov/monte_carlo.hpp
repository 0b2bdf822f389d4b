// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo estimation of coverage and of the equivalent-channel moments.
// Trials are counter-based (one Philox counter per (slot, trial, link)), so a
// given (seed, slot, trial) always yields the same channel draw no matter how
// trials are batched. Accumulation is split into fixed 65536-trial chunks and
// the per-chunk partial sums are combined in chunk order, which makes every
// estimate bit-identical across worker counts.

#pragma once

#include <cstdint>
#include <span>

#include "riscov/channel.hpp"
#include "riscov/coverage.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

// One trial of the equivalent channel, bit-identical to
// effective_channel(sample_link_realization(...), phases) but with all
// per-link deterministic factors hoisted out of the trial loop.
cdouble simulate_channel(const ScenarioConfig& cfg, const ChannelParams& params,
                         int slot, std::uint64_t trial, std::uint64_t seed,
                         std::span<const double> phases_rad);

struct CoverageEstimate {
  double coverage{0.0};
  double std_error{0.0};  // sqrt(p*(1-p)/trials)
  std::uint64_t successes{0};
  std::uint64_t trials{0};
};

// Fraction of trials with SNR >= threshold. `workers` <= 0 selects the
// hardware concurrency; the result does not depend on the choice.
CoverageEstimate empirical_coverage(const ScenarioConfig& cfg,
                                    const ChannelParams& params, int slot,
                                    std::span<const double> phases_rad,
                                    const CoverageQuery& query, std::uint64_t seed,
                                    std::uint64_t trials, int workers = 0);

struct MomentEstimate {
  cdouble mean{0.0, 0.0};
  double variance{0.0};           // unbiased, both quadratures combined
  double mean_std_error{0.0};     // per quadrature: sqrt(variance / (2*trials))
  double variance_std_error{0.0}; // variance / sqrt(trials)
  std::uint64_t trials{0};
};

// Sample mean and scatter variance of the equivalent channel.
MomentEstimate empirical_channel_moments(const ScenarioConfig& cfg,
                                         const ChannelParams& params, int slot,
                                         std::span<const double> phases_rad,
                                         std::uint64_t seed, std::uint64_t trials,
                                         int workers = 0);

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0
//
// Closed-form statistics of the combined (direct + reflected) channel and the
// resulting coverage probability.
//
// With per-link Rician mixing, the combined channel splits into a
// deterministic mean and a zero-mean fluctuation:
//   mean    = rho_d*losd + sum_n rho_r*rho_g*losr_n*losg_n*e^{j*theta_n}
//   variance= varrho_d^2*Bd + sum_n [ rho_r^2*varrho_g^2*Ar_n*Bg_n
//                                   + varrho_r^2*rho_g^2*Br_n*Ag_n
//                                   + varrho_r^2*varrho_g^2*Br_n*Bg_n ]
// where A = d^-eps (line-of-sight power) and B = d^-eps_nlos (scattered
// power) for each hop. The three bracketed pieces are the LoS x scattered,
// scattered x LoS and scattered x scattered parts of each reflected product;
// all three are zero-mean and mutually uncorrelated, so their powers add.
// The variance does not depend on the applied phases.
//
// Treating the fluctuation as complex Gaussian, |h|^2 follows a noncentral
// chi-square law, and two tail models are exposed:
//   paper_nu1:   one degree of freedom,  P_cov = Q_{1/2}(sqrt(z), sqrt(g0))
//   complex_nu2: two degrees of freedom, P_cov = Q_1(sqrt(2z), sqrt(2g0))
// with z = |mean|^2/variance, g0 = threshold/(snr_gain*variance),
// snr_gain = power/noise. Both are reported everywhere; the Monte Carlo
// oracle adjudicates which one matches the sampled channel.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

enum class DofVariant { paper_nu1, complex_nu2 };

struct CoverageQuery {
  double power_w{1e-3};            // transmit power
  double noise_w{7.9621434110699450e-13};  // thermal noise over the default bandwidth
  double snr_threshold{1e5};       // linear SNR threshold
  DofVariant dof{DofVariant::complex_nu2};
};

std::vector<std::string> validate_query(const CoverageQuery& q);

struct EquivalentChannelStats {
  cdouble mean{0.0, 0.0};
  double variance{0.0};
  double noncentrality{0.0};  // |mean|^2 / variance; +inf when variance == 0
};

// Deterministic per-element factors of the mean: mean = direct +
// sum_n cascade[n] * e^{j*phases[n]}. Used by the optimizer to re-evaluate
// candidate phases in O(1) per element.
struct MeanComponents {
  cdouble direct{0.0, 0.0};
  std::vector<cdouble> cascade;
};
MeanComponents mean_components(const ScenarioConfig& cfg, const ChannelParams& params,
                               int slot);

cdouble equivalent_mean(const ScenarioConfig& cfg, const ChannelParams& params,
                        int slot, std::span<const double> phases_rad);
double equivalent_variance(const ScenarioConfig& cfg, const ChannelParams& params,
                           int slot);
EquivalentChannelStats channel_stats(const ScenarioConfig& cfg,
                                     const ChannelParams& params, int slot,
                                     std::span<const double> phases_rad);

// |mean|^2 / variance. Throws std::domain_error when variance == 0.
double noncentrality(const EquivalentChannelStats& stats);

// Coverage probability for the requested tail model. When the variance is
// exactly zero (every link pure LoS) the channel is deterministic and the
// result is the indicator of snr >= threshold; `degenerate`, when non-null,
// reports that this branch was taken.
double coverage_from_stats(const EquivalentChannelStats& stats,
                           const CoverageQuery& query, bool* degenerate = nullptr);
double coverage_probability(const ScenarioConfig& cfg, const ChannelParams& params,
                            int slot, std::span<const double> phases_rad,
                            const CoverageQuery& query, bool* degenerate = nullptr);
// Exactly 1 - coverage_probability.
double outage_probability(const ScenarioConfig& cfg, const ChannelParams& params,
                          int slot, std::span<const double> phases_rad,
                          const CoverageQuery& query);

}  // namespace riscov

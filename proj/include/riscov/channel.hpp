// SPDX-License-Identifier: Apache-2.0
//
// Rician link model. Every link (direct BS->MR, per-element BS->surface and
// surface->MR) is
//     h = rho * sqrt(d^-eps) * e^{-j*theta_los}  +  varrho * sqrt(d^-eps_nlos) * w
// with rho = sqrt(kappa/(kappa+1)), varrho = sqrt(1/(kappa+1)), w a standard
// circularly-symmetric complex Gaussian, and theta_los = 2*pi*d/lambda mod 2*pi.
// The scattered term reuses the line-of-sight distance; only the exponent
// differs.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riscov/geometry.hpp"

namespace riscov {

using cdouble = std::complex<double>;

struct ChannelParams {
  // Rician factors, linear scale. +infinity selects a pure line-of-sight link.
  double kappa_direct{10.0};
  double kappa_bs_ris{10.0};
  double kappa_ris_mr{10.0};

  // Path-loss exponents of the line-of-sight and scattered components.
  double eps_direct{2.0};
  double eps_bs_ris{2.0};
  double eps_ris_mr{2.0};
  double eps_direct_nlos{2.8};
  double eps_bs_ris_nlos{2.8};
  double eps_ris_mr_nlos{2.8};

  double wavelength_m{speed_of_light_mps / 2.35e9};
};

std::vector<std::string> validate_channel(const ChannelParams& p);

struct MixingCoefficients {
  double rho{0.0};     // line-of-sight weight
  double varrho{1.0};  // scattered weight; rho^2 + varrho^2 == 1
};

// kappa >= 0 or +infinity; throws std::domain_error otherwise.
MixingCoefficients mixing(double kappa);

// Line-of-sight phase 2*pi*d/lambda reduced to [0, 2*pi).
double los_phase(double distance_m, double wavelength_m);

// sqrt(d^-eps) * e^{-j*phase}.
cdouble los_component(double distance_m, double exponent, double phase);

struct LinkRealization {
  cdouble direct{0.0, 0.0};
  std::vector<cdouble> bs_ris;  // per element
  std::vector<cdouble> ris_mr;  // per element
};

// One fading draw of every link at the given slot. Deterministic in
// (seed, slot, trial, link index): link 0 is the direct path, links
// 1..N are BS->element, links N+1..2N are element->MR.
LinkRealization sample_link_realization(const ScenarioConfig& cfg,
                                        const ChannelParams& params, int slot,
                                        std::uint64_t trial, std::uint64_t seed);

// h = direct + sum_n ris_mr[n] * e^{j*phases[n]} * bs_ris[n].
// Throws std::invalid_argument when the sizes disagree.
cdouble effective_channel(const LinkRealization& links,
                          std::span<const double> phases_rad);

// Instantaneous SNR P * |h|^2 / noise; power and noise must be > 0.
double snr(cdouble h, double power_w, double noise_w);

}  // namespace riscov

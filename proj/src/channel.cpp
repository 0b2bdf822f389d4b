// SPDX-License-Identifier: Apache-2.0

#include "riscov/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "riscov/rng.hpp"

namespace riscov {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void validate_kappa(std::vector<std::string>& errors, double kappa, const char* key) {
  if (std::isnan(kappa) || kappa < 0.0)
    errors.emplace_back(std::string(key) + ": must be >= 0 (or infinite for pure LoS)");
}

void validate_eps(std::vector<std::string>& errors, double eps, const char* key) {
  if (!std::isfinite(eps) || eps <= 0.0)
    errors.emplace_back(std::string(key) + ": must be finite and > 0");
}
}  // namespace

std::vector<std::string> validate_channel(const ChannelParams& p) {
  std::vector<std::string> errors;
  validate_kappa(errors, p.kappa_direct, "channel.kappa_direct");
  validate_kappa(errors, p.kappa_bs_ris, "channel.kappa_bs_ris");
  validate_kappa(errors, p.kappa_ris_mr, "channel.kappa_ris_mr");
  validate_eps(errors, p.eps_direct, "channel.eps_direct");
  validate_eps(errors, p.eps_bs_ris, "channel.eps_bs_ris");
  validate_eps(errors, p.eps_ris_mr, "channel.eps_ris_mr");
  validate_eps(errors, p.eps_direct_nlos, "channel.eps_direct_nlos");
  validate_eps(errors, p.eps_bs_ris_nlos, "channel.eps_bs_ris_nlos");
  validate_eps(errors, p.eps_ris_mr_nlos, "channel.eps_ris_mr_nlos");
  if (!std::isfinite(p.wavelength_m) || p.wavelength_m <= 0.0)
    errors.emplace_back("channel.wavelength_m: must be finite and > 0");
  return errors;
}

MixingCoefficients mixing(double kappa) {
  if (std::isnan(kappa) || kappa < 0.0)
    throw std::domain_error("mixing: Rician factor must be >= 0");
  if (std::isinf(kappa)) return {1.0, 0.0};
  return {std::sqrt(kappa / (kappa + 1.0)), std::sqrt(1.0 / (kappa + 1.0))};
}

double los_phase(double distance_m, double wavelength_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m))
    throw std::domain_error("los_phase: distance must be finite and > 0");
  if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
    throw std::domain_error("los_phase: wavelength must be finite and > 0");
  double r = distance_m / wavelength_m;
  double frac = r - std::floor(r);
  double p = kTwoPi * frac;
  // frac < 1 can still round the product up to exactly 2*pi; keep [0, 2*pi).
  if (p >= kTwoPi) p = 0.0;
  return p;
}

cdouble los_component(double distance_m, double exponent, double phase) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m))
    throw std::domain_error("los_component: distance must be finite and > 0");
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw std::domain_error("los_component: exponent must be finite and > 0");
  return std::polar(std::pow(distance_m, -0.5 * exponent), -phase);
}

LinkRealization sample_link_realization(const ScenarioConfig& cfg,
                                        const ChannelParams& params, int slot,
                                        std::uint64_t trial, std::uint64_t seed) {
  if (trial > 0xFFFFFFFFULL)
    throw std::out_of_range("sample_link_realization: trial index exceeds 32 bits");
  LinkDistances d = link_distances(cfg, slot);
  auto s32 = static_cast<std::uint32_t>(slot);
  auto t32 = static_cast<std::uint32_t>(trial);
  std::size_t n_elems = d.d_bs_ris_m.size();

  auto draw_link = [&](double dist, double kappa, double eps, double eps_nlos,
                       std::uint32_t link) {
    MixingCoefficients m = mixing(kappa);
    cdouble los = m.rho * los_component(dist, eps, los_phase(dist, params.wavelength_m));
    if (m.varrho == 0.0) return los;  // pure LoS: bitwise deterministic
    cdouble w = standard_complex_normal(seed, s32, t32, link);
    return los + m.varrho * std::pow(dist, -0.5 * eps_nlos) * w;
  };

  LinkRealization r;
  r.direct = draw_link(d.d_direct_m, params.kappa_direct, params.eps_direct,
                       params.eps_direct_nlos, 0);
  r.bs_ris.reserve(n_elems);
  r.ris_mr.reserve(n_elems);
  for (std::size_t n = 0; n < n_elems; ++n)
    r.bs_ris.push_back(draw_link(d.d_bs_ris_m[n], params.kappa_bs_ris,
                                 params.eps_bs_ris, params.eps_bs_ris_nlos,
                                 static_cast<std::uint32_t>(1 + n)));
  for (std::size_t n = 0; n < n_elems; ++n)
    r.ris_mr.push_back(draw_link(d.d_ris_mr_m[n], params.kappa_ris_mr,
                                 params.eps_ris_mr, params.eps_ris_mr_nlos,
                                 static_cast<std::uint32_t>(1 + n_elems + n)));
  return r;
}

cdouble effective_channel(const LinkRealization& links,
                          std::span<const double> phases_rad) {
  if (links.bs_ris.size() != links.ris_mr.size() ||
      links.bs_ris.size() != phases_rad.size())
    throw std::invalid_argument(
        "effective_channel: element count mismatch between links and phases");
  cdouble h = links.direct;
  for (std::size_t n = 0; n < phases_rad.size(); ++n)
    h += links.ris_mr[n] * std::polar(1.0, phases_rad[n]) * links.bs_ris[n];
  return h;
}

double snr(cdouble h, double power_w, double noise_w) {
  if (!(power_w > 0.0) || !std::isfinite(power_w))
    throw std::domain_error("snr: transmit power must be finite and > 0");
  if (!(noise_w > 0.0) || !std::isfinite(noise_w))
    throw std::domain_error("snr: noise power must be finite and > 0");
  return power_w * std::norm(h) / noise_w;
}

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0

#include "riscov/coverage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "riscov/special_functions.hpp"

namespace riscov {

std::vector<std::string> validate_query(const CoverageQuery& q) {
  std::vector<std::string> errors;
  if (!(q.power_w > 0.0) || !std::isfinite(q.power_w))
    errors.emplace_back("query.power: must be finite and > 0");
  if (!(q.noise_w > 0.0) || !std::isfinite(q.noise_w))
    errors.emplace_back("query.noise: must be finite and > 0");
  if (!(q.snr_threshold > 0.0) || !std::isfinite(q.snr_threshold))
    errors.emplace_back("query.snr_threshold: must be finite and > 0");
  return errors;
}

MeanComponents mean_components(const ScenarioConfig& cfg, const ChannelParams& params,
                               int slot) {
  LinkDistances d = link_distances(cfg, slot);
  MixingCoefficients md = mixing(params.kappa_direct);
  MixingCoefficients mr = mixing(params.kappa_ris_mr);
  MixingCoefficients mg = mixing(params.kappa_bs_ris);

  MeanComponents out;
  out.direct = md.rho * los_component(d.d_direct_m, params.eps_direct,
                                      los_phase(d.d_direct_m, params.wavelength_m));
  out.cascade.reserve(d.d_bs_ris_m.size());
  for (std::size_t n = 0; n < d.d_bs_ris_m.size(); ++n) {
    cdouble g = los_component(d.d_bs_ris_m[n], params.eps_bs_ris,
                              los_phase(d.d_bs_ris_m[n], params.wavelength_m));
    cdouble r = los_component(d.d_ris_mr_m[n], params.eps_ris_mr,
                              los_phase(d.d_ris_mr_m[n], params.wavelength_m));
    out.cascade.push_back(mr.rho * mg.rho * r * g);
  }
  return out;
}

cdouble equivalent_mean(const ScenarioConfig& cfg, const ChannelParams& params,
                        int slot, std::span<const double> phases_rad) {
  MeanComponents mc = mean_components(cfg, params, slot);
  if (mc.cascade.size() != phases_rad.size())
    throw std::invalid_argument("equivalent_mean: phase count must equal element count");
  cdouble mean = mc.direct;
  for (std::size_t n = 0; n < phases_rad.size(); ++n)
    mean += mc.cascade[n] * std::polar(1.0, phases_rad[n]);
  return mean;
}

double equivalent_variance(const ScenarioConfig& cfg, const ChannelParams& params,
                           int slot) {
  LinkDistances d = link_distances(cfg, slot);
  MixingCoefficients md = mixing(params.kappa_direct);
  MixingCoefficients mr = mixing(params.kappa_ris_mr);
  MixingCoefficients mg = mixing(params.kappa_bs_ris);

  double var = md.varrho * md.varrho * std::pow(d.d_direct_m, -params.eps_direct_nlos);
  double rho_r2 = mr.rho * mr.rho, vr2 = mr.varrho * mr.varrho;
  double rho_g2 = mg.rho * mg.rho, vg2 = mg.varrho * mg.varrho;
  for (std::size_t n = 0; n < d.d_bs_ris_m.size(); ++n) {
    double ag = std::pow(d.d_bs_ris_m[n], -params.eps_bs_ris);
    double bg = std::pow(d.d_bs_ris_m[n], -params.eps_bs_ris_nlos);
    double ar = std::pow(d.d_ris_mr_m[n], -params.eps_ris_mr);
    double br = std::pow(d.d_ris_mr_m[n], -params.eps_ris_mr_nlos);
    var += rho_r2 * ar * vg2 * bg   // LoS reflector hop, scattered feed hop
         + vr2 * br * rho_g2 * ag   // scattered reflector hop, LoS feed hop
         + vr2 * br * vg2 * bg;     // both hops scattered
  }
  return var;
}

EquivalentChannelStats channel_stats(const ScenarioConfig& cfg,
                                     const ChannelParams& params, int slot,
                                     std::span<const double> phases_rad) {
  EquivalentChannelStats s;
  s.mean = equivalent_mean(cfg, params, slot, phases_rad);
  s.variance = equivalent_variance(cfg, params, slot);
  s.noncentrality = s.variance > 0.0
                        ? std::norm(s.mean) / s.variance
                        : std::numeric_limits<double>::infinity();
  return s;
}

double noncentrality(const EquivalentChannelStats& stats) {
  if (!(stats.variance > 0.0))
    throw std::domain_error("noncentrality: undefined for a deterministic channel");
  return std::norm(stats.mean) / stats.variance;
}

double coverage_from_stats(const EquivalentChannelStats& stats,
                           const CoverageQuery& query, bool* degenerate) {
  auto errs = validate_query(query);
  if (!errs.empty()) throw std::domain_error("coverage: " + errs.front());
  if (degenerate) *degenerate = false;

  double snr_gain = query.power_w / query.noise_w;
  if (stats.variance == 0.0) {
    if (degenerate) *degenerate = true;
    return snr_gain * std::norm(stats.mean) >= query.snr_threshold ? 1.0 : 0.0;
  }

  double z = std::norm(stats.mean) / stats.variance;
  double g0 = query.snr_threshold / (snr_gain * stats.variance);
  switch (query.dof) {
    case DofVariant::paper_nu1:
      return marcum_q(0.5, std::sqrt(z), std::sqrt(g0));
    case DofVariant::complex_nu2:
      return marcum_q(1.0, std::sqrt(2.0 * z), std::sqrt(2.0 * g0));
  }
  throw std::domain_error("coverage: unknown tail model");
}

double coverage_probability(const ScenarioConfig& cfg, const ChannelParams& params,
                            int slot, std::span<const double> phases_rad,
                            const CoverageQuery& query, bool* degenerate) {
  return coverage_from_stats(channel_stats(cfg, params, slot, phases_rad), query,
                             degenerate);
}

double outage_probability(const ScenarioConfig& cfg, const ChannelParams& params,
                          int slot, std::span<const double> phases_rad,
                          const CoverageQuery& query) {
  return 1.0 - coverage_probability(cfg, params, slot, phases_rad, query);
}

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0

#include "riscov/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "riscov/rng.hpp"

namespace riscov {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_bits(int bits) {
  if (bits < 1 || bits > 20)
    throw std::domain_error("optimizer.bits: must be in [1, 20]");
}

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // the add above may round up to exactly 2*pi
  return r;
}

// Index of the grid angle nearest to theta; half-way cases take the smaller
// adjacent index (cyclically), so e.g. pi/2 on the 1-bit grid {0, pi} -> 0.
int grid_index(double theta_rad, int m) {
  double r = wrap_two_pi(theta_rad) * m / kTwoPi;  // in [0, m)
  int k = static_cast<int>(std::ceil(r - 0.5));
  return k == m ? 0 : k;
}

// Objective value for a candidate equivalent mean with fixed variance.
double value_of(const cdouble& mean, double variance, Objective objective,
                const CoverageQuery& query) {
  if (objective == Objective::mean_power) return std::norm(mean);
  EquivalentChannelStats s;
  s.mean = mean;
  s.variance = variance;
  s.noncentrality = variance > 0.0 ? std::norm(mean) / variance
                                   : std::numeric_limits<double>::infinity();
  return coverage_from_stats(s, query);
}

}  // namespace

std::vector<double> phase_grid(int bits) {
  check_bits(bits);
  int m = 1 << bits;
  std::vector<double> grid(m);
  for (int k = 0; k < m; ++k) grid[k] = k * (kTwoPi / m);
  return grid;
}

double quantize_phase(double theta_rad, int bits) {
  check_bits(bits);
  if (!std::isfinite(theta_rad))
    throw std::domain_error("quantize_phase: angle must be finite");
  int m = 1 << bits;
  return grid_index(theta_rad, m) * (kTwoPi / m);
}

std::vector<double> continuous_alignment(const ScenarioConfig& cfg,
                                         const ChannelParams& params, int slot) {
  LinkDistances d = link_distances(cfg, slot);
  double phi_d = los_phase(d.d_direct_m, params.wavelength_m);
  std::vector<double> phases(d.d_bs_ris_m.size());
  for (std::size_t n = 0; n < phases.size(); ++n) {
    double phi_g = los_phase(d.d_bs_ris_m[n], params.wavelength_m);
    double phi_r = los_phase(d.d_ris_mr_m[n], params.wavelength_m);
    phases[n] = wrap_two_pi(phi_r + phi_g - phi_d);
  }
  return phases;
}

std::vector<double> quantized_alignment(const ScenarioConfig& cfg,
                                        const ChannelParams& params, int slot,
                                        int bits) {
  std::vector<double> phases = continuous_alignment(cfg, params, slot);
  for (double& p : phases) p = quantize_phase(p, bits);
  return phases;
}

std::vector<double> random_phases(std::size_t count, int bits, std::uint64_t seed,
                                  std::uint64_t draw) {
  check_bits(bits);
  std::uint64_t m_mask = (1ULL << bits) - 1;
  double step = kTwoPi / static_cast<double>(1 << bits);
  std::vector<double> phases(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::uint64_t u = uniform_u64(auxiliary_key(seed), static_cast<std::uint32_t>(n),
                                  static_cast<std::uint32_t>(draw),
                                  static_cast<std::uint32_t>(draw >> 32), 1u);
    phases[n] = static_cast<double>(u & m_mask) * step;
  }
  return phases;
}

double evaluate_objective(const ScenarioConfig& cfg, const ChannelParams& params,
                          int slot, std::span<const double> phases_rad,
                          Objective objective, const CoverageQuery& query) {
  if (objective == Objective::mean_power)
    return std::norm(equivalent_mean(cfg, params, slot, phases_rad));
  return coverage_probability(cfg, params, slot, phases_rad, query);
}

OptimizeResult local_search(const ScenarioConfig& cfg, const ChannelParams& params,
                            int slot, const LocalSearchOptions& options,
                            const std::vector<double>* initial) {
  check_bits(options.bits);
  if (options.max_passes < 1)
    throw std::domain_error("optimizer.max_passes: must be >= 1");

  MeanComponents mc = mean_components(cfg, params, slot);
  const std::size_t n_elems = mc.cascade.size();
  if (initial && initial->size() != n_elems)
    throw std::invalid_argument("local_search: initial phase count must equal element count");

  const int m = 1 << options.bits;
  std::vector<cdouble> unit(m);
  for (int k = 0; k < m; ++k) unit[k] = std::polar(1.0, k * (kTwoPi / m));

  std::vector<int> idx(n_elems);
  if (initial) {
    for (std::size_t n = 0; n < n_elems; ++n) idx[n] = grid_index((*initial)[n], m);
  } else {
    std::vector<double> start = continuous_alignment(cfg, params, slot);
    for (std::size_t n = 0; n < n_elems; ++n) idx[n] = grid_index(start[n], m);
  }

  const double variance = options.objective == Objective::coverage
                              ? equivalent_variance(cfg, params, slot)
                              : 0.0;

  OptimizeResult result;
  for (int pass = 0; pass < options.max_passes; ++pass) {
    // Rebuild the running mean each pass so rounding drift from the
    // subtract/re-add updates below cannot accumulate across passes.
    cdouble mean = mc.direct;
    for (std::size_t n = 0; n < n_elems; ++n) mean += mc.cascade[n] * unit[idx[n]];

    bool moved = false;
    for (std::size_t n = 0; n < n_elems; ++n) {
      cdouble base = mean - mc.cascade[n] * unit[idx[n]];
      int best_k = 0;
      double best_val = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k) {
        double val = value_of(base + mc.cascade[n] * unit[k], variance,
                              options.objective, options.query);
        ++result.evaluations;
        if (val > best_val) {  // strict: ties keep the smaller grid index
          best_val = val;
          best_k = k;
        }
      }
      if (best_k != idx[n]) moved = true;
      idx[n] = best_k;
      mean = base + mc.cascade[n] * unit[best_k];
    }
    ++result.passes_used;
    if (!moved) break;
  }

  result.phases_rad.resize(n_elems);
  for (std::size_t n = 0; n < n_elems; ++n)
    result.phases_rad[n] = idx[n] * (kTwoPi / m);
  cdouble mean = mc.direct;
  for (std::size_t n = 0; n < n_elems; ++n) mean += mc.cascade[n] * unit[idx[n]];
  result.objective_value = value_of(mean, variance, options.objective, options.query);
  return result;
}

OptimizeResult exhaustive_search(const ScenarioConfig& cfg,
                                 const ChannelParams& params, int slot, int bits,
                                 Objective objective, const CoverageQuery& query) {
  check_bits(bits);
  MeanComponents mc = mean_components(cfg, params, slot);
  const std::size_t n_elems = mc.cascade.size();
  if (n_elems * static_cast<std::size_t>(bits) > 20)
    throw std::length_error(
        "exhaustive_search: more than 2^20 grid tuples; use local_search");

  const int m = 1 << bits;
  std::vector<cdouble> unit(m);
  for (int k = 0; k < m; ++k) unit[k] = std::polar(1.0, k * (kTwoPi / m));
  const double variance = objective == Objective::coverage
                              ? equivalent_variance(cfg, params, slot)
                              : 0.0;

  const std::uint64_t total = 1ULL << (n_elems * static_cast<std::size_t>(bits));
  const std::uint64_t mask = static_cast<std::uint64_t>(m - 1);
  std::uint64_t best_tuple = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < total; ++t) {
    // Element 0 occupies the most significant bit block, so ascending t
    // enumerates tuples in lexicographic order and the strict comparison
    // keeps the lexicographically smallest maximizer.
    cdouble mean = mc.direct;
    for (std::size_t n = 0; n < n_elems; ++n) {
      int k = static_cast<int>((t >> (bits * (n_elems - 1 - n))) & mask);
      mean += mc.cascade[n] * unit[k];
    }
    double val = value_of(mean, variance, objective, query);
    if (val > best_val) {
      best_val = val;
      best_tuple = t;
    }
  }

  OptimizeResult result;
  result.evaluations = total;
  result.objective_value = best_val;
  result.phases_rad.resize(n_elems);
  for (std::size_t n = 0; n < n_elems; ++n) {
    int k = static_cast<int>((best_tuple >> (bits * (n_elems - 1 - n))) & mask);
    result.phases_rad[n] = k * (kTwoPi / m);
  }
  return result;
}

}  // namespace riscov

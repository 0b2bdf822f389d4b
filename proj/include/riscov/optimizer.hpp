// SPDX-License-Identifier: Apache-2.0
//
// Phase configuration of the reflecting surface. All discrete schemes work on
// the uniform b-bit grid {k * 2*pi/2^b : k = 0..2^b-1}. The baseline scheme
// aligns every cascaded term with the direct link in continuous phase; its
// grid projection seeds a coordinate-ascent search that sweeps the elements
// in index order and, per element, keeps the first grid angle attaining the
// maximum objective (ties resolve toward smaller grid index). A guarded
// exhaustive search over all grid tuples provides the discrete optimum for
// small problems; it breaks ties lexicographically.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/coverage.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

// Quantity maximized by the search.
enum class Objective {
  mean_power,  // |E[h]|^2
  coverage,    // P(SNR >= threshold) under the analytic tail model
};

struct LocalSearchOptions {
  int bits{3};        // grid resolution, 2^bits angles
  int max_passes{1};  // full coordinate sweeps; stops early when none moves
  Objective objective{Objective::mean_power};
  CoverageQuery query{};  // consulted only for Objective::coverage
};

struct OptimizeResult {
  std::vector<double> phases_rad;
  double objective_value{0.0};
  int passes_used{0};
  std::uint64_t evaluations{0};  // candidate objective evaluations
};

// The 2^bits grid angles in increasing order. bits must be in [1, 20].
std::vector<double> phase_grid(int bits);

// Nearest grid angle, half-way cases toward the smaller adjacent grid angle
// (cyclically). Accepts any finite angle in radians.
double quantize_phase(double theta_rad, int bits);

// Per-element phases aligning each cascaded mean term with the direct one:
// theta_n = phi_ris_mr(n) + phi_bs_ris(n) - phi_direct, reduced to [0, 2*pi).
std::vector<double> continuous_alignment(const ScenarioConfig& cfg,
                                         const ChannelParams& params, int slot);

// Grid projection of continuous_alignment; default search start.
std::vector<double> quantized_alignment(const ScenarioConfig& cfg,
                                        const ChannelParams& params, int slot,
                                        int bits);

// `count` grid angles drawn uniformly (counter-based, reproducible). Distinct
// `draw` values give independent baselines under the same seed.
std::vector<double> random_phases(std::size_t count, int bits, std::uint64_t seed,
                                  std::uint64_t draw = 0);

double evaluate_objective(const ScenarioConfig& cfg, const ChannelParams& params,
                          int slot, std::span<const double> phases_rad,
                          Objective objective, const CoverageQuery& query);

// Coordinate ascent from `initial` (quantized to the grid; default grid-aligned
// baseline). Deterministic: element order, candidate order, and the first-max
// tie rule fix the trajectory completely.
OptimizeResult local_search(const ScenarioConfig& cfg, const ChannelParams& params,
                            int slot, const LocalSearchOptions& options,
                            const std::vector<double>* initial = nullptr);

// Every grid tuple, lexicographic order, first maximum kept. Refuses problems
// with more than 2^20 tuples (num_elements * bits > 20).
OptimizeResult exhaustive_search(const ScenarioConfig& cfg,
                                 const ChannelParams& params, int slot, int bits,
                                 Objective objective, const CoverageQuery& query);

}  // namespace riscov

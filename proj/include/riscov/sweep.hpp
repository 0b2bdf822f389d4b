// SPDX-License-Identifier: Apache-2.0
//
// Parameter-sweep experiment harness. One sweep varies a single quantity
// (transmit power, SNR threshold, feed-to-surface offset, element count or
// phase bits) over an inclusive from/to/step grid and evaluates every
// requested phase-selection scheme at every grid point: closed-form coverage
// under both tail models, a Monte-Carlo estimate with its binomial standard
// error, and the scheme's objective value. Records are ordered by grid point
// and then by scheme, regardless of how many workers computed them, and all
// randomness is derived from the master seed, so a sweep's CSV is reproduced
// byte for byte by any rerun with the same inputs (timing collection is
// opt-in for exactly this reason).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riscov/config.hpp"
#include "riscov/optimizer.hpp"

namespace riscov {

enum class SweepKind { power, threshold, bs_ris_distance, elements, bits };

enum class Scheme { no_ris, random_phase, ris_local_search, ris_exhaustive };

// Which closed-form tail models to evaluate; the CSV always carries both
// columns and fills unselected ones with nan.
enum class DofSelection { nu1, nu2, both };

struct SweepSpec {
  SweepKind kind{SweepKind::power};
  double from{0.0};
  double to{0.0};
  double step{1.0};
  LoadedConfig fixed;  // scenario/channel/query shared by all points
  std::vector<Scheme> schemes{Scheme::ris_local_search};
  std::uint64_t oracle_trials{100000};  // 0 disables the Monte-Carlo columns
  std::uint64_t seed{1};

  int bits{3};  // phase resolution for surface schemes (overridden by kind bits)
  int max_passes{1};
  Objective objective{Objective::mean_power};
  DofSelection dof{DofSelection::both};
  int slot_override{-1};  // <0: slot where the MR passes closest to the BS
  int random_draws{5};    // baselines behind the random_phase median
  bool measure_time{false};
  int point_workers{1};
  int trial_workers{1};
};

struct SweepRecord {
  double param{0.0};
  Scheme scheme{Scheme::no_ris};
  double pcov_nu1{0.0};
  double pcov_nu2{0.0};
  double pcov_mc{0.0};
  double mc_stderr{0.0};
  double objective_value{0.0};
  double wall_ms{0.0};
  bool degenerate{false};  // deterministic channel: coverage is an indicator
};

const char* scheme_name(Scheme s);
bool parse_scheme(const std::string& name, Scheme& out);

// All violations as "spec.<field>: message" lines; empty means valid.
std::vector<std::string> validate_spec(const SweepSpec& spec);

// The swept parameter values (inclusive grid).
std::vector<double> sweep_grid(const SweepSpec& spec);

// One record per (grid point, scheme), in that order. Throws ConfigError with
// the validate_spec report when the spec is invalid.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

// CSV with the fixed column set
// param,scheme,pcov_nu1,pcov_nu2,pcov_mc,mc_stderr,objective,wall_ms
// and 15-significant-digit values.
std::string to_csv(const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

}  // namespace riscov

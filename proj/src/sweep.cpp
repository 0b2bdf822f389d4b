// SPDX-License-Identifier: Apache-2.0

#include "riscov/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "riscov/monte_carlo.hpp"
#include "riscov/rng.hpp"

namespace riscov {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool integral(double x) { return std::isfinite(x) && x == std::floor(x); }

// Per-point view of the sweep: the fixed configuration with the swept
// parameter applied.
struct PointSetup {
  ScenarioConfig scenario;
  ChannelParams params;
  CoverageQuery query;
  int bits;
};

PointSetup apply_param(const SweepSpec& spec, double param) {
  PointSetup p{spec.fixed.scenario, spec.fixed.params, spec.fixed.query, spec.bits};
  switch (spec.kind) {
    case SweepKind::power:
      p.query.power_w = dbm_to_watt(param);
      break;
    case SweepKind::threshold:
      p.query.snr_threshold = db_to_linear(param);
      break;
    case SweepKind::bs_ris_distance:
      p.scenario.bs_ris_horizontal_m = param;
      break;
    case SweepKind::elements:
      p.scenario.num_elements = static_cast<int>(param);
      break;
    case SweepKind::bits:
      p.bits = static_cast<int>(param);
      break;
  }
  return p;
}

CoverageQuery with_dof(CoverageQuery q, DofVariant dof) {
  q.dof = dof;
  return q;
}

std::vector<double> scheme_phases(const PointSetup& p, Scheme scheme, int slot,
                                  const SweepSpec& spec, std::uint64_t point_seed) {
  switch (scheme) {
    case Scheme::no_ris:
      return {};
    case Scheme::random_phase: {
      // Median-by-coverage baseline: draw several uniform grid configurations
      // and keep the one whose closed-form coverage is the (lower) median, so
      // every reported column describes one concrete phase vector.
      DofVariant sel = spec.dof == DofSelection::nu1 ? DofVariant::paper_nu1
                                                     : DofVariant::complex_nu2;
      std::size_t n = static_cast<std::size_t>(p.scenario.num_elements);
      int draws = spec.random_draws;
      std::vector<std::vector<double>> cand(draws);
      std::vector<double> value(draws);
      for (int d = 0; d < draws; ++d) {
        cand[d] = random_phases(n, p.bits, point_seed,
                                static_cast<std::uint64_t>(d));
        value[d] = coverage_probability(p.scenario, p.params, slot, cand[d],
                                        with_dof(p.query, sel));
      }
      std::vector<int> order(draws);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return value[a] < value[b]; });
      return cand[order[(draws - 1) / 2]];
    }
    case Scheme::ris_local_search: {
      LocalSearchOptions opt;
      opt.bits = p.bits;
      opt.max_passes = spec.max_passes;
      opt.objective = spec.objective;
      opt.query = p.query;
      return local_search(p.scenario, p.params, slot, opt).phases_rad;
    }
    case Scheme::ris_exhaustive:
      return exhaustive_search(p.scenario, p.params, slot, p.bits, spec.objective,
                               p.query)
          .phases_rad;
  }
  throw std::domain_error("scheme_phases: unknown scheme");
}

SweepRecord evaluate_record(const SweepSpec& spec, std::size_t point_index,
                            double param, Scheme scheme, int trial_workers) {
  auto t0 = std::chrono::steady_clock::now();
  PointSetup p = apply_param(spec, param);
  if (scheme == Scheme::no_ris) p.scenario.num_elements = 0;
  int slot = spec.slot_override >= 0 ? spec.slot_override
                                     : nearest_approach_slot(p.scenario);
  // Same per-point seed for every scheme: Monte-Carlo comparisons between
  // schemes at one grid point are paired.
  std::uint64_t point_seed = mix_u64(spec.seed ^ mix_u64(point_index));

  SweepRecord rec;
  rec.param = param;
  rec.scheme = scheme;
  std::vector<double> phases = scheme_phases(p, scheme, slot, spec, point_seed);

  EquivalentChannelStats stats = channel_stats(p.scenario, p.params, slot, phases);
  bool degen = false;
  rec.pcov_nu1 = spec.dof != DofSelection::nu2
                     ? coverage_from_stats(stats, with_dof(p.query, DofVariant::paper_nu1),
                                           &degen)
                     : kNan;
  rec.degenerate = degen;
  rec.pcov_nu2 = spec.dof != DofSelection::nu1
                     ? coverage_from_stats(stats,
                                           with_dof(p.query, DofVariant::complex_nu2),
                                           &degen)
                     : kNan;
  rec.degenerate = rec.degenerate || degen;

  if (spec.oracle_trials > 0) {
    CoverageEstimate mc =
        empirical_coverage(p.scenario, p.params, slot, phases, p.query, point_seed,
                           spec.oracle_trials, trial_workers);
    rec.pcov_mc = mc.coverage;
    rec.mc_stderr = mc.std_error;
  } else {
    rec.pcov_mc = kNan;
    rec.mc_stderr = kNan;
  }

  rec.objective_value = evaluate_objective(p.scenario, p.params, slot, phases,
                                           spec.objective, p.query);
  if (spec.measure_time) {
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return rec;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::no_ris: return "no_ris";
    case Scheme::random_phase: return "random_phase";
    case Scheme::ris_local_search: return "ris_local_search";
    case Scheme::ris_exhaustive: return "ris_exhaustive";
  }
  return "unknown";
}

bool parse_scheme(const std::string& name, Scheme& out) {
  if (name == "no_ris") out = Scheme::no_ris;
  else if (name == "random_phase") out = Scheme::random_phase;
  else if (name == "ris_local_search") out = Scheme::ris_local_search;
  else if (name == "ris_exhaustive") out = Scheme::ris_exhaustive;
  else return false;
  return true;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid;
  double span = spec.to - spec.from;
  if (!(spec.step > 0.0) || span < 0.0) return grid;
  // A tiny relative slack absorbs accumulated rounding at the upper endpoint
  // without ever admitting a genuine overshoot past `to`.
  auto count = static_cast<std::size_t>(std::floor(span / spec.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    double v = spec.from + static_cast<double>(i) * spec.step;
    if (v > spec.to + 1e-9 * spec.step) break;
    grid.push_back(v);
  }
  return grid;
}

std::vector<std::string> validate_spec(const SweepSpec& spec) {
  std::vector<std::string> errors;
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to) || spec.from > spec.to)
    errors.emplace_back("spec.from/to: need finite from <= to");
  if (!(spec.step > 0.0) || !std::isfinite(spec.step))
    errors.emplace_back("spec.step: must be finite and > 0");
  if (spec.schemes.empty())
    errors.emplace_back("spec.schemes: at least one scheme required");
  for (std::size_t i = 0; i < spec.schemes.size(); ++i)
    for (std::size_t j = i + 1; j < spec.schemes.size(); ++j)
      if (spec.schemes[i] == spec.schemes[j]) {
        errors.emplace_back(std::string("spec.schemes: duplicate '") +
                            scheme_name(spec.schemes[i]) + "'");
        j = spec.schemes.size();
      }
  if (spec.kind == SweepKind::elements || spec.kind == SweepKind::bits) {
    if (!integral(spec.from) || !integral(spec.to) || !integral(spec.step))
      errors.emplace_back("spec.from/to/step: must be integers for this sweep kind");
    if (spec.kind == SweepKind::elements && spec.from < 0.0)
      errors.emplace_back("spec.from: element counts must be >= 0");
    if (spec.kind == SweepKind::bits && (spec.from < 1.0 || spec.to > 20.0))
      errors.emplace_back("spec.from/to: bit depths must be in [1, 20]");
  }
  if (spec.bits < 1 || spec.bits > 20)
    errors.emplace_back("spec.bits: must be in [1, 20]");
  if (spec.max_passes < 1) errors.emplace_back("spec.max_passes: must be >= 1");
  if (spec.random_draws < 1) errors.emplace_back("spec.random_draws: must be >= 1");
  if (spec.oracle_trials > 0x100000000ULL)
    errors.emplace_back("spec.oracle_trials: exceeds 32-bit trial indices");
  if (spec.slot_override >= spec.fixed.scenario.num_slots)
    errors.emplace_back("spec.slot: beyond the scenario's slot count");
  for (const auto& e : validate_scenario(spec.fixed.scenario)) errors.push_back(e);
  for (const auto& e : validate_channel(spec.fixed.params)) errors.push_back(e);
  for (const auto& e : validate_query(spec.fixed.query)) errors.push_back(e);
  if (errors.empty()) {
    std::vector<double> grid = sweep_grid(spec);
    if (grid.empty()) errors.emplace_back("spec.from/to/step: empty grid");
    if (grid.size() > 100000) errors.emplace_back("spec.from/to/step: over 1e5 points");
    bool exhaustive = std::find(spec.schemes.begin(), spec.schemes.end(),
                                Scheme::ris_exhaustive) != spec.schemes.end();
    if (exhaustive)
      for (double v : grid) {
        PointSetup p = apply_param(spec, v);
        std::size_t work = static_cast<std::size_t>(p.scenario.num_elements) *
                           static_cast<std::size_t>(p.bits);
        if (work > 20) {
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "spec.schemes: ris_exhaustive infeasible at param=%g "
                        "(num_elements*bits = %zu > 20)",
                        v, work);
          errors.emplace_back(buf);
          break;
        }
      }
  }
  return errors;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  auto errors = validate_spec(spec);
  if (!errors.empty()) throw ConfigError(std::move(errors));

  std::vector<double> grid = sweep_grid(spec);
  const std::size_t n_schemes = spec.schemes.size();
  std::vector<SweepRecord> records(grid.size() * n_schemes);

  // Points are independent work items; records land in grid order no matter
  // which worker finishes first. Nested trial parallelism is disabled as soon
  // as points themselves run in parallel.
  int point_workers = std::max(1, spec.point_workers);
  int trial_workers = point_workers > 1 ? 1 : spec.trial_workers;
  auto work_point = [&](std::size_t pi) {
    for (std::size_t si = 0; si < n_schemes; ++si)
      records[pi * n_schemes + si] =
          evaluate_record(spec, pi, grid[pi], spec.schemes[si], trial_workers);
  };

  if (point_workers == 1 || grid.size() <= 1) {
    for (std::size_t pi = 0; pi < grid.size(); ++pi) work_point(pi);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  std::size_t n_workers = std::min<std::size_t>(point_workers, grid.size());
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t pi = next.fetch_add(1); pi < grid.size();
           pi = next.fetch_add(1)) {
        try {
          work_point(pi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out = "param,scheme,pcov_nu1,pcov_nu2,pcov_mc,mc_stderr,objective,wall_ms\n";
  char buf[320];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.15g,%s,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n",
                  r.param, scheme_name(r.scheme), r.pcov_nu1, r.pcov_nu2, r.pcov_mc,
                  r.mc_stderr, r.objective_value, r.wall_ms);
    out += buf;
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  std::string text = to_csv(records);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0

#include "riscov/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "riscov/rng.hpp"

namespace riscov {

namespace {

constexpr std::uint64_t kChunkTrials = 65536;

// Deterministic per-link factors of one scenario slot. The arithmetic below
// reproduces sample_link_realization + effective_channel operation for
// operation (same products, same branch on a vanishing scattered weight, same
// summation order), so the hoisted form stays bit-identical to the reference
// path.
struct TrialEngine {
  std::uint64_t seed{0};
  std::uint32_t slot{0};
  cdouble direct_los{0.0, 0.0};
  double direct_scale{0.0};
  bool direct_scatter{false};
  std::vector<cdouble> feed_los, refl_los, phase;
  std::vector<double> feed_scale, refl_scale;
  bool feed_scatter{false}, refl_scatter{false};

  cdouble sample(std::uint32_t trial) const {
    cdouble h = direct_los;
    if (direct_scatter)
      h = direct_los + direct_scale * standard_complex_normal(seed, slot, trial, 0);
    const std::size_t n_elems = phase.size();
    for (std::size_t n = 0; n < n_elems; ++n) {
      cdouble g = feed_los[n];
      if (feed_scatter)
        g = feed_los[n] + feed_scale[n] * standard_complex_normal(
                              seed, slot, trial, static_cast<std::uint32_t>(1 + n));
      cdouble r = refl_los[n];
      if (refl_scatter)
        r = refl_los[n] + refl_scale[n] * standard_complex_normal(
                              seed, slot, trial,
                              static_cast<std::uint32_t>(1 + n_elems + n));
      h += r * phase[n] * g;
    }
    return h;
  }
};

TrialEngine make_engine(const ScenarioConfig& cfg, const ChannelParams& params,
                        int slot, std::span<const double> phases_rad,
                        std::uint64_t seed) {
  LinkDistances d = link_distances(cfg, slot);
  if (d.d_bs_ris_m.size() != phases_rad.size())
    throw std::invalid_argument(
        "monte_carlo: phase count must equal element count");

  MixingCoefficients md = mixing(params.kappa_direct);
  MixingCoefficients mg = mixing(params.kappa_bs_ris);
  MixingCoefficients mr = mixing(params.kappa_ris_mr);

  TrialEngine e;
  e.seed = seed;
  e.slot = static_cast<std::uint32_t>(slot);
  e.direct_los = md.rho * los_component(d.d_direct_m, params.eps_direct,
                                        los_phase(d.d_direct_m, params.wavelength_m));
  e.direct_scatter = md.varrho != 0.0;
  if (e.direct_scatter)
    e.direct_scale = md.varrho * std::pow(d.d_direct_m, -0.5 * params.eps_direct_nlos);

  const std::size_t n_elems = phases_rad.size();
  e.feed_los.resize(n_elems);
  e.refl_los.resize(n_elems);
  e.feed_scale.resize(n_elems);
  e.refl_scale.resize(n_elems);
  e.phase.resize(n_elems);
  e.feed_scatter = mg.varrho != 0.0;
  e.refl_scatter = mr.varrho != 0.0;
  for (std::size_t n = 0; n < n_elems; ++n) {
    e.feed_los[n] = mg.rho * los_component(d.d_bs_ris_m[n], params.eps_bs_ris,
                                           los_phase(d.d_bs_ris_m[n],
                                                     params.wavelength_m));
    e.refl_los[n] = mr.rho * los_component(d.d_ris_mr_m[n], params.eps_ris_mr,
                                           los_phase(d.d_ris_mr_m[n],
                                                     params.wavelength_m));
    if (e.feed_scatter)
      e.feed_scale[n] =
          mg.varrho * std::pow(d.d_bs_ris_m[n], -0.5 * params.eps_bs_ris_nlos);
    if (e.refl_scatter)
      e.refl_scale[n] =
          mr.varrho * std::pow(d.d_ris_mr_m[n], -0.5 * params.eps_ris_mr_nlos);
    e.phase[n] = std::polar(1.0, phases_rad[n]);
  }
  return e;
}

void check_trials(std::uint64_t trials, std::uint64_t minimum) {
  if (trials < minimum)
    throw std::domain_error("monte_carlo: too few trials requested");
  if (trials > 0x100000000ULL)
    throw std::out_of_range("monte_carlo: trial count exceeds 32-bit indices");
}

// Runs fn(chunk_index, first_trial, last_trial) over fixed-size chunks using
// `workers` threads. Chunk boundaries never depend on the worker count.
template <typename ChunkFn>
void run_chunks(std::uint64_t trials, int workers, std::uint64_t n_chunks,
                ChunkFn fn) {
  unsigned requested = workers > 0 ? static_cast<unsigned>(workers)
                                   : std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t n_workers = std::min<std::uint64_t>(requested, n_chunks);
  auto work_chunk = [&](std::uint64_t c) {
    std::uint64_t first = c * kChunkTrials;
    std::uint64_t last = std::min(first + kChunkTrials, trials);
    fn(c, first, last);
  };
  if (n_workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) work_chunk(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::uint64_t w = 0; w < n_workers; ++w)
    pool.emplace_back([&] {
      for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1))
        work_chunk(c);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

cdouble simulate_channel(const ScenarioConfig& cfg, const ChannelParams& params,
                         int slot, std::uint64_t trial, std::uint64_t seed,
                         std::span<const double> phases_rad) {
  if (trial > 0xFFFFFFFFULL)
    throw std::out_of_range("simulate_channel: trial index exceeds 32 bits");
  return make_engine(cfg, params, slot, phases_rad, seed)
      .sample(static_cast<std::uint32_t>(trial));
}

CoverageEstimate empirical_coverage(const ScenarioConfig& cfg,
                                    const ChannelParams& params, int slot,
                                    std::span<const double> phases_rad,
                                    const CoverageQuery& query, std::uint64_t seed,
                                    std::uint64_t trials, int workers) {
  check_trials(trials, 1);
  auto errs = validate_query(query);
  if (!errs.empty()) throw std::domain_error("monte_carlo: " + errs.front());
  TrialEngine engine = make_engine(cfg, params, slot, phases_rad, seed);

  std::uint64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<std::uint64_t> hits(n_chunks, 0);
  run_chunks(trials, workers, n_chunks,
             [&](std::uint64_t c, std::uint64_t first, std::uint64_t last) {
               std::uint64_t count = 0;
               for (std::uint64_t t = first; t < last; ++t) {
                 cdouble h = engine.sample(static_cast<std::uint32_t>(t));
                 if (query.power_w * std::norm(h) / query.noise_w >=
                     query.snr_threshold)
                   ++count;
               }
               hits[c] = count;
             });

  CoverageEstimate est;
  est.trials = trials;
  for (std::uint64_t c = 0; c < n_chunks; ++c) est.successes += hits[c];
  est.coverage = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.std_error =
      std::sqrt(est.coverage * (1.0 - est.coverage) / static_cast<double>(trials));
  return est;
}

MomentEstimate empirical_channel_moments(const ScenarioConfig& cfg,
                                         const ChannelParams& params, int slot,
                                         std::span<const double> phases_rad,
                                         std::uint64_t seed, std::uint64_t trials,
                                         int workers) {
  check_trials(trials, 2);
  TrialEngine engine = make_engine(cfg, params, slot, phases_rad, seed);

  std::uint64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<cdouble> sums(n_chunks, cdouble{0.0, 0.0});
  std::vector<double> sq_sums(n_chunks, 0.0);
  run_chunks(trials, workers, n_chunks,
             [&](std::uint64_t c, std::uint64_t first, std::uint64_t last) {
               cdouble s{0.0, 0.0};
               double sq = 0.0;
               for (std::uint64_t t = first; t < last; ++t) {
                 cdouble h = engine.sample(static_cast<std::uint32_t>(t));
                 s += h;
                 sq += std::norm(h);
               }
               sums[c] = s;
               sq_sums[c] = sq;
             });

  // Combine partial sums in chunk order: the floating-point result is then a
  // pure function of (seed, trials), not of scheduling.
  cdouble sum{0.0, 0.0};
  double sq_sum = 0.0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    sum += sums[c];
    sq_sum += sq_sums[c];
  }

  MomentEstimate est;
  est.trials = trials;
  double n = static_cast<double>(trials);
  est.mean = sum / n;
  est.variance = std::max(0.0, (sq_sum - n * std::norm(est.mean)) / (n - 1.0));
  est.mean_std_error = std::sqrt(est.variance / (2.0 * n));
  est.variance_std_error = est.variance / std::sqrt(n);
  return est;
}

}  // namespace riscov

// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   sweep            parameter sweep -> CSV (stdout or --out)
//   optimize         phase selection at one slot -> phase table
//   validate         load a config, report every violation with its key path
//   selftest-special special-function accuracy self-check
//   oracle           Monte-Carlo estimate vs closed forms at one point
// Exit codes: 0 success, 2 validation failure, 3 numerical failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riscov/config.hpp"
#include "riscov/monte_carlo.hpp"
#include "riscov/sweep.hpp"
#include "riscov/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed{1};
};

riscov::LoadedConfig load_or_default(const std::string& path) {
  if (path.empty()) return riscov::parse_config_text("{}");
  return riscov::load_config_file(path);
}

void print_config_errors(const riscov::ConfigError& e) {
  for (const auto& line : e.errors()) std::fprintf(stderr, "error: %s\n", line.c_str());
}

int resolve_slot(const riscov::ScenarioConfig& scenario, int slot_flag) {
  return slot_flag >= 0 ? slot_flag : riscov::nearest_approach_slot(scenario);
}

bool parse_objective(const std::string& name, riscov::Objective& out) {
  if (name == "power") out = riscov::Objective::mean_power;
  else if (name == "coverage") out = riscov::Objective::coverage;
  else return false;
  return true;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs : CommonArgs {
  std::string kind{"power"};
  double from{0.0}, to{0.0}, step{1.0};
  std::vector<std::string> schemes{"no_ris", "ris_local_search"};
  std::uint64_t trials{100000};
  std::string out_path;
  std::string dof{"both"};
  int bits{3};
  int max_passes{1};
  std::string objective{"power"};
  int slot{-1};
  int random_draws{5};
  bool measure_time{false};
  int point_workers{1};
  int trial_workers{0};
};

int run_sweep_cmd(const SweepArgs& a) {
  riscov::SweepSpec spec;
  spec.fixed = load_or_default(a.config_path);

  if (a.kind == "power") spec.kind = riscov::SweepKind::power;
  else if (a.kind == "threshold") spec.kind = riscov::SweepKind::threshold;
  else if (a.kind == "bs_ris_distance") spec.kind = riscov::SweepKind::bs_ris_distance;
  else if (a.kind == "elements") spec.kind = riscov::SweepKind::elements;
  else if (a.kind == "bits") spec.kind = riscov::SweepKind::bits;
  else {
    std::fprintf(stderr, "error: --kind: unknown sweep kind '%s'\n", a.kind.c_str());
    return kExitValidation;
  }

  spec.from = a.from;
  spec.to = a.to;
  spec.step = a.step;
  spec.seed = a.seed;
  spec.oracle_trials = a.trials;
  spec.bits = a.bits;
  spec.max_passes = a.max_passes;
  spec.slot_override = a.slot;
  spec.random_draws = a.random_draws;
  spec.measure_time = a.measure_time;
  spec.point_workers = a.point_workers;
  spec.trial_workers = a.trial_workers;

  if (!parse_objective(a.objective, spec.objective)) {
    std::fprintf(stderr, "error: --objective: expected power|coverage\n");
    return kExitValidation;
  }
  if (a.dof == "nu1") spec.dof = riscov::DofSelection::nu1;
  else if (a.dof == "nu2") spec.dof = riscov::DofSelection::nu2;
  else if (a.dof == "both") spec.dof = riscov::DofSelection::both;
  else {
    std::fprintf(stderr, "error: --dof: expected nu1|nu2|both\n");
    return kExitValidation;
  }
  spec.schemes.clear();
  for (const auto& name : a.schemes) {
    riscov::Scheme s;
    if (!riscov::parse_scheme(name, s)) {
      std::fprintf(stderr,
                   "error: --scheme: unknown scheme '%s' (expected no_ris, "
                   "random_phase, ris_local_search, ris_exhaustive)\n",
                   name.c_str());
      return kExitValidation;
    }
    spec.schemes.push_back(s);
  }

  std::vector<riscov::SweepRecord> records = riscov::run_sweep(spec);

  int exit_code = kExitOk;
  for (const auto& r : records) {
    bool nan_closed = (spec.dof != riscov::DofSelection::nu2 && std::isnan(r.pcov_nu1)) ||
                      (spec.dof != riscov::DofSelection::nu1 && std::isnan(r.pcov_nu2));
    if (nan_closed || r.degenerate) {
      std::fprintf(stderr, "numerical: param=%.15g scheme=%s %s\n", r.param,
                   riscov::scheme_name(r.scheme),
                   r.degenerate ? "degenerate (deterministic channel)"
                                : "closed form is nan");
      exit_code = kExitNumerical;
    }
  }

  if (a.out_path.empty()) {
    std::string text = riscov::to_csv(records);
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    riscov::emit_csv(records, a.out_path);
  }
  return exit_code;
}

// ---- optimize ----------------------------------------------------------------

struct OptimizeArgs : CommonArgs {
  int slot{-1};
  int bits{3};
  int max_passes{1};
  std::string objective{"power"};
  std::string algorithm{"local"};
  std::string init{"aligned"};
  std::uint64_t draw{0};
  std::string out_path;
};

int run_optimize_cmd(const OptimizeArgs& a) {
  riscov::LoadedConfig cfg = load_or_default(a.config_path);
  int slot = resolve_slot(cfg.scenario, a.slot);

  riscov::Objective objective;
  if (!parse_objective(a.objective, objective)) {
    std::fprintf(stderr, "error: --objective: expected power|coverage\n");
    return kExitValidation;
  }

  riscov::OptimizeResult result;
  if (a.algorithm == "exhaustive") {
    result = riscov::exhaustive_search(cfg.scenario, cfg.params, slot, a.bits,
                                       objective, cfg.query);
  } else if (a.algorithm == "local") {
    riscov::LocalSearchOptions opt;
    opt.bits = a.bits;
    opt.max_passes = a.max_passes;
    opt.objective = objective;
    opt.query = cfg.query;
    if (a.init == "aligned") {
      result = riscov::local_search(cfg.scenario, cfg.params, slot, opt);
    } else if (a.init == "random") {
      std::vector<double> start = riscov::random_phases(
          static_cast<std::size_t>(cfg.scenario.num_elements), a.bits, a.seed, a.draw);
      result = riscov::local_search(cfg.scenario, cfg.params, slot, opt, &start);
    } else {
      std::fprintf(stderr, "error: --init: expected aligned|random\n");
      return kExitValidation;
    }
  } else if (a.algorithm == "aligned") {
    result.phases_rad =
        riscov::quantized_alignment(cfg.scenario, cfg.params, slot, a.bits);
    result.objective_value = riscov::evaluate_objective(
        cfg.scenario, cfg.params, slot, result.phases_rad, objective, cfg.query);
  } else if (a.algorithm == "continuous") {
    result.phases_rad = riscov::continuous_alignment(cfg.scenario, cfg.params, slot);
    result.objective_value = riscov::evaluate_objective(
        cfg.scenario, cfg.params, slot, result.phases_rad, objective, cfg.query);
  } else {
    std::fprintf(stderr,
                 "error: --algorithm: expected local|exhaustive|aligned|continuous\n");
    return kExitValidation;
  }

  if (!std::isfinite(result.objective_value)) {
    std::fprintf(stderr, "numerical: objective is not finite\n");
    return kExitNumerical;
  }

  std::string text = "element,phase_rad\n";
  char buf[96];
  for (std::size_t n = 0; n < result.phases_rad.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.15g\n", n, result.phases_rad[n]);
    text += buf;
  }
  if (a.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::FILE* f = std::fopen(a.out_path.c_str(), "wb");
    if (!f) {
      std::fprintf(stderr, "error: cannot open '%s' for writing\n", a.out_path.c_str());
      return kExitValidation;
    }
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  std::fprintf(stderr, "slot=%d objective=%.15g passes=%d evaluations=%" PRIu64 "\n",
               slot, result.objective_value, result.passes_used, result.evaluations);
  return kExitOk;
}

// ---- validate ----------------------------------------------------------------

int run_validate_cmd(const CommonArgs& a) {
  riscov::LoadedConfig cfg = load_or_default(a.config_path);
  std::printf("config ok\n");
  std::printf("scenario: speed_mps=%.15g slots=%d tau_s=%.15g elements=%d\n",
              cfg.scenario.speed_mps, cfg.scenario.num_slots,
              cfg.scenario.slot_duration_s, cfg.scenario.num_elements);
  std::printf("scenario: carrier_hz=%.15g bandwidth_hz=%.15g spacing_m=%.15g\n",
              cfg.scenario.carrier_hz, cfg.scenario.bandwidth_hz,
              cfg.scenario.element_spacing_m);
  std::printf("channel: kappa=(%.15g, %.15g, %.15g) wavelength_m=%.15g\n",
              cfg.params.kappa_direct, cfg.params.kappa_bs_ris,
              cfg.params.kappa_ris_mr, cfg.params.wavelength_m);
  std::printf("query: power_w=%.15g noise_w=%.15g snr_threshold=%.15g dof=%s\n",
              cfg.query.power_w, cfg.query.noise_w, cfg.query.snr_threshold,
              cfg.query.dof == riscov::DofVariant::paper_nu1 ? "nu1" : "nu2");
  return kExitOk;
}

// ---- selftest-special ---------------------------------------------------------

struct SelftestArgs : CommonArgs {
  int points{10000};
};

int run_selftest_cmd(const SelftestArgs& a) {
  riscov::validation::AccuracyReport rep =
      riscov::validation::special_function_accuracy(a.points, a.seed);
  std::printf("half_order_identity_max_err   %.3e (bound 1e-12)\n",
              rep.max_half_identity_err);
  std::printf("first_order_quadrature_max_err %.3e (bound 1e-10)\n",
              rep.max_q1_quadrature_err);
  std::printf("cdf_complement_max_err        %.3e (bound 1e-11)\n",
              rep.max_complement_err);
  std::printf("points_checked                %d\n", rep.points_checked);
  bool ok = rep.max_half_identity_err <= 1e-12 &&
            rep.max_q1_quadrature_err <= 1e-10 && rep.max_complement_err <= 1e-11;
  if (!ok) std::fprintf(stderr, "numerical: special-function accuracy out of bounds\n");
  return ok ? kExitOk : kExitNumerical;
}

// ---- oracle --------------------------------------------------------------------

struct OracleArgs : CommonArgs {
  int slot{-1};
  std::uint64_t trials{100000};
  std::string scheme{"ris_local_search"};
  int bits{3};
  int max_passes{1};
  std::uint64_t draw{0};
  int workers{0};
};

int run_oracle_cmd(const OracleArgs& a) {
  riscov::LoadedConfig cfg = load_or_default(a.config_path);
  riscov::ScenarioConfig scenario = cfg.scenario;
  int slot = resolve_slot(scenario, a.slot);

  std::vector<double> phases;
  if (a.scheme == "no_ris") {
    scenario.num_elements = 0;
  } else if (a.scheme == "random_phase") {
    phases = riscov::random_phases(static_cast<std::size_t>(scenario.num_elements),
                                   a.bits, a.seed, a.draw);
  } else if (a.scheme == "ris_local_search") {
    riscov::LocalSearchOptions opt;
    opt.bits = a.bits;
    opt.max_passes = a.max_passes;
    opt.query = cfg.query;
    phases = riscov::local_search(scenario, cfg.params, slot, opt).phases_rad;
  } else if (a.scheme == "ris_exhaustive") {
    phases = riscov::exhaustive_search(scenario, cfg.params, slot, a.bits,
                                       riscov::Objective::mean_power, cfg.query)
                 .phases_rad;
  } else if (a.scheme == "aligned") {
    phases = riscov::quantized_alignment(scenario, cfg.params, slot, a.bits);
  } else if (a.scheme == "continuous") {
    phases = riscov::continuous_alignment(scenario, cfg.params, slot);
  } else {
    std::fprintf(stderr, "error: --scheme: unknown scheme '%s'\n", a.scheme.c_str());
    return kExitValidation;
  }

  bool degenerate = false;
  riscov::EquivalentChannelStats stats =
      riscov::channel_stats(scenario, cfg.params, slot, phases);
  double nu1 = riscov::coverage_from_stats(
      stats, [&] { auto q = cfg.query; q.dof = riscov::DofVariant::paper_nu1; return q; }(),
      &degenerate);
  double nu2 = riscov::coverage_from_stats(
      stats, [&] { auto q = cfg.query; q.dof = riscov::DofVariant::complex_nu2; return q; }(),
      &degenerate);
  riscov::CoverageEstimate mc = riscov::empirical_coverage(
      scenario, cfg.params, slot, phases, cfg.query, a.seed, a.trials, a.workers);
  riscov::MomentEstimate mom = riscov::empirical_channel_moments(
      scenario, cfg.params, slot, phases, a.seed, std::max<std::uint64_t>(2, a.trials),
      a.workers);

  std::printf("slot                %d\n", slot);
  std::printf("mean_re             %.15g\n", stats.mean.real());
  std::printf("mean_im             %.15g\n", stats.mean.imag());
  std::printf("variance            %.15g\n", stats.variance);
  std::printf("mc_mean_re          %.15g\n", mom.mean.real());
  std::printf("mc_mean_im          %.15g\n", mom.mean.imag());
  std::printf("mc_variance         %.15g\n", mom.variance);
  std::printf("pcov_nu1            %.15g\n", nu1);
  std::printf("pcov_nu2            %.15g\n", nu2);
  std::printf("pcov_mc             %.15g\n", mc.coverage);
  std::printf("mc_stderr           %.15g\n", mc.std_error);
  std::printf("trials              %" PRIu64 "\n", mc.trials);
  if (degenerate) {
    std::fprintf(stderr, "numerical: degenerate (deterministic channel)\n");
    return kExitNumerical;
  }
  if (std::isnan(nu1) || std::isnan(nu2)) {
    std::fprintf(stderr, "numerical: closed form is nan\n");
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage analysis for a reflecting-surface-assisted mobile downlink"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep, emit CSV");
  sweep->add_option("--config", sweep_args.config_path, "JSON config file");
  sweep->add_option("--kind", sweep_args.kind,
                    "power|threshold|bs_ris_distance|elements|bits")
      ->required();
  sweep->add_option("--from", sweep_args.from, "Grid start")->required();
  sweep->add_option("--to", sweep_args.to, "Grid end (inclusive)")->required();
  sweep->add_option("--step", sweep_args.step, "Grid step (> 0)")->required();
  sweep->add_option("--scheme", sweep_args.schemes, "Comma-separated scheme list")
      ->delimiter(',');
  sweep->add_option("--trials", sweep_args.trials, "Monte-Carlo trials per point (0 = off)");
  sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sweep->add_option("--out", sweep_args.out_path, "CSV path (default stdout)");
  sweep->add_option("--dof", sweep_args.dof, "nu1|nu2|both");
  sweep->add_option("--bits", sweep_args.bits, "Phase bits for surface schemes");
  sweep->add_option("--max-passes", sweep_args.max_passes, "Local-search passes");
  sweep->add_option("--objective", sweep_args.objective, "power|coverage");
  sweep->add_option("--slot", sweep_args.slot, "Evaluation slot (default: closest pass)");
  sweep->add_option("--random-draws", sweep_args.random_draws,
                    "Baselines behind the random_phase median");
  sweep->add_flag("--measure-time", sweep_args.measure_time,
                  "Fill wall_ms (breaks byte-reproducibility)");
  sweep->add_option("--point-workers", sweep_args.point_workers, "Parallel grid points");
  sweep->add_option("--trial-workers", sweep_args.trial_workers,
                    "Threads per Monte-Carlo estimate (0 = auto)");

  OptimizeArgs opt_args;
  CLI::App* optimize = app.add_subcommand("optimize", "Select phases at one slot");
  optimize->add_option("--config", opt_args.config_path, "JSON config file");
  optimize->add_option("--slot", opt_args.slot, "Evaluation slot (default: closest pass)");
  optimize->add_option("--bits", opt_args.bits, "Phase bits");
  optimize->add_option("--max-passes", opt_args.max_passes, "Local-search passes");
  optimize->add_option("--objective", opt_args.objective, "power|coverage");
  optimize->add_option("--algorithm", opt_args.algorithm,
                       "local|exhaustive|aligned|continuous");
  optimize->add_option("--init", opt_args.init, "local-search start: aligned|random");
  optimize->add_option("--seed", opt_args.seed, "Seed for --init random");
  optimize->add_option("--draw", opt_args.draw, "Random-baseline index");
  optimize->add_option("--out", opt_args.out_path, "Phase CSV path (default stdout)");

  CommonArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("--config", validate_args.config_path, "JSON config file");

  SelftestArgs selftest_args;
  CLI::App* selftest =
      app.add_subcommand("selftest-special", "Special-function accuracy self-check");
  selftest->add_option("--points", selftest_args.points, "Random identity points");
  selftest->add_option("--seed", selftest_args.seed, "Point-generation seed");

  OracleArgs oracle_args;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Monte-Carlo vs closed forms at one point");
  oracle->add_option("--config", oracle_args.config_path, "JSON config file");
  oracle->add_option("--slot", oracle_args.slot, "Evaluation slot (default: closest pass)");
  oracle->add_option("--seed", oracle_args.seed, "Master seed");
  oracle->add_option("--trials", oracle_args.trials, "Monte-Carlo trials");
  oracle->add_option("--scheme", oracle_args.scheme,
                     "no_ris|random_phase|ris_local_search|ris_exhaustive|aligned|continuous");
  oracle->add_option("--bits", oracle_args.bits, "Phase bits");
  oracle->add_option("--max-passes", oracle_args.max_passes, "Local-search passes");
  oracle->add_option("--draw", oracle_args.draw, "Random-baseline index");
  oracle->add_option("--workers", oracle_args.workers, "Threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (optimize->parsed()) return run_optimize_cmd(opt_args);
    if (validate->parsed()) return run_validate_cmd(validate_args);
    if (selftest->parsed()) return run_selftest_cmd(selftest_args);
    if (oracle->parsed()) return run_oracle_cmd(oracle_args);
  } catch (const riscov::ConfigError& e) {
    print_config_errors(e);
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}

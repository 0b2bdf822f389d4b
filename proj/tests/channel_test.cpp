// SPDX-License-Identifier: Apache-2.0
//
// Rician link model tests: mixing weights, line-of-sight phase/attenuation,
// the counter addressing of fading draws (link 0 direct, 1..N feed hops,
// N+1..2N reflect hops), channel combining, and SNR. Reference numbers were
// frozen from 60-digit evaluations of the same expressions.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/geometry.hpp"
#include "riscov/rng.hpp"

using riscov::cdouble;
using riscov::ChannelParams;
using riscov::effective_channel;
using riscov::los_component;
using riscov::los_phase;
using riscov::mixing;
using riscov::sample_link_realization;
using riscov::ScenarioConfig;
using riscov::snr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

TEST_CASE("mixing weights") {
  auto m = mixing(10.0);
  CHECK(std::fabs(m.rho - 0.95346258924559231545) < 1e-15);
  CHECK(std::fabs(m.varrho - 0.30151134457776362265) < 1e-15);
  CHECK(std::fabs(m.rho * m.rho + m.varrho * m.varrho - 1.0) < 1e-15);

  auto pure_scatter = mixing(0.0);
  CHECK(pure_scatter.rho == 0.0);
  CHECK(pure_scatter.varrho == 1.0);

  auto pure_los = mixing(kInf);
  CHECK(pure_los.rho == 1.0);
  CHECK(pure_los.varrho == 0.0);

  CHECK_THROWS_AS((void)mixing(-0.5), std::domain_error);
  CHECK_THROWS_AS((void)mixing(std::nan("")), std::domain_error);
}

TEST_CASE("line-of-sight phase") {
  const double lam = 299792458.0 / 2.35e9;
  // Frozen: 2*pi * frac(d / lambda) at the default direct distance.
  CHECK(std::fabs(los_phase(50.559371040391710949, lam) -
                  2.026861895189226638226) < 1e-11);
  // An integer number of wavelengths has zero phase (d == lambda exactly;
  // 3*lambda only up to rounding, so measure circular distance from 0).
  CHECK(los_phase(lam, lam) == 0.0);
  double p3 = los_phase(3.0 * lam, lam);
  CHECK(std::min(p3, kTwoPi - p3) < 1e-12);
  // Periodicity in the distance.
  CHECK(std::fabs(los_phase(7.3, lam) - los_phase(7.3 + 2.0 * lam, lam)) < 1e-10);
  // Always inside [0, 2*pi).
  for (double d = 0.05; d < 10.0; d += 0.37) {
    double p = los_phase(d, lam);
    CHECK(p >= 0.0);
    CHECK(p < kTwoPi);
  }
  CHECK_THROWS_AS((void)los_phase(0.0, lam), std::domain_error);
  CHECK_THROWS_AS((void)los_phase(-1.0, lam), std::domain_error);
  CHECK_THROWS_AS((void)los_phase(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)los_phase(kInf, lam), std::domain_error);
}

TEST_CASE("line-of-sight component") {
  // |.| = d^(-eps/2), arg = -phase.
  cdouble c = los_component(50.0, 2.0, 0.0);
  CHECK(std::fabs(c.real() - 0.02) < 1e-16);
  CHECK(c.imag() == 0.0);

  cdouble c2 = los_component(4.0, 2.8, 1.0);
  CHECK(std::fabs(std::abs(c2) - std::pow(4.0, -1.4)) < 1e-15);
  CHECK(std::fabs(std::arg(c2) + 1.0) < 1e-15);

  CHECK_THROWS_AS((void)los_component(0.0, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)los_component(1.0, -2.0, 0.0), std::domain_error);
}

TEST_CASE("pure line-of-sight links are deterministic") {
  ScenarioConfig cfg;
  cfg.num_elements = 2;
  ChannelParams params;
  params.kappa_direct = kInf;
  params.kappa_bs_ris = kInf;
  params.kappa_ris_mr = kInf;

  auto r1 = sample_link_realization(cfg, params, 0, 0, 1);
  auto r2 = sample_link_realization(cfg, params, 0, 12345, 99);  // trial/seed ignored
  CHECK(r1.direct == r2.direct);
  REQUIRE(r1.bs_ris.size() == 2);
  for (int n = 0; n < 2; ++n) {
    CHECK(r1.bs_ris[n] == r2.bs_ris[n]);
    CHECK(r1.ris_mr[n] == r2.ris_mr[n]);
  }

  // And bitwise equal to the bare line-of-sight component.
  auto d = riscov::link_distances(cfg, 0);
  cdouble expect =
      los_component(d.d_direct_m, params.eps_direct,
                    los_phase(d.d_direct_m, params.wavelength_m));
  CHECK(r1.direct == expect);
}

TEST_CASE("fading draws use the documented link counter layout") {
  ScenarioConfig cfg;
  cfg.num_elements = 3;
  ChannelParams params;  // all kappa = 10, Rician
  const std::uint64_t seed = 77;
  const std::uint64_t trial = 4242;
  const int slot = 5;

  auto r = sample_link_realization(cfg, params, slot, trial, seed);
  auto d = riscov::link_distances(cfg, slot);
  auto m = mixing(10.0);
  auto s32 = static_cast<std::uint32_t>(slot);
  auto t32 = static_cast<std::uint32_t>(trial);

  // Reconstruct each link with the same expression shape; equality must be
  // bitwise because the Monte-Carlo fast path depends on it.
  auto rebuild = [&](double dist, double eps, double eps_nlos, std::uint32_t link) {
    cdouble los =
        m.rho * los_component(dist, eps, los_phase(dist, params.wavelength_m));
    cdouble w = riscov::standard_complex_normal(seed, s32, t32, link);
    return los + m.varrho * std::pow(dist, -0.5 * eps_nlos) * w;
  };

  CHECK(r.direct == rebuild(d.d_direct_m, params.eps_direct,
                            params.eps_direct_nlos, 0));
  for (std::uint32_t n = 0; n < 3; ++n) {
    CHECK(r.bs_ris[n] == rebuild(d.d_bs_ris_m[n], params.eps_bs_ris,
                                 params.eps_bs_ris_nlos, 1 + n));
    CHECK(r.ris_mr[n] == rebuild(d.d_ris_mr_m[n], params.eps_ris_mr,
                                 params.eps_ris_mr_nlos, 1 + 3 + n));
  }

  // Different trials give different draws; equal trials reproduce bitwise.
  auto r_same = sample_link_realization(cfg, params, slot, trial, seed);
  CHECK(r.direct == r_same.direct);
  auto r_next = sample_link_realization(cfg, params, slot, trial + 1, seed);
  CHECK(r.direct != r_next.direct);

  CHECK_THROWS_AS(
      (void)sample_link_realization(cfg, params, slot, 0x100000000ULL, seed),
      std::out_of_range);
}

TEST_CASE("effective channel combines cascade terms under applied phases") {
  riscov::LinkRealization links;
  links.direct = {1.0, 0.0};
  links.bs_ris = {{0.0, 1.0}, {2.0, 0.0}};
  links.ris_mr = {{1.0, 0.0}, {0.0, 3.0}};

  // Zero phases: h = direct + sum of plain products.
  std::vector<double> zero{0.0, 0.0};
  cdouble h = effective_channel(links, zero);
  CHECK(std::fabs(h.real() - 1.0) < 1e-15);
  CHECK(std::fabs(h.imag() - 7.0) < 1e-15);

  // A pi shift on one element flips the sign of its contribution.
  std::vector<double> flip{M_PI, 0.0};
  cdouble hf = effective_channel(links, flip);
  CHECK(std::fabs(hf.real() - 1.0) < 1e-14);
  CHECK(std::fabs(hf.imag() - 5.0) < 1e-14);

  // No elements: the direct path passes through untouched.
  riscov::LinkRealization direct_only;
  direct_only.direct = {0.25, -0.5};
  CHECK(effective_channel(direct_only, {}) == cdouble{0.25, -0.5});

  std::vector<double> wrong{0.0};
  CHECK_THROWS_AS((void)effective_channel(links, wrong), std::invalid_argument);
}

TEST_CASE("snr") {
  // 2 * |3+4i|^2 / 50 = 1.
  CHECK(snr({3.0, 4.0}, 2.0, 50.0) == 1.0);
  CHECK(snr({0.0, 0.0}, 1.0, 1e-12) == 0.0);
  CHECK_THROWS_AS((void)snr({1.0, 0.0}, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)snr({1.0, 0.0}, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)snr({1.0, 0.0}, kInf, 1.0), std::domain_error);
}

TEST_CASE("channel validation reports keyed violations") {
  ChannelParams p;
  p.kappa_direct = -1.0;
  p.eps_bs_ris = 0.0;
  p.wavelength_m = -2.0;
  auto errors = riscov::validate_channel(p);
  REQUIRE(errors.size() == 3);
  bool saw_kappa = false, saw_eps = false, saw_lam = false;
  for (const auto& e : errors) {
    if (e.find("channel.kappa_direct") != std::string::npos) saw_kappa = true;
    if (e.find("channel.eps_bs_ris") != std::string::npos) saw_eps = true;
    if (e.find("channel.wavelength_m") != std::string::npos) saw_lam = true;
  }
  CHECK(saw_kappa);
  CHECK(saw_eps);
  CHECK(saw_lam);
}

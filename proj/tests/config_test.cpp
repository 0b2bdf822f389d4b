// SPDX-License-Identifier: Apache-2.0
//
// Configuration loading tests: full-default semantics for an empty document,
// decibel conversions at the boundary, the mandatory speed unit suffix,
// derived defaults (element spacing, thermal noise), aggregated keyed error
// reporting, and the unit helpers.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "riscov/config.hpp"

using riscov::ConfigError;
using riscov::db_to_linear;
using riscov::dbm_to_watt;
using riscov::DofVariant;
using riscov::linear_to_db;
using riscov::LoadedConfig;
using riscov::parse_config_text;
using riscov::parse_speed_mps;
using riscov::thermal_noise_w;
using riscov::watt_to_dbm;

namespace {
bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

bool has_error(const ConfigError& e, const char* needle) {
  for (const auto& line : e.errors())
    if (line.find(needle) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("unit conversion helpers") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(watt_to_dbm(1e-3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // Round trip.
  CHECK(watt_to_dbm(dbm_to_watt(-17.3)) == doctest::Approx(-17.3).epsilon(1e-12));
  CHECK_THROWS_AS((void)linear_to_db(0.0), std::domain_error);
  CHECK_THROWS_AS((void)watt_to_dbm(-1.0), std::domain_error);

  // Frozen: -174 dBm/Hz + 10*log10(2e7) + 10 dB figure.
  CHECK(close_rel(thermal_noise_w(2e7, 10.0), 7.962143411069945e-13, 1e-12));
  CHECK_THROWS_AS((void)thermal_noise_w(0.0, 10.0), std::domain_error);
}

TEST_CASE("speed strings require an explicit unit") {
  CHECK(parse_speed_mps("100 m/s") == 100.0);
  // 360 km/h is exactly 100 m/s in IEEE arithmetic (360/3.6).
  CHECK(parse_speed_mps("360 km/h") == 100.0);
  CHECK(parse_speed_mps("72 km/h") == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(parse_speed_mps("  25.5    m/s  ") == 25.5);
  CHECK_THROWS_AS((void)parse_speed_mps("100"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_speed_mps("100 mph"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_speed_mps("fast"), std::invalid_argument);
}

TEST_CASE("empty document yields the reference deployment") {
  LoadedConfig cfg = parse_config_text("{}");
  CHECK(cfg.scenario.speed_mps == 100.0);
  CHECK(cfg.scenario.slot_duration_s == 1e-3);
  CHECK(cfg.scenario.num_slots == 1000);
  CHECK(cfg.scenario.bs_height_m == 10.0);
  CHECK(cfg.scenario.ris_height_m == 2.0);
  CHECK(cfg.scenario.mr_height_m == 2.5);
  CHECK(cfg.scenario.bs_track_offset_m == 50.0);
  CHECK(cfg.scenario.ris_track_offset_m == 5.0);
  CHECK(cfg.scenario.num_elements == 16);
  CHECK(cfg.scenario.carrier_hz == 2.35e9);
  CHECK(cfg.scenario.bandwidth_hz == 2e7);
  CHECK(cfg.scenario.element_spacing_m ==
        0.5 * riscov::speed_of_light_mps / 2.35e9);

  // 10 dB Rician factors arrive linear.
  CHECK(close_rel(cfg.params.kappa_direct, 10.0, 1e-14));
  CHECK(close_rel(cfg.params.kappa_bs_ris, 10.0, 1e-14));
  CHECK(close_rel(cfg.params.kappa_ris_mr, 10.0, 1e-14));
  CHECK(cfg.params.eps_direct == 2.0);
  CHECK(cfg.params.eps_direct_nlos == 2.8);
  CHECK(cfg.params.wavelength_m == riscov::speed_of_light_mps / 2.35e9);

  // 0 dBm power, 50 dB threshold, thermal noise at a 10 dB figure.
  CHECK(close_rel(cfg.query.power_w, 1e-3, 1e-14));
  CHECK(close_rel(cfg.query.snr_threshold, 1e5, 1e-14));
  CHECK(cfg.query.noise_w == thermal_noise_w(2e7, 10.0));
  CHECK(cfg.query.dof == DofVariant::complex_nu2);
}

TEST_CASE("explicit values reach every section") {
  LoadedConfig cfg = parse_config_text(R"({
    "scenario": {
      "speed": "180 km/h",
      "slot_duration_s": 2e-3,
      "num_slots": 500,
      "bs_height_m": 12.0,
      "ris_height_m": 3.0,
      "mr_height_m": 2.0,
      "bs_track_offset_m": 40.0,
      "ris_track_offset_m": 6.0,
      "bs_along_track_m": 25.0,
      "bs_ris_horizontal_m": -10.0,
      "mr_initial_along_track_m": -50.0,
      "num_elements": 64,
      "element_spacing_m": 0.05,
      "carrier_hz": 3.5e9,
      "bandwidth_hz": 1e7
    },
    "channel": {
      "kappa_direct_db": 3.0,
      "kappa_bs_ris_db": 13.0,
      "kappa_ris_mr_db": 7.0,
      "eps_direct": 2.2,
      "eps_bs_ris": 2.1,
      "eps_ris_mr": 2.3,
      "eps_direct_nlos": 3.0,
      "eps_bs_ris_nlos": 2.9,
      "eps_ris_mr_nlos": 3.1
    },
    "query": {
      "power_dbm": -10.0,
      "snr_threshold_db": 40.0,
      "noise_figure_db": 6.0,
      "dof": "nu1"
    }
  })");
  CHECK(cfg.scenario.speed_mps == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(cfg.scenario.num_slots == 500);
  CHECK(cfg.scenario.num_elements == 64);
  CHECK(cfg.scenario.element_spacing_m == 0.05);  // explicit beats the default
  CHECK(cfg.params.wavelength_m ==
        riscov::speed_of_light_mps / 3.5e9);  // follows the carrier
  CHECK(close_rel(cfg.params.kappa_direct, db_to_linear(3.0), 1e-14));
  CHECK(close_rel(cfg.params.kappa_bs_ris, db_to_linear(13.0), 1e-14));
  CHECK(cfg.params.eps_ris_mr == 2.3);
  CHECK(close_rel(cfg.query.power_w, 1e-4, 1e-14));
  CHECK(close_rel(cfg.query.snr_threshold, 1e4, 1e-14));
  CHECK(cfg.query.noise_w == thermal_noise_w(1e7, 6.0));
  CHECK(cfg.query.dof == DofVariant::paper_nu1);

  // Spacing tracks a changed carrier when not given explicitly.
  LoadedConfig follow =
      parse_config_text(R"({"scenario": {"carrier_hz": 4.7e9}})");
  CHECK(follow.scenario.element_spacing_m ==
        0.5 * riscov::speed_of_light_mps / 4.7e9);

  // Direct noise override.
  LoadedConfig noise = parse_config_text(R"({"query": {"noise_w": 1e-12}})");
  CHECK(noise.query.noise_w == 1e-12);
}

TEST_CASE("bare-number speed is rejected with guidance") {
  try {
    (void)parse_config_text(R"({"scenario": {"speed": 100}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "scenario.speed"));
    CHECK(has_error(e, "unit suffix"));
  }
  try {
    (void)parse_config_text(R"({"scenario": {"speed": "100 mph"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "scenario.speed"));
  }
}

TEST_CASE("unknown keys and sections are reported with their path") {
  try {
    (void)parse_config_text(R"({"scenario": {"bandwith_hz": 1e7}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "scenario.bandwith_hz"));
    CHECK(has_error(e, "unknown key"));
  }
  try {
    (void)parse_config_text(R"({"scenari": {}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "scenari"));
    CHECK(has_error(e, "expected scenario/channel/query"));
  }
  CHECK_THROWS_AS((void)parse_config_text("[1, 2]"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("not json"), ConfigError);
}

TEST_CASE("violations are aggregated, not truncated") {
  try {
    (void)parse_config_text(R"({
      "scenario": {"bandwidth_hz": -1.0, "num_elements": -4},
      "channel": {"eps_direct": 0.0},
      "query": {"snr_threshold_db": 1e9}
    })");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    // num_elements is caught by the integer range check; the others by the
    // section validators. snr 1e9 dB overflows to an infinite linear value.
    CHECK(e.errors().size() >= 4);
    CHECK(has_error(e, "scenario.bandwidth_hz"));
    CHECK(has_error(e, "scenario.num_elements"));
    CHECK(has_error(e, "channel.eps_direct"));
    CHECK(has_error(e, "query.snr_threshold"));
    // what() carries every line for plain std::exception consumers.
    std::string joined = e.what();
    CHECK(joined.find("scenario.bandwidth_hz") != std::string::npos);
    CHECK(joined.find("channel.eps_direct") != std::string::npos);
  }
}

TEST_CASE("noise specifications are mutually exclusive") {
  try {
    (void)parse_config_text(
        R"({"query": {"noise_w": 1e-12, "noise_figure_db": 10.0}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "query.noise_w"));
    CHECK(has_error(e, "conflicts with noise_figure_db"));
  }
}

TEST_CASE("dof selector accepts exactly nu1 and nu2") {
  CHECK(parse_config_text(R"({"query": {"dof": "nu2"}})").query.dof ==
        DofVariant::complex_nu2);
  try {
    (void)parse_config_text(R"({"query": {"dof": "nu3"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "query.dof"));
  }
}

TEST_CASE("type violations carry the offending key") {
  try {
    (void)parse_config_text(R"({"scenario": {"num_slots": 2.5}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "scenario.num_slots"));
    CHECK(has_error(e, "integer"));
  }
  try {
    (void)parse_config_text(R"({"query": {"dof": 2}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(has_error(e, "query.dof"));
  }
}

TEST_CASE("config files load through the same pipeline") {
  const char* path = "riscov_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"query": {"power_dbm": -5.0}})";
  }
  LoadedConfig cfg = riscov::load_config_file(path);
  CHECK(close_rel(cfg.query.power_w, dbm_to_watt(-5.0), 1e-15));
  std::remove(path);

  CHECK_THROWS_AS((void)riscov::load_config_file("riscov_missing_config.json"),
                  ConfigError);
}

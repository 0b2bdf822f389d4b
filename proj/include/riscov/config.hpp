// SPDX-License-Identifier: Apache-2.0
//
// JSON configuration loading with full-default semantics: an empty document
// yields the reference deployment (360 km/h train, 10/2/2.5 m heights, 20 MHz
// at 2.35 GHz, 10 dB Rician factors, thermal noise with a 10 dB receiver
// figure). Every violation is collected (not just the first) and reported
// with its key path. Decibel quantities are converted to linear scale here,
// at the boundary, and nowhere else.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/coverage.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

// dB / dBm conversions.
double db_to_linear(double db);      // 10^(db/10)
double linear_to_db(double linear);  // 10*log10(x)
double dbm_to_watt(double dbm);      // 1e-3 * 10^(dbm/10)
double watt_to_dbm(double watt);

// Thermal noise power: -174 dBm/Hz + 10*log10(bandwidth) + noise figure.
double thermal_noise_w(double bandwidth_hz, double noise_figure_db);

// "<number> m/s" or "<number> km/h"; the unit suffix is mandatory.
double parse_speed_mps(const std::string& text);

struct LoadedConfig {
  ScenarioConfig scenario;
  ChannelParams params;
  CoverageQuery query;
};

// Aggregated validation report; `errors` holds one "key.path: message" line
// per violation and what() joins them.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Parses a JSON document with optional "scenario", "channel" and "query"
// sections (schema in README.md). Unknown keys are errors. Throws ConfigError
// listing every violation.
LoadedConfig parse_config_text(const std::string& text);

// parse_config_text over the file contents; unreadable file -> ConfigError.
LoadedConfig load_config_file(const std::string& path);

}  // namespace riscov

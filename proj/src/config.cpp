// SPDX-License-Identifier: Apache-2.0

#include "riscov/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace riscov {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
  if (!(linear > 0.0)) throw std::domain_error("linear_to_db: value must be > 0");
  return 10.0 * std::log10(linear);
}

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watt_to_dbm(double watt) {
  if (!(watt > 0.0)) throw std::domain_error("watt_to_dbm: value must be > 0");
  return 10.0 * std::log10(watt / 1e-3);
}

double thermal_noise_w(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
    throw std::domain_error("thermal_noise_w: bandwidth must be finite and > 0");
  return dbm_to_watt(-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

double parse_speed_mps(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin)
    throw std::invalid_argument("speed: expected \"<number> m/s\" or \"<number> km/h\"");
  std::string unit(end);
  std::size_t lo = unit.find_first_not_of(" \t");
  std::size_t hi = unit.find_last_not_of(" \t");
  unit = lo == std::string::npos ? "" : unit.substr(lo, hi - lo + 1);
  if (unit == "m/s") return value;
  if (unit == "km/h") return value / 3.6;
  throw std::invalid_argument("speed: unit suffix must be \"m/s\" or \"km/h\"");
}

namespace {

std::string join_lines(const std::vector<std::string>& errors) {
  std::ostringstream out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) out << '\n';
    out << errors[i];
  }
  return out.str();
}

// Accumulates "key.path: message" lines while pulling typed values out of one
// JSON section; unknown keys are reported, known ones are consumed.
class SectionReader {
 public:
  SectionReader(const json& section, std::string prefix,
                std::vector<std::string>& errors)
      : section_(section), prefix_(std::move(prefix)), errors_(errors) {}

  void number(const char* key, double& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) {
      fail(key, "must be a number");
      return;
    }
    out = v->get<double>();
  }

  void integer(const char* key, int& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer()) {
      fail(key, "must be an integer");
      return;
    }
    auto raw = v->get<std::int64_t>();
    if (raw < 0 || raw > 1000000000) {
      fail(key, "must be in [0, 1e9]");
      return;
    }
    out = static_cast<int>(raw);
  }

  void text(const char* key, std::string& out, bool& present) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) {
      fail(key, "must be a string");
      return;
    }
    out = v->get<std::string>();
    present = true;
  }

  bool seen(const char* key) const {
    return std::find(used_.begin(), used_.end(), key) != used_.end() &&
           section_.contains(key);
  }

  void finish() {
    for (auto it = section_.begin(); it != section_.end(); ++it)
      if (std::find(used_.begin(), used_.end(), it.key()) == used_.end())
        fail(it.key().c_str(), "unknown key");
  }

  void fail(const char* key, const std::string& message) {
    errors_.push_back(prefix_ + "." + key + ": " + message);
  }

 private:
  const json* take(const char* key) {
    used_.emplace_back(key);
    auto it = section_.find(key);
    return it == section_.end() ? nullptr : &*it;
  }

  const json& section_;
  std::string prefix_;
  std::vector<std::string>& errors_;
  std::vector<std::string> used_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_lines(errors)), errors_(std::move(errors)) {}

LoadedConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }

  std::vector<std::string> errors;
  if (!doc.is_object()) {
    throw ConfigError({"config: top level must be a JSON object"});
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "scenario" && k != "channel" && k != "query")
      errors.push_back(k + ": unknown section (expected scenario/channel/query)");
    else if (!it->is_object())
      errors.push_back(k + ": must be an object");
  }

  LoadedConfig cfg;  // struct defaults already carry the reference deployment
  static const json kEmpty = json::object();
  auto section = [&](const char* name) -> const json& {
    auto it = doc.find(name);
    return it != doc.end() && it->is_object() ? *it : kEmpty;
  };

  // -- scenario ------------------------------------------------------------
  {
    SectionReader r(section("scenario"), "scenario", errors);
    std::string speed_text;
    bool speed_given = false;
    r.text("speed", speed_text, speed_given);
    if (section("scenario").contains("speed") &&
        section("scenario")["speed"].is_number())
      r.fail("speed", "unit suffix required, e.g. \"360 km/h\" or \"100 m/s\"");
    if (speed_given) {
      try {
        cfg.scenario.speed_mps = parse_speed_mps(speed_text);
      } catch (const std::invalid_argument& e) {
        r.fail("speed", e.what());
      }
    }
    r.number("slot_duration_s", cfg.scenario.slot_duration_s);
    r.integer("num_slots", cfg.scenario.num_slots);
    r.number("bs_height_m", cfg.scenario.bs_height_m);
    r.number("ris_height_m", cfg.scenario.ris_height_m);
    r.number("mr_height_m", cfg.scenario.mr_height_m);
    r.number("bs_track_offset_m", cfg.scenario.bs_track_offset_m);
    r.number("ris_track_offset_m", cfg.scenario.ris_track_offset_m);
    r.number("bs_along_track_m", cfg.scenario.bs_along_track_m);
    r.number("bs_ris_horizontal_m", cfg.scenario.bs_ris_horizontal_m);
    r.number("mr_initial_along_track_m", cfg.scenario.mr_initial_along_track_m);
    r.integer("num_elements", cfg.scenario.num_elements);
    double spacing = 0.0;
    r.number("element_spacing_m", spacing);
    r.number("carrier_hz", cfg.scenario.carrier_hz);
    r.number("bandwidth_hz", cfg.scenario.bandwidth_hz);
    // Spacing follows the carrier (half wavelength) unless set explicitly.
    if (r.seen("element_spacing_m"))
      cfg.scenario.element_spacing_m = spacing;
    else if (cfg.scenario.carrier_hz > 0.0 && std::isfinite(cfg.scenario.carrier_hz))
      cfg.scenario.element_spacing_m =
          0.5 * speed_of_light_mps / cfg.scenario.carrier_hz;
    r.finish();
  }

  // -- channel ---------------------------------------------------------------
  {
    SectionReader r(section("channel"), "channel", errors);
    double kd_db = 10.0, kg_db = 10.0, kr_db = 10.0;
    r.number("kappa_direct_db", kd_db);
    r.number("kappa_bs_ris_db", kg_db);
    r.number("kappa_ris_mr_db", kr_db);
    cfg.params.kappa_direct = db_to_linear(kd_db);
    cfg.params.kappa_bs_ris = db_to_linear(kg_db);
    cfg.params.kappa_ris_mr = db_to_linear(kr_db);
    r.number("eps_direct", cfg.params.eps_direct);
    r.number("eps_bs_ris", cfg.params.eps_bs_ris);
    r.number("eps_ris_mr", cfg.params.eps_ris_mr);
    r.number("eps_direct_nlos", cfg.params.eps_direct_nlos);
    r.number("eps_bs_ris_nlos", cfg.params.eps_bs_ris_nlos);
    r.number("eps_ris_mr_nlos", cfg.params.eps_ris_mr_nlos);
    r.finish();
  }
  if (cfg.scenario.carrier_hz > 0.0 && std::isfinite(cfg.scenario.carrier_hz))
    cfg.params.wavelength_m = speed_of_light_mps / cfg.scenario.carrier_hz;

  // -- query -----------------------------------------------------------------
  {
    SectionReader r(section("query"), "query", errors);
    double power_dbm = 0.0, threshold_db = 50.0, noise_figure_db = 10.0;
    double noise_w = -1.0;
    r.number("power_dbm", power_dbm);
    r.number("snr_threshold_db", threshold_db);
    r.number("noise_figure_db", noise_figure_db);
    r.number("noise_w", noise_w);
    std::string dof;
    bool dof_given = false;
    r.text("dof", dof, dof_given);
    if (r.seen("noise_w") && r.seen("noise_figure_db"))
      r.fail("noise_w", "conflicts with noise_figure_db; give one or the other");
    cfg.query.power_w = dbm_to_watt(power_dbm);
    cfg.query.snr_threshold = db_to_linear(threshold_db);
    if (r.seen("noise_w"))
      cfg.query.noise_w = noise_w;
    else if (cfg.scenario.bandwidth_hz > 0.0 &&
             std::isfinite(cfg.scenario.bandwidth_hz))
      cfg.query.noise_w = thermal_noise_w(cfg.scenario.bandwidth_hz, noise_figure_db);
    if (dof_given) {
      if (dof == "nu1")
        cfg.query.dof = DofVariant::paper_nu1;
      else if (dof == "nu2")
        cfg.query.dof = DofVariant::complex_nu2;
      else
        r.fail("dof", "must be \"nu1\" or \"nu2\"");
    }
    r.finish();
  }

  for (const auto& e : validate_scenario(cfg.scenario)) errors.push_back(e);
  for (const auto& e : validate_channel(cfg.params)) errors.push_back(e);
  for (const auto& e : validate_query(cfg.query)) errors.push_back(e);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"config: cannot read '" + path + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace riscov

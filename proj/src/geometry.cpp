// SPDX-License-Identifier: Apache-2.0

#include "riscov/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace riscov {

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const char* msg) {
    if (!ok) errors.emplace_back(msg);
  };
  require(std::isfinite(cfg.speed_mps) && cfg.speed_mps >= 0.0,
          "scenario.speed: must be finite and >= 0");
  require(std::isfinite(cfg.slot_duration_s) && cfg.slot_duration_s > 0.0,
          "scenario.slot_duration_s: must be > 0");
  require(cfg.num_slots >= 1, "scenario.num_slots: must be >= 1");
  require(cfg.bs_height_m > 0.0, "scenario.bs_height_m: must be > 0");
  require(cfg.ris_height_m > 0.0, "scenario.ris_height_m: must be > 0");
  require(cfg.mr_height_m > 0.0, "scenario.mr_height_m: must be > 0");
  require(cfg.bs_track_offset_m > 0.0,
          "scenario.bs_track_offset_m: must be > 0 (BS cannot sit on the track)");
  require(cfg.ris_track_offset_m > 0.0,
          "scenario.ris_track_offset_m: must be > 0 (surface cannot sit on the track)");
  require(std::isfinite(cfg.bs_along_track_m), "scenario.bs_along_track_m: must be finite");
  require(std::isfinite(cfg.bs_ris_horizontal_m),
          "scenario.bs_ris_horizontal_m: must be finite");
  require(std::isfinite(cfg.mr_initial_along_track_m),
          "scenario.mr_initial_along_track_m: must be finite");
  require(cfg.num_elements >= 0, "scenario.num_elements: must be >= 0");
  require(std::isfinite(cfg.element_spacing_m) && cfg.element_spacing_m > 0.0,
          "scenario.element_spacing_m: must be > 0");
  require(std::isfinite(cfg.carrier_hz) && cfg.carrier_hz > 0.0,
          "scenario.carrier_hz: must be > 0");
  require(std::isfinite(cfg.bandwidth_hz) && cfg.bandwidth_hz > 0.0,
          "scenario.bandwidth_hz: must be > 0");
  return errors;
}

Point3 bs_position(const ScenarioConfig& cfg) {
  return {cfg.bs_along_track_m, -cfg.bs_track_offset_m, cfg.bs_height_m};
}

Point3 mr_position(const ScenarioConfig& cfg, int slot) {
  if (slot < 0 || slot >= cfg.num_slots)
    throw std::out_of_range("mr_position: slot " + std::to_string(slot) +
                            " outside [0, " + std::to_string(cfg.num_slots) + ")");
  double x = cfg.mr_initial_along_track_m +
             cfg.speed_mps * cfg.slot_duration_s * static_cast<double>(slot);
  return {x, 0.0, cfg.mr_height_m};
}

std::vector<Point3> ris_element_positions(const ScenarioConfig& cfg) {
  std::vector<Point3> pos;
  pos.reserve(static_cast<std::size_t>(cfg.num_elements));
  double center_x = cfg.bs_along_track_m + cfg.bs_ris_horizontal_m;
  double n_minus_1 = static_cast<double>(cfg.num_elements - 1);
  for (int n = 0; n < cfg.num_elements; ++n) {
    // n-th element offset from the array center, array centered on center_x
    double off = (static_cast<double>(n) - 0.5 * n_minus_1) * cfg.element_spacing_m;
    pos.push_back({center_x + off, -cfg.ris_track_offset_m, cfg.ris_height_m});
  }
  return pos;
}

double euclidean_distance(const Point3& a, const Point3& b) {
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

LinkDistances link_distances(const ScenarioConfig& cfg, int slot) {
  Point3 bs = bs_position(cfg);
  Point3 mr = mr_position(cfg, slot);
  std::vector<Point3> elements = ris_element_positions(cfg);
  LinkDistances d;
  d.d_direct_m = euclidean_distance(bs, mr);
  d.d_bs_ris_m.reserve(elements.size());
  d.d_ris_mr_m.reserve(elements.size());
  for (const Point3& e : elements) {
    d.d_bs_ris_m.push_back(euclidean_distance(bs, e));
    d.d_ris_mr_m.push_back(euclidean_distance(e, mr));
  }
  return d;
}

int nearest_approach_slot(const ScenarioConfig& cfg) {
  double per_slot = cfg.speed_mps * cfg.slot_duration_s;
  if (per_slot <= 0.0) return 0;
  // continuous minimizer of |x0 + v*tau*s - bs_x|
  double s_star = (cfg.bs_along_track_m - cfg.mr_initial_along_track_m) / per_slot;
  auto clamp = [&](double s) {
    if (s < 0.0) return 0;
    if (s > static_cast<double>(cfg.num_slots - 1)) return cfg.num_slots - 1;
    return static_cast<int>(s);
  };
  int lo = clamp(std::floor(s_star));
  int hi = clamp(std::ceil(s_star));
  auto dist = [&](int s) {
    return std::fabs(cfg.mr_initial_along_track_m + per_slot * static_cast<double>(s) -
                     cfg.bs_along_track_m);
  };
  return (dist(lo) <= dist(hi)) ? lo : hi;
}

}  // namespace riscov

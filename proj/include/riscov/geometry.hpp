// SPDX-License-Identifier: Apache-2.0
//
// Deployment geometry for a linear-track downlink: a base station and a
// reconfigurable reflecting surface sit on the same side of a straight
// track, a mobile receiver rides along the track at constant speed.
// Axes: x runs along the track, y is the horizontal offset from it
// (deployment side is negative y), z is height above ground.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace riscov {

inline constexpr double speed_of_light_mps = 299792458.0;

struct Point3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};
};

struct ScenarioConfig {
  double speed_mps{100.0};        // receiver speed along the track
  double slot_duration_s{1e-3};   // time step between receiver positions
  int num_slots{1000};            // trajectory length in slots

  double bs_height_m{10.0};
  double ris_height_m{2.0};
  double mr_height_m{2.5};

  double bs_track_offset_m{50.0};   // perpendicular BS-to-track distance
  double ris_track_offset_m{5.0};   // perpendicular surface-to-track distance
  double bs_along_track_m{0.0};     // BS anchor on the track axis
  double bs_ris_horizontal_m{0.0};  // surface center relative to the BS, along the track
  double mr_initial_along_track_m{0.0};

  int num_elements{16};
  // Default spacing is half a wavelength at the default carrier.
  double element_spacing_m{0.5 * speed_of_light_mps / 2.35e9};

  double carrier_hz{2.35e9};
  double bandwidth_hz{2.0e7};

  double wavelength_m() const { return speed_of_light_mps / carrier_hz; }
};

struct LinkDistances {
  double d_direct_m{0.0};            // BS -> receiver
  std::vector<double> d_bs_ris_m;    // BS -> element n
  std::vector<double> d_ris_mr_m;    // element n -> receiver
};

// Returns human-readable violations ("scenario.<field>: ...”); empty means valid.
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

Point3 bs_position(const ScenarioConfig& cfg);
// Throws std::out_of_range unless 0 <= slot < num_slots.
Point3 mr_position(const ScenarioConfig& cfg, int slot);
// Element centers on a track-parallel line, centered on the surface center.
std::vector<Point3> ris_element_positions(const ScenarioConfig& cfg);

double euclidean_distance(const Point3& a, const Point3& b);

LinkDistances link_distances(const ScenarioConfig& cfg, int slot);

// Slot at which the receiver passes closest to the foot of the BS
// perpendicular; ties resolve to the smaller slot index.
int nearest_approach_slot(const ScenarioConfig& cfg);

}  // namespace riscov

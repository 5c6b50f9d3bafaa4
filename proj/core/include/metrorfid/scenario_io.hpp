#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "metrorfid/scenario.hpp"

namespace metrorfid {

// Scenario documents are JSON objects with the sections
//   track       list of segments {id, start_pos, length, kind, speed_limit}
//               kind: {"type": "straight"} | {"type": "curve", "direction":
//               "left"|"right", "radius"} | {"type": "slope", "grade"} |
//               {"type": "station_zone", "stop_point"}
//   tagdb       optional flat list {tag_code, condition}; rebuilt from the
//               track when absent
//   radio       ref_power_dbm, path_loss_exponent, noise_sigma_db,
//               read_range_m, read_probability
//   controller  service_decel, max_decel, lateral_accel_max, stop_margin,
//               cruise_speed, rpm_step, tick_dt
//   hazard      {"type": "none" | "human" | "stopped_train" | "sharp_turn",
//               "position" | "segment_id"}
//   max_ticks
// plus optional tag_advance, dynamics {derail_accel, collision_speed},
// train {mass, wheel_radius} and sharp_turn_radius. Every field other than
// track defaults. Unknown keys are rejected.
//
// Any malformed or invalid document raises ConfigError.
Scenario load_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::filesystem::path& path);

// Writes every section, including the tag database. Loading the output
// yields an equal scenario.
std::string dump_scenario(const Scenario& scenario);

}  // namespace metrorfid

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "metrorfid/controller.hpp"
#include "metrorfid/dynamics.hpp"
#include "metrorfid/radio.hpp"
#include "metrorfid/tagdb.hpp"
#include "metrorfid/track.hpp"

namespace metrorfid {

struct NoHazard {
  bool operator==(const NoHazard&) const = default;
};
struct HumanHazard {
  double position = 0.0;
  bool operator==(const HumanHazard&) const = default;
};
struct StoppedTrainHazard {
  double position = 0.0;  // rear of the stopped train
  bool operator==(const StoppedTrainHazard&) const = default;
};
// A curve too tight to enter at cruise speed. Its warning tag is in place.
struct SharpTurnHazard {
  int segment_id = 0;
  bool operator==(const SharpTurnHazard&) const = default;
};

using Hazard = std::variant<NoHazard, HumanHazard, StoppedTrainHazard, SharpTurnHazard>;

struct TrainConfig {
  double mass = 200000.0;  // kg
  double wheel_radius = 0.43;
  bool operator==(const TrainConfig&) const = default;
};

inline constexpr double kDefaultSharpTurnRadius = 150.0;
inline constexpr Tick kDefaultMaxTicks = 6000;

struct Scenario {
  Track track;
  double tag_advance = kDefaultTagAdvance;
  std::vector<TagInstallation> tags;  // fixed infrastructure tags
  TagDatabase db;
  Hazard hazard = NoHazard{};
  RadioParams radio;
  ControlParams control;
  DynamicsParams dynamics;
  TrainConfig train;
  Tick max_ticks = kDefaultMaxTicks;
  // Radius given to the curve picked for a generated sharp-turn hazard.
  double sharp_turn_radius = kDefaultSharpTurnRadius;

  // The obstacle the hazard puts on the line, if any.
  std::vector<Obstacle> obstacles() const;

  // Throws ConfigError when a parameter block is invalid, the hazard lies
  // off the track, a sharp turn does not name a curve whose curve speed is
  // below cruise, or an infrastructure tag has no database record.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

// Tags and database derived from the track, defaults everywhere else.
Scenario make_scenario(Track track, double tag_advance = kDefaultTagAdvance);

// Re-places tags and rebuilds the database after the track changed.
void rebuild_tags(Scenario& scenario);

// The reference 2 km line: two slopes, two curves and a terminal station,
// cruise at 16.67 m/s, no hazard.
Scenario default_scenario();

}  // namespace metrorfid

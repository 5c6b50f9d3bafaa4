#include "metrorfid/scenario.hpp"

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

std::vector<Obstacle> Scenario::obstacles() const {
  if (const auto* h = std::get_if<HumanHazard>(&hazard)) {
    return {Obstacle{h->position, ObstacleClass::Human, human_tag_code(1)}};
  }
  if (const auto* t = std::get_if<StoppedTrainHazard>(&hazard)) {
    return {Obstacle{t->position, ObstacleClass::StoppedTrain, train_rear_tag_code(1)}};
  }
  return {};
}

void Scenario::validate() const {
  radio.validate();
  control.validate();
  dynamics.validate();
  if (max_ticks <= 0) throw ConfigError("max_ticks must be positive");
  if (!(train.mass > 0.0 && train.wheel_radius > 0.0)) {
    throw ConfigError("train mass and wheel radius must be positive");
  }
  if (!(sharp_turn_radius >= kMinCurveRadius)) {
    throw ConfigError("sharp_turn_radius below minimum curve radius");
  }
  for (const auto& obstacle : obstacles()) {
    if (!(obstacle.position >= 0.0 && obstacle.position < track.length())) {
      throw ConfigError(fmt::format("hazard position {} outside track", obstacle.position));
    }
  }
  if (const auto* sharp = std::get_if<SharpTurnHazard>(&hazard)) {
    const TrackSegment* seg = track.find_segment(sharp->segment_id);
    const Curve* curve = seg ? seg->as<Curve>() : nullptr;
    if (curve == nullptr) {
      throw ConfigError(fmt::format("sharp turn segment {} is not a curve", sharp->segment_id));
    }
    if (!(curve_speed_limit(curve->radius, control.lateral_accel_max) < control.cruise_speed)) {
      throw ConfigError(
          fmt::format("sharp turn segment {} can be taken at cruise speed", sharp->segment_id));
    }
  }
  for (const auto& tag : tags) {
    if (tag.tag_class == TagClass::Infrastructure && !db.try_restore(tag.tag_code)) {
      throw ConfigError(fmt::format("tag {} has no database record", tag.tag_code));
    }
  }
}

Scenario make_scenario(Track track, double tag_advance) {
  Scenario s;
  s.track = std::move(track);
  s.tag_advance = tag_advance;
  rebuild_tags(s);
  return s;
}

void rebuild_tags(Scenario& scenario) {
  scenario.tags = place_tags(scenario.track, scenario.tag_advance);
  scenario.db = build_database(scenario.track, scenario.tags);
}

Scenario default_scenario() {
  constexpr double kLineLimit = 22.22;
  constexpr double kStationLimit = 16.67;
  std::vector<TrackSegment> segments{
      {1, 0.0, 300.0, Straight{}, kLineLimit},
      {2, 300.0, 300.0, Slope{20.0}, kLineLimit},
      {3, 600.0, 200.0, Straight{}, kLineLimit},
      {4, 800.0, 200.0, Curve{Direction::Right, 400.0}, kLineLimit},
      {5, 1000.0, 200.0, Slope{-15.0}, kLineLimit},
      {6, 1200.0, 100.0, Straight{}, kLineLimit},
      {7, 1300.0, 200.0, Curve{Direction::Left, 500.0}, kLineLimit},
      {8, 1500.0, 200.0, Straight{}, kLineLimit},
      {9, 1700.0, 300.0, StationZone{1900.0}, kStationLimit},
  };
  return make_scenario(build_track(std::move(segments)));
}

}  // namespace metrorfid

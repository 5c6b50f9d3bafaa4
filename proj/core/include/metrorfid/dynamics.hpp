#pragma once

#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "metrorfid/track.hpp"
#include "metrorfid/units.hpp"

namespace metrorfid {

// One tick of actuation. Deltas are per-tick rpm changes; the motor delta
// drives both sides. When brake is set the deltas carry no traction and
// brake_decel (m/s^2, before the physical cap) governs the speed change.
struct ActuationCommand {
  double delta_motor_rpm = 0.0;
  double delta_left_rpm = 0.0;
  double delta_right_rpm = 0.0;
  bool brake = false;
  double brake_decel = 0.0;

  bool is_zero() const {
    return delta_motor_rpm == 0.0 && delta_left_rpm == 0.0 && delta_right_rpm == 0.0 && !brake;
  }
  bool operator==(const ActuationCommand&) const = default;
};

struct TrainState {
  double front_pos = 0.0;
  double speed = 0.0;
  double motor_rpm = 0.0;
  double left_rpm = 0.0;
  double right_rpm = 0.0;
  double mass = 200000.0;
  double wheel_radius = 0.43;
  bool controller_enabled = true;

  double mean_rpm() const { return 0.5 * (left_rpm + right_rpm); }
  bool operator==(const TrainState&) const = default;
};

struct DynamicsParams {
  double max_decel = 1.2;        // physical brake cap
  double derail_accel = 1.5;     // lateral acceleration that throws the train off a curve
  double collision_speed = 0.5;  // contact at or below this speed is not an incident

  // Throws ConfigError on non-positive values.
  void validate() const;
  bool operator==(const DynamicsParams&) const = default;
};

double speed_from_rpm(double rpm, double wheel_radius);
double rpm_from_speed(double speed, double wheel_radius);

// sqrt(lateral_accel_max * radius).
double curve_speed_limit(double radius, double lateral_accel_max);

// Inner/outer wheel rpm ratio for slip-free cornering, (R - g/2) / (R + g/2).
// Throws DomainError when radius <= gauge / 2.
double differential_ratio(double radius, double gauge = kStandardGauge);

// A train rolling at `speed` with both wheel sets matched to it.
TrainState make_train(double front_pos, double speed, double mass = 200000.0,
                      double wheel_radius = 0.43);

// Advances the train one tick.
//  - brake: speed drops by min(brake_decel, max_decel) * dt; rpm deltas are
//    not applied; the grade force adds on slope segments.
//  - otherwise: rpm deltas apply (motor delta to both sides, rpm >= 0); the
//    grade force applies when the motor delta is zero (coasting).
// Off curve segments a rigid axle forces both sides to their mean rpm.
// Position advances by the mean speed over the tick, which is exact for
// piecewise-constant acceleration including a stop part-way through it.
TrainState step(const TrainState& state, const ActuationCommand& cmd, const TrackSegment& segment,
                double dt, const DynamicsParams& params = {});

enum class IncidentKind { CollisionHuman, CollisionTrain, Derailment };

struct Incident {
  IncidentKind kind = IncidentKind::CollisionHuman;
  Tick tick = 0;
  double position = 0.0;
  double speed_at_event = 0.0;
  bool operator==(const Incident&) const = default;
};

// Remembers what has been reported so each (kind, obstacle/curve) pair
// yields one incident per trip.
class IncidentDetector {
 public:
  // Collision when the front crosses an obstacle (prev < pos <= current)
  // faster than collision_speed; derailment when inside a curve with
  // v^2 / R > derail_accel. Returns only incidents not reported before.
  std::vector<Incident> detect(const TrainState& state, const TrainState& prev_state,
                               const Track& track, std::span<const Obstacle> obstacles,
                               const DynamicsParams& params, Tick tick);

  const std::vector<Incident>& reported() const { return reported_; }

 private:
  // Key: (kind, obstacle tag or curve segment id).
  std::set<std::tuple<int, std::int64_t>> seen_;
  std::vector<Incident> reported_;
};

}  // namespace metrorfid

#include "metrorfid/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

void DynamicsParams::validate() const {
  if (!(max_decel > 0.0)) throw ConfigError("max_decel must be positive");
  if (!(derail_accel > 0.0)) throw ConfigError("derail_accel must be positive");
  if (!(collision_speed >= 0.0)) throw ConfigError("collision_speed must be non-negative");
}

double speed_from_rpm(double rpm, double wheel_radius) {
  return 2.0 * std::numbers::pi * wheel_radius * rpm / 60.0;
}

double rpm_from_speed(double speed, double wheel_radius) {
  return speed * 60.0 / (2.0 * std::numbers::pi * wheel_radius);
}

double curve_speed_limit(double radius, double lateral_accel_max) {
  return std::sqrt(lateral_accel_max * radius);
}

double differential_ratio(double radius, double gauge) {
  const double half = gauge / 2.0;
  if (!(radius > half)) {
    throw DomainError(fmt::format("radius {} not larger than half gauge {}", radius, half));
  }
  return (radius - half) / (radius + half);
}

TrainState make_train(double front_pos, double speed, double mass, double wheel_radius) {
  const double rpm = rpm_from_speed(speed, wheel_radius);
  return TrainState{
      .front_pos = front_pos,
      .speed = speed_from_rpm(rpm, wheel_radius),
      .motor_rpm = rpm,
      .left_rpm = rpm,
      .right_rpm = rpm,
      .mass = mass,
      .wheel_radius = wheel_radius,
  };
}

namespace {

// Rescales both sides so the mean corresponds to target_speed, keeping the
// left/right ratio.
void set_speed(TrainState& s, double target_speed) {
  // Round-off left after braking to a standstill counts as stopped.
  constexpr double kRestSpeed = 1e-9;
  const double target_rpm =
      target_speed > kRestSpeed ? rpm_from_speed(target_speed, s.wheel_radius) : 0.0;
  const double mean = s.mean_rpm();
  if (mean > 0.0) {
    const double k = target_rpm / mean;
    s.left_rpm *= k;
    s.right_rpm *= k;
  } else {
    s.left_rpm = s.right_rpm = target_rpm;
  }
}

double grade_accel(const TrackSegment& segment) {
  const auto* slope = segment.as<Slope>();
  return slope ? -kGravity * slope->grade / 1000.0 : 0.0;
}

}  // namespace

TrainState step(const TrainState& state, const ActuationCommand& cmd, const TrackSegment& segment,
                double dt, const DynamicsParams& params) {
  TrainState next = state;
  const double v0 = state.speed;
  // Acceleration that was constant over the tick, if any; used for the
  // exact stopping distance when the train halts mid-tick.
  double decel_for_stop = 0.0;

  if (cmd.brake) {
    const double a =
        -std::min(std::max(cmd.brake_decel, 0.0), params.max_decel) + grade_accel(segment);
    set_speed(next, v0 + a * dt);
    if (a < 0.0) decel_for_stop = -a;
  } else {
    next.left_rpm = std::max(0.0, next.left_rpm + cmd.delta_motor_rpm + cmd.delta_left_rpm);
    next.right_rpm = std::max(0.0, next.right_rpm + cmd.delta_motor_rpm + cmd.delta_right_rpm);
    if (cmd.delta_motor_rpm == 0.0) {
      const double a = grade_accel(segment);
      if (a != 0.0) {
        set_speed(next, speed_from_rpm(next.mean_rpm(), next.wheel_radius) + a * dt);
        if (a < 0.0 && cmd.delta_left_rpm == 0.0 && cmd.delta_right_rpm == 0.0) {
          decel_for_stop = -a;
        }
      }
    }
  }

  if (!segment.as<Curve>()) {
    next.left_rpm = next.right_rpm = next.mean_rpm();
  }
  if (speed_from_rpm(next.mean_rpm(), next.wheel_radius) > kMaxLineSpeed) {
    set_speed(next, kMaxLineSpeed);
  }
  next.motor_rpm = next.mean_rpm();
  next.speed = speed_from_rpm(next.motor_rpm, next.wheel_radius);

  double travelled = 0.5 * (v0 + next.speed) * dt;
  if (next.speed == 0.0 && decel_for_stop > 0.0 && v0 < decel_for_stop * dt + 1e-12) {
    travelled = v0 * v0 / (2.0 * decel_for_stop);
  }
  next.front_pos = state.front_pos + travelled;
  return next;
}

std::vector<Incident> IncidentDetector::detect(const TrainState& state,
                                               const TrainState& prev_state, const Track& track,
                                               std::span<const Obstacle> obstacles,
                                               const DynamicsParams& params, Tick tick) {
  std::vector<Incident> fresh;
  auto report = [&](IncidentKind kind, std::int64_t key, double pos, double speed) {
    if (seen_.emplace(static_cast<int>(kind), key).second) {
      fresh.push_back(Incident{kind, tick, pos, speed});
    }
  };

  const double moved = state.front_pos - prev_state.front_pos;
  for (const auto& obstacle : obstacles) {
    if (!(prev_state.front_pos < obstacle.position && obstacle.position <= state.front_pos)) {
      continue;
    }
    // Speed where the front meets the obstacle, interpolated over the tick.
    const double frac = moved > 0.0 ? (obstacle.position - prev_state.front_pos) / moved : 1.0;
    const double v = prev_state.speed + (state.speed - prev_state.speed) * frac;
    if (v > params.collision_speed) {
      report(obstacle.obstacle_class == ObstacleClass::Human ? IncidentKind::CollisionHuman
                                                             : IncidentKind::CollisionTrain,
             obstacle.attached_tag, obstacle.position, v);
    }
  }

  if (state.front_pos >= 0.0 && state.front_pos < track.length()) {
    const TrackSegment& seg = track.segment_at(state.front_pos);
    if (const auto* curve = seg.as<Curve>();
        curve && state.speed * state.speed / curve->radius > params.derail_accel) {
      report(IncidentKind::Derailment, seg.id, state.front_pos, state.speed);
    }
  }

  reported_.insert(reported_.end(), fresh.begin(), fresh.end());
  return fresh;
}

}  // namespace metrorfid

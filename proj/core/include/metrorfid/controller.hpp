#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metrorfid/dynamics.hpp"
#include "metrorfid/radio.hpp"
#include "metrorfid/tagdb.hpp"

namespace metrorfid {

struct ControlParams {
  double service_decel = 1.0;      // m/s^2, braking-curve deceleration
  double max_decel = 1.2;          // m/s^2, strongest commanded braking
  double lateral_accel_max = 0.8;  // m/s^2, comfort limit in curves
  double stop_margin = 5.0;        // m, stand-off before a stop point or obstacle
  double cruise_speed = 16.67;     // m/s
  double rpm_step = 20.0;          // rpm per tick
  double tick_dt = 0.1;            // s

  // Throws ConfigError unless 0 < service_decel <= max_decel, stop_margin > 0,
  // tick_dt > 0, rpm_step > 0, lateral_accel_max >= 0 and the cruise speed
  // lies within (0, 55.56].
  void validate() const;
  bool operator==(const ControlParams&) const = default;
};

// Half-width of the cruise band that satisfies a slope condition.
inline constexpr double kCruiseTolerance = 0.5;
// Allowed relative deviation from the slip-free wheel ratio in a bend.
inline constexpr double kRatioTolerance = 0.01;
// Floor on the remaining braking distance used when sizing a brake command.
inline constexpr double kMinBrakingGap = 0.1;

struct ActiveCondition {
  TagCode tag_code = 0;
  Condition condition;
  double est_distance = 0.0;  // latest (filtered) ranging
  double ranged_at = 0.0;     // train front position when est_distance was taken
  Tick activated_tick = 0;
  bool resolved = false;

  bool operator==(const ActiveCondition&) const = default;
};

struct ControllerState {
  std::vector<ActiveCondition> active;
  std::size_t unknown_tags = 0;

  bool operator==(const ControllerState&) const = default;
};

// Distance from the train front to the point a stop-class condition must be
// honoured at: the stop point for stations, the dead-reckoned ranging
// estimate for obstacles, the entry for slopes and bends.
double distance_to(const ActiveCondition& cond, const TrainState& train);

// Braking curve sqrt(2 * service_decel * max(d - stop_margin, 0)).
double safe_speed(double distance, const ControlParams& params);

// Resolves each event through the database and activates or refreshes the
// matching condition. Unknown codes are counted and dropped. At most one
// slope and one bend stay active; a newly seen feature replaces the current
// one only when its entry is nearer. Stations are keyed by stop point,
// obstacles by tag code. A refreshed range is the smaller of the new
// estimate and the previous one dead-reckoned to the current position.
void on_scan(ControllerState& state, std::span<const ScanEvent> events, const TagDatabase& db,
             const TrainState& train);

// The guard of the resolver loops. A stationary train is always suitable.
bool is_suitable(const TrainState& train, const ActiveCondition& cond,
                 const ControlParams& params);

// One iteration of the slope loop: motor rpm moves one step toward cruise
// (up on an uphill, down on a downhill). Zero when already suitable.
ActuationCommand slope_resolver_step(const TrainState& train, const SlopeAhead& cond,
                                     const ControlParams& params);

// One iteration of the bend loop: the inner wheel (right on a right bend)
// steps down toward the slip-free ratio, and both sides step down while the
// train is above the curve speed. Zero when already suitable.
ActuationCommand bend_resolver_step(const TrainState& train, const BendAhead& cond,
                                    const ControlParams& params);

// One braking tick toward a stop `distance` ahead. Zero when the train is
// under the braking curve. grade_assist is the along-track acceleration a
// known downhill adds (m/s^2, >= 0); it is added to the brake demand.
ActuationCommand stop_resolver_step(const TrainState& train, double distance,
                                    const ControlParams& params, double grade_assist = 0.0);

// Safety-dominant merge: brake is OR-ed, brake_decel is the largest
// requested, each delta is the most negative. Positive deltas survive only
// when no command brakes and no delta anywhere is negative; then the
// largest wins.
ActuationCommand arbitrate(std::span<const ActuationCommand> commands);

// What the train does with the controller switched off: motor rpm steps
// toward cruise, blind to every tag.
ActuationCommand cruise_hold(const TrainState& train, const ControlParams& params);

// One control cycle: drop passed conditions, absorb scans, run each active
// resolver, arbitrate. With train.controller_enabled false only cruise_hold
// runs and the state is left untouched.
ActuationCommand controller_tick(ControllerState& state, const TrainState& train,
                                 std::span<const ScanEvent> events, const TagDatabase& db,
                                 const ControlParams& params, Tick tick);

}  // namespace metrorfid

#include "metrorfid/controller.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

void ControlParams::validate() const {
  if (!(service_decel > 0.0 && service_decel <= max_decel)) {
    throw ConfigError(fmt::format("need 0 < service_decel ({}) <= max_decel ({})", service_decel,
                                  max_decel));
  }
  if (!(stop_margin > 0.0)) throw ConfigError("stop_margin must be positive");
  if (!(tick_dt > 0.0)) throw ConfigError("tick_dt must be positive");
  if (!(rpm_step > 0.0)) throw ConfigError("rpm_step must be positive");
  if (!(lateral_accel_max >= 0.0)) throw ConfigError("lateral_accel_max must be non-negative");
  if (!(cruise_speed > 0.0 && cruise_speed <= kMaxLineSpeed)) {
    throw ConfigError(fmt::format("cruise_speed {} outside (0, {}]", cruise_speed, kMaxLineSpeed));
  }
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

bool slope_ok(const TrainState& train, const ControlParams& params) {
  return std::abs(train.speed - params.cruise_speed) <= kCruiseTolerance;
}

struct WheelPair {
  double inner;
  double outer;
};

WheelPair wheels_for(Direction direction, double left, double right) {
  return direction == Direction::Right ? WheelPair{right, left} : WheelPair{left, right};
}

bool ratio_ok(const BendAhead& bend, double left, double right) {
  const auto [inner, outer] = wheels_for(bend.direction, left, right);
  if (outer <= 0.0) return inner <= 0.0;
  const double target = differential_ratio(bend.radius);
  return std::abs(inner / outer - target) <= kRatioTolerance * target;
}

// Absorbs rpm/speed round-off when a resolver lands exactly on a limit.
constexpr double kSpeedSlack = 1e-9;

bool bend_ok(const TrainState& train, const BendAhead& bend, const ControlParams& params) {
  return train.speed <= curve_speed_limit(bend.radius, params.lateral_accel_max) + kSpeedSlack &&
         ratio_ok(bend, train.left_rpm, train.right_rpm);
}

bool stop_ok(const TrainState& train, double distance, const ControlParams& params) {
  return train.speed <= safe_speed(distance, params) + kSpeedSlack;
}

bool passed(const ActiveCondition& cond, const TrainState& train) {
  return std::visit(
      Overloaded{
          [&](const SlopeAhead& s) { return train.front_pos >= s.entry_pos + s.length; },
          [&](const BendAhead& b) { return train.front_pos >= b.entry_pos + b.length; },
          [&](const StationAhead& st) { return train.front_pos > st.stop_pos; },
          [&](const ObstacleAhead&) { return distance_to(cond, train) < 0.0; },
      },
      cond.condition);
}

// Entry of a slope/bend; used to pick the nearer of two features.
double entry_of(const Condition& c) {
  if (const auto* s = std::get_if<SlopeAhead>(&c)) return s->entry_pos;
  if (const auto* b = std::get_if<BendAhead>(&c)) return b->entry_pos;
  return 0.0;
}

bool same_slot(const ActiveCondition& existing, const Condition& incoming, TagCode code) {
  if (existing.condition.index() != incoming.index()) return false;
  if (std::holds_alternative<SlopeAhead>(incoming) || std::holds_alternative<BendAhead>(incoming)) {
    return true;  // single slot per kind
  }
  if (const auto* st = std::get_if<StationAhead>(&incoming)) {
    return std::get<StationAhead>(existing.condition).stop_pos == st->stop_pos;
  }
  return existing.tag_code == code;
}

}  // namespace

double distance_to(const ActiveCondition& cond, const TrainState& train) {
  return std::visit(
      Overloaded{
          [&](const SlopeAhead& s) { return s.entry_pos - train.front_pos; },
          [&](const BendAhead& b) { return b.entry_pos - train.front_pos; },
          [&](const StationAhead& st) { return st.stop_pos - train.front_pos; },
          [&](const ObstacleAhead&) {
            return cond.est_distance - (train.front_pos - cond.ranged_at);
          },
      },
      cond.condition);
}

double safe_speed(double distance, const ControlParams& params) {
  return std::sqrt(2.0 * params.service_decel * std::max(distance - params.stop_margin, 0.0));
}

void on_scan(ControllerState& state, std::span<const ScanEvent> events, const TagDatabase& db,
             const TrainState& train) {
  for (const auto& event : events) {
    auto condition = db.try_restore(event.tag_code);
    if (!condition) {
      ++state.unknown_tags;
      continue;
    }
    auto slot = std::find_if(state.active.begin(), state.active.end(),
                             [&](const ActiveCondition& a) {
                               return same_slot(a, *condition, event.tag_code);
                             });
    if (slot == state.active.end()) {
      state.active.push_back(ActiveCondition{
          .tag_code = event.tag_code,
          .condition = *condition,
          .est_distance = event.est_distance,
          .ranged_at = train.front_pos,
          .activated_tick = event.tick,
          .resolved = false,
      });
      continue;
    }
    const bool single_slot = std::holds_alternative<SlopeAhead>(*condition) ||
                             std::holds_alternative<BendAhead>(*condition);
    if (single_slot && slot->condition != *condition) {
      if (entry_of(*condition) >= entry_of(slot->condition)) continue;
      slot->condition = *condition;
      slot->tag_code = event.tag_code;
      slot->activated_tick = event.tick;
      slot->resolved = false;
    }
    // Keep the nearer of the fresh range and the dead-reckoned previous one,
    // so a noisy over-estimate never relaxes braking.
    slot->est_distance = std::min(event.est_distance, distance_to(*slot, train));
    slot->ranged_at = train.front_pos;
  }
}

bool is_suitable(const TrainState& train, const ActiveCondition& cond,
                 const ControlParams& params) {
  if (train.speed == 0.0) return true;
  return std::visit(
      Overloaded{
          [&](const SlopeAhead&) { return slope_ok(train, params); },
          [&](const BendAhead& b) { return bend_ok(train, b, params); },
          [&](const auto&) { return stop_ok(train, distance_to(cond, train), params); },
      },
      cond.condition);
}

ActuationCommand slope_resolver_step(const TrainState& train, const SlopeAhead& /*cond*/,
                                     const ControlParams& params) {
  if (train.speed == 0.0 || slope_ok(train, params)) return {};
  // Uphill (grade > 0) drags the train below cruise: ++Motor_Revolution.
  // Downhill pushes it above: --Motor_Revolution. The step always follows
  // the gap to cruise, so a train entering an uphill too fast still slows.
  const double gap = rpm_from_speed(params.cruise_speed, train.wheel_radius) - train.mean_rpm();
  const double magnitude = std::min(params.rpm_step, std::abs(gap));
  return ActuationCommand{.delta_motor_rpm = gap > 0.0 ? magnitude : -magnitude};
}

ActuationCommand bend_resolver_step(const TrainState& train, const BendAhead& cond,
                                    const ControlParams& params) {
  if (train.speed == 0.0 || bend_ok(train, cond, params)) return {};
  ActuationCommand cmd;

  const double v_curve = curve_speed_limit(cond.radius, params.lateral_accel_max);
  if (train.speed > v_curve + kSpeedSlack) {
    const double excess = train.mean_rpm() - rpm_from_speed(v_curve, train.wheel_radius);
    cmd.delta_motor_rpm = -std::min(params.rpm_step, excess);
  }

  // Ratio after the shared slowdown has been applied to both sides.
  const double left = train.left_rpm + cmd.delta_motor_rpm;
  const double right = train.right_rpm + cmd.delta_motor_rpm;
  if (!ratio_ok(cond, left, right)) {
    const double target = differential_ratio(cond.radius);
    const auto [inner, outer] = wheels_for(cond.direction, left, right);
    double inner_delta = 0.0;
    double outer_delta = 0.0;
    if (inner > target * outer) {
      inner_delta = -std::min(params.rpm_step, inner - target * outer);
    } else {
      outer_delta = -std::min(params.rpm_step, outer - inner / target);
    }
    if (cond.direction == Direction::Right) {
      cmd.delta_right_rpm = inner_delta;  // --Right_Wheel_Revolution
      cmd.delta_left_rpm = outer_delta;
    } else {
      cmd.delta_left_rpm = inner_delta;  // --Left_Wheel_Revolution
      cmd.delta_right_rpm = outer_delta;
    }
  }
  return cmd;
}

ActuationCommand stop_resolver_step(const TrainState& train, double distance,
                                    const ControlParams& params, double grade_assist) {
  if (train.speed == 0.0 || stop_ok(train, distance, params)) return {};
  const double v = train.speed;
  const double needed = v * v / (2.0 * std::max(distance - params.stop_margin, kMinBrakingGap));
  // Inside the margin the quadratic demand vanishes with speed; hold at
  // least the service rate so the train actually comes to rest.
  const double decel =
      std::clamp(needed + std::max(grade_assist, 0.0), params.service_decel, params.max_decel);
  return ActuationCommand{
      .delta_motor_rpm = -params.rpm_step,
      .delta_left_rpm = -params.rpm_step,
      .delta_right_rpm = -params.rpm_step,
      .brake = true,
      .brake_decel = decel,
  };
}

ActuationCommand arbitrate(std::span<const ActuationCommand> commands) {
  if (commands.empty()) return {};
  ActuationCommand out;
  bool any_negative = false;
  for (const auto& c : commands) {
    out.brake = out.brake || c.brake;
    if (c.brake) out.brake_decel = std::max(out.brake_decel, c.brake_decel);
    any_negative = any_negative || c.delta_motor_rpm < 0.0 || c.delta_left_rpm < 0.0 ||
                   c.delta_right_rpm < 0.0;
  }
  const bool restrictive = out.brake || any_negative;
  auto merge = [&](double ActuationCommand::*field) {
    double v = commands.front().*field;
    for (const auto& c : commands) {
      v = restrictive ? std::min(v, c.*field) : std::max(v, c.*field);
    }
    return v;
  };
  out.delta_motor_rpm = merge(&ActuationCommand::delta_motor_rpm);
  out.delta_left_rpm = merge(&ActuationCommand::delta_left_rpm);
  out.delta_right_rpm = merge(&ActuationCommand::delta_right_rpm);
  return out;
}

ActuationCommand cruise_hold(const TrainState& train, const ControlParams& params) {
  const double gap = rpm_from_speed(params.cruise_speed, train.wheel_radius) - train.mean_rpm();
  return ActuationCommand{.delta_motor_rpm = std::clamp(gap, -params.rpm_step, params.rpm_step)};
}

ActuationCommand controller_tick(ControllerState& state, const TrainState& train,
                                 std::span<const ScanEvent> events, const TagDatabase& db,
                                 const ControlParams& params, Tick /*tick*/) {
  if (!train.controller_enabled) {
    return cruise_hold(train, params);
  }

  std::erase_if(state.active, [&](const ActiveCondition& c) { return passed(c, train); });
  on_scan(state, events, db, train);

  // No traction is added while a stop point or obstacle lies ahead.
  const bool stop_ahead =
      std::any_of(state.active.begin(), state.active.end(), [](const ActiveCondition& c) {
        return std::holds_alternative<StationAhead>(c.condition) ||
               std::holds_alternative<ObstacleAhead>(c.condition);
      });

  // Gravity pulling the train towards a stop point that lies beyond the
  // entry of a known downhill.
  auto grade_assist = [&](double stop_distance) {
    for (const auto& c : state.active) {
      const auto* s = std::get_if<SlopeAhead>(&c.condition);
      if (s && s->grade < 0.0 && train.front_pos + stop_distance > s->entry_pos) {
        return kGravity * -s->grade / 1000.0;
      }
    }
    return 0.0;
  };

  std::vector<ActuationCommand> commands;
  commands.reserve(state.active.size());
  for (auto& cond : state.active) {
    cond.resolved = is_suitable(train, cond, params);
    commands.push_back(std::visit(
        Overloaded{
            [&](const SlopeAhead& s) {
              auto cmd = slope_resolver_step(train, s, params);
              if (stop_ahead) cmd.delta_motor_rpm = std::min(cmd.delta_motor_rpm, 0.0);
              return cmd;
            },
            [&](const BendAhead& b) { return bend_resolver_step(train, b, params); },
            [&](const auto&) {
              const double d = distance_to(cond, train);
              return stop_resolver_step(train, d, params, grade_assist(d));
            },
        },
        cond.condition));
  }
  return arbitrate(commands);
}

}  // namespace metrorfid

// Tick-by-tick traces of the three resolver loops. Expected values come from
// tests/oracles/resolver_traces.py, which re-derives the rules by hand.
#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "metrorfid/controller.hpp"

namespace metrorfid {
namespace {

constexpr double kTol = 1e-9;

TrainState at_rpm(double pos, double left, double right) {
  TrainState t;
  t.front_pos = pos;
  t.left_rpm = left;
  t.right_rpm = right;
  t.motor_rpm = t.mean_rpm();
  t.speed = speed_from_rpm(t.motor_rpm, t.wheel_radius);
  return t;
}

TEST(ResolverTrace, SlopeUphill) {
  const ControlParams p;
  const SlopeAhead cond{20.0, 0.0, 10000.0};
  const TrackSegment seg{1, 0.0, 10000.0, Slope{20.0}, 30.0};
  struct Row {
    double delta_motor, rpm, speed;
  };
  const std::array<Row, 5> expected{{
      {+20.0, 350.0, 15.760323145508796},
      {+20.0, 370.0, 16.660913039537867},
      {0.0, 369.5642855837028, 16.641293039537867},
      {0.0, 369.12857116740565, 16.621673039537868},
      {0.0, 368.6928567511085, 16.602053039537868},
  }};
  TrainState t = at_rpm(10.0, 330.0, 330.0);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const ActuationCommand cmd = slope_resolver_step(t, cond, p);
    EXPECT_EQ(cmd.delta_motor_rpm, expected[k].delta_motor) << "tick " << k;
    EXPECT_GE(cmd.delta_motor_rpm, 0.0);  // ++Motor_Revolution on an uphill
    EXPECT_FALSE(cmd.brake);
    t = step(t, cmd, seg, p.tick_dt);
    EXPECT_NEAR(t.motor_rpm, expected[k].rpm, kTol) << "tick " << k;
    EXPECT_NEAR(t.speed, expected[k].speed, kTol) << "tick " << k;
  }
}

TEST(ResolverTrace, RightBend) {
  ControlParams p;
  p.rpm_step = 0.5;
  const BendAhead cond{Direction::Right, 100.0, 0.0, 10000.0};
  const TrackSegment seg{1, 0.0, 10000.0, Curve{Direction::Right, 100.0}, 30.0};
  struct Row {
    double d_left, d_right, left, right;
  };
  const std::array<Row, 5> expected{{
      {0.0, -0.5, 195.0, 194.5},
      {0.0, -0.5, 195.0, 194.0},
      {0.0, 0.0, 195.0, 194.0},
      {0.0, 0.0, 195.0, 194.0},
      {0.0, 0.0, 195.0, 194.0},
  }};
  TrainState t = at_rpm(10.0, 195.0, 195.0);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const ActuationCommand cmd = bend_resolver_step(t, cond, p);
    EXPECT_EQ(cmd.delta_motor_rpm, 0.0) << "tick " << k;
    EXPECT_EQ(cmd.delta_left_rpm, expected[k].d_left) << "tick " << k;
    EXPECT_EQ(cmd.delta_right_rpm, expected[k].d_right) << "tick " << k;  // --Right_Wheel_Revolution
    t = step(t, cmd, seg, p.tick_dt);
    EXPECT_NEAR(t.left_rpm, expected[k].left, kTol) << "tick " << k;
    EXPECT_NEAR(t.right_rpm, expected[k].right, kTol) << "tick " << k;
  }
  const double ratio = t.right_rpm / t.left_rpm;
  EXPECT_NEAR(ratio, 0.9948717948717949, kTol);
  EXPECT_LE(std::abs(ratio - 0.98575) / 0.98575, 0.01);
}

TEST(ResolverTrace, ObstacleStop) {
  const ControlParams p;
  const TagDatabase db;
  const TagCode human = human_tag_code(1);
  const TrackSegment seg{1, 0.0, 10000.0, Straight{}, 30.0};
  struct Row {
    double speed, pos;
  };
  const std::array<Row, 5> expected{{
      {11.88, 1.194},
      {11.76, 2.376},
      {11.64, 3.546},
      {11.52, 4.704},
      {11.40, 5.85},
  }};
  ControllerState s;
  TrainState t = make_train(0.0, 12.0);
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const std::vector<ScanEvent> ev{{human, -60.0, 55.0 - t.front_pos, static_cast<Tick>(k)}};
    const ActuationCommand cmd = controller_tick(s, t, ev, db, p, static_cast<Tick>(k));
    EXPECT_TRUE(cmd.brake) << "tick " << k;
    EXPECT_EQ(cmd.brake_decel, 1.2) << "tick " << k;
    EXPECT_EQ(cmd.delta_motor_rpm, -p.rpm_step) << "tick " << k;
    t = step(t, cmd, seg, p.tick_dt);
    EXPECT_NEAR(t.speed, expected[k].speed, kTol) << "tick " << k;
    EXPECT_NEAR(t.front_pos, expected[k].pos, kTol) << "tick " << k;
  }
  ASSERT_EQ(s.active.size(), 1u);
  EXPECT_FALSE(s.active[0].resolved);
}

}  // namespace
}  // namespace metrorfid

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "metrorfid/dynamics.hpp"
#include "metrorfid/error.hpp"
#include "metrorfid/tagdb.hpp"
#include "metrorfid/track.hpp"

namespace metrorfid {
namespace {

const TrackSegment kFlat{1, 0.0, 100000.0, Straight{}, 55.0};
const TrackSegment kUphill{2, 0.0, 100000.0, Slope{20.0}, 55.0};

ActuationCommand brake_at(double decel) {
  ActuationCommand c;
  c.brake = true;
  c.brake_decel = decel;
  return c;
}

// Distance to a standstill under constant braking, stepping until the speed
// reaches zero.
double stopping_distance(double v0, double decel, double dt) {
  DynamicsParams p;
  p.max_decel = decel;
  TrainState s = make_train(0.0, v0);
  for (int i = 0; i < 100000 && s.speed > 0.0; ++i) s = step(s, brake_at(decel), kFlat, dt, p);
  return s.front_pos;
}

TEST(SpeedFromRpm, Values) {
  EXPECT_EQ(speed_from_rpm(0.0, 0.43), 0.0);
  EXPECT_NEAR(speed_from_rpm(1000.0, 0.43), 45.029, 5e-4);
  EXPECT_NEAR(rpm_from_speed(speed_from_rpm(345.6, 0.43), 0.43), 345.6, 1e-9);
}

TEST(CurveSpeedLimit, Values) {
  EXPECT_NEAR(curve_speed_limit(200.0, 0.8), 12.649, 5e-4);
  EXPECT_EQ(curve_speed_limit(200.0, 0.0), 0.0);
}

TEST(DifferentialRatio, Values) {
  EXPECT_NEAR(differential_ratio(100.0, 1.435), 0.98575, 5e-6);
  EXPECT_NEAR(differential_ratio(1e9, 1.435), 1.0, 1e-8);
  EXPECT_THROW(differential_ratio(0.7, 1.435), DomainError);
}

TEST(DifferentialRatio, IncreasesWithRadius) {
  double prev = differential_ratio(1.0);
  for (double r = 2.0; r < 5000.0; r *= 1.3) {
    const double q = differential_ratio(r);
    ASSERT_GT(q, prev);
    ASSERT_LT(q, 1.0);
    prev = q;
  }
}

TEST(Step, CoastingOnFlat) {
  const TrainState s = make_train(10.0, 12.0);
  const TrainState n = step(s, {}, kFlat, 0.1);
  EXPECT_DOUBLE_EQ(n.speed, s.speed);
  EXPECT_DOUBLE_EQ(n.left_rpm, s.left_rpm);
  EXPECT_DOUBLE_EQ(n.right_rpm, s.right_rpm);
  EXPECT_NEAR(n.front_pos, 10.0 + s.speed * 0.1, 1e-12);
}

TEST(Step, UnpoweredOnUphill) {
  const TrainState s = make_train(0.0, 12.0);
  const TrainState n = step(s, {}, kUphill, 0.1);
  EXPECT_NEAR(s.speed - n.speed, 0.019620, 1e-9);
}

TEST(Step, GradeIndependentOfMass) {
  const TrainState light = make_train(0.0, 12.0, 50000.0);
  const TrainState heavy = make_train(0.0, 12.0, 400000.0);
  EXPECT_DOUBLE_EQ(step(light, {}, kUphill, 0.1).speed, step(heavy, {}, kUphill, 0.1).speed);
}

TEST(Step, BrakeFromTenForHundredTicks) {
  TrainState s = make_train(0.0, 10.0);
  for (int i = 0; i < 100; ++i) s = step(s, brake_at(1.0), kFlat, 0.1);
  EXPECT_EQ(s.speed, 0.0);
  EXPECT_NEAR(s.front_pos, 50.0, 0.5);
}

TEST(Step, BrakeIsCapped) {
  DynamicsParams p;
  p.max_decel = 1.2;
  const TrainState s = make_train(0.0, 20.0);
  const TrainState n = step(s, brake_at(5.0), kFlat, 0.1, p);
  EXPECT_NEAR(s.speed - n.speed, 0.12, 1e-9);
}

TEST(Step, BrakeIgnoresRpmDeltas) {
  const TrainState s = make_train(0.0, 10.0);
  ActuationCommand c = brake_at(1.0);
  c.delta_motor_rpm = -20.0;
  c.delta_left_rpm = -20.0;
  EXPECT_EQ(step(s, c, kFlat, 0.1), step(s, brake_at(1.0), kFlat, 0.1));
}

TEST(Step, MotorDeltaDrivesBothSides) {
  const TrainState s = make_train(0.0, 10.0);
  ActuationCommand c;
  c.delta_motor_rpm = 20.0;
  const TrainState n = step(s, c, kFlat, 0.1);
  EXPECT_NEAR(n.left_rpm, s.left_rpm + 20.0, 1e-9);
  EXPECT_NEAR(n.right_rpm, s.right_rpm + 20.0, 1e-9);
  EXPECT_NEAR(n.speed, speed_from_rpm(s.motor_rpm + 20.0, s.wheel_radius), 1e-12);
}

TEST(Step, StraightEqualisesSidesCurveKeepsThem) {
  const TrainState s = make_train(0.0, 10.0);
  ActuationCommand c;
  c.delta_right_rpm = -4.0;
  const TrainState on_flat = step(s, c, kFlat, 0.1);
  EXPECT_DOUBLE_EQ(on_flat.left_rpm, on_flat.right_rpm);
  const TrackSegment curve{3, 0.0, 1000.0, Curve{Direction::Right, 200.0}, 30.0};
  const TrainState on_curve = step(s, c, curve, 0.1);
  EXPECT_NEAR(on_curve.left_rpm - on_curve.right_rpm, 4.0, 1e-9);
}

TEST(Step, NeverNegativeAndPositionMonotone) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const TrackSegment down{4, 0.0, 1e6, Slope{-40.0}, 55.0};
  for (int trial = 0; trial < 200; ++trial) {
    TrainState s = make_train(0.0, 5.0 + 10.0 * (u(rng) + 1.0));
    for (int i = 0; i < 300; ++i) {
      ActuationCommand c;
      c.brake = u(rng) > 0.3;
      c.brake_decel = 1.5 * (u(rng) + 1.0);
      c.delta_motor_rpm = 20.0 * u(rng);
      const TrackSegment& seg = (i / 50) % 3 == 0 ? kUphill : ((i / 50) % 3 == 1 ? kFlat : down);
      const TrainState n = step(s, c, seg, 0.1);
      ASSERT_GE(n.speed, 0.0);
      ASSERT_LE(n.speed, kMaxLineSpeed + 1e-9);
      ASSERT_GE(n.front_pos, s.front_pos);
      s = n;
    }
  }
}

TEST(BrakingOracle, WithinTwoPercent) {
  for (double v0 : {5.0, 10.0, 16.67, 25.0}) {
    const double expected = v0 * v0 / 2.0;
    EXPECT_NEAR(stopping_distance(v0, 1.0, 0.1), expected, 0.02 * expected) << "v0=" << v0;
  }
}

TEST(BrakingOracle, RandomSpeedsAndRates) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(0.5, 50.0), b(0.3, 1.2);
  for (int i = 0; i < 500; ++i) {
    const double v0 = v(rng), decel = b(rng);
    const double expected = v0 * v0 / (2.0 * decel);
    ASSERT_NEAR(stopping_distance(v0, decel, 0.1), expected, 1e-6 * expected);
  }
}

TEST(Incidents, StoppedShortOfObstacle) {
  const Track t = build_track({{1, 0.0, 2000.0, Straight{}, 20.0}});
  const std::vector<Obstacle> obs{{900.0, ObstacleClass::Human, 1}};
  TrainState prev = make_train(894.0, 0.3);
  TrainState now = prev;
  now.front_pos = 895.0;
  now.speed = 0.0;
  IncidentDetector d;
  EXPECT_TRUE(d.detect(now, prev, t, obs, {}, 1).empty());
}

TEST(Incidents, CrossingHumanAtSpeed) {
  const Track t = build_track({{1, 0.0, 2000.0, Straight{}, 20.0}});
  const std::vector<Obstacle> obs{{900.0, ObstacleClass::Human, human_tag_code(1)}};
  const TrainState prev = make_train(899.5, 8.0);
  const TrainState now = step(prev, {}, t.segment_at(899.5), 0.1);
  IncidentDetector d;
  const auto found = d.detect(now, prev, t, obs, {}, 4);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].kind, IncidentKind::CollisionHuman);
  EXPECT_EQ(found[0].tick, 4);
  EXPECT_NEAR(found[0].speed_at_event, 8.0, 1e-9);
  EXPECT_TRUE(d.detect(now, prev, t, obs, {}, 5).empty());
  EXPECT_EQ(d.reported().size(), 1u);
}

TEST(Incidents, CreepingContactIsNotAnIncident) {
  const Track t = build_track({{1, 0.0, 2000.0, Straight{}, 20.0}});
  const std::vector<Obstacle> obs{{900.0, ObstacleClass::StoppedTrain, train_rear_tag_code(1)}};
  const TrainState prev = make_train(899.98, 0.4);
  const TrainState now = step(prev, {}, t.segment_at(899.98), 0.1);
  IncidentDetector d;
  EXPECT_TRUE(d.detect(now, prev, t, obs, {}, 1).empty());
}

TEST(Incidents, OverspeedInCurveDerails) {
  const Track t = build_track({{1, 0.0, 500.0, Straight{}, 30.0},
                               {2, 500.0, 200.0, Curve{Direction::Left, 200.0}, 30.0},
                               {3, 700.0, 300.0, Straight{}, 30.0}});
  const TrainState prev = make_train(499.0, 20.0);
  const TrainState now = step(prev, {}, t.segment_at(499.0), 0.1);
  IncidentDetector d;
  const auto found = d.detect(now, prev, t, {}, {}, 2);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].kind, IncidentKind::Derailment);

  IncidentDetector slow;
  const TrainState p2 = make_train(499.0, 17.0);  // 289 / 200 = 1.445
  EXPECT_TRUE(slow.detect(step(p2, {}, t.segment_at(499.0), 0.1), p2, t, {}, {}, 2).empty());
}

}  // namespace
}  // namespace metrorfid

#include <gtest/gtest.h>

#include <random>

#include "metrorfid/error.hpp"
#include "metrorfid/scenario.hpp"
#include "metrorfid/track.hpp"

namespace metrorfid {
namespace {

Track three_segment_track() {
  return build_track({
      {1, 0.0, 500.0, Straight{}, 20.0},
      {2, 500.0, 200.0, Curve{Direction::Right, 200.0}, 20.0},
      {3, 700.0, 300.0, StationZone{800.0}, 15.0},
  });
}

TEST(BuildTrack, SingleStraightSegment) {
  const Track t = build_track({{1, 0.0, 1000.0, Straight{}, 20.0}});
  EXPECT_EQ(t.length(), 1000.0);
  EXPECT_EQ(t.segments().size(), 1u);
}

TEST(BuildTrack, GapIsOverlapError) {
  EXPECT_THROW(build_track({{1, 0.0, 500.0, Straight{}, 20.0}, {2, 600.0, 300.0, Straight{}, 20.0}}),
               OverlapError);
}

TEST(BuildTrack, OverlapIsOverlapError) {
  EXPECT_THROW(build_track({{1, 0.0, 500.0, Straight{}, 20.0}, {2, 450.0, 300.0, Straight{}, 20.0}}),
               OverlapError);
}

TEST(BuildTrack, ThreeSegmentLengthIsSumOfLengths) {
  const Track t = three_segment_track();
  EXPECT_EQ(t.segments().size(), 3u);
  EXPECT_DOUBLE_EQ(t.length(), 500.0 + 200.0 + 300.0);
}

TEST(BuildTrack, GeometryLimits) {
  EXPECT_THROW(build_track({{1, 0.0, 100.0, Curve{Direction::Left, 29.9}, 10.0}}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 100.0, Slope{60.5}, 10.0}}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 100.0, Straight{}, 55.6}}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 100.0, Straight{}, 0.0}}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 0.0, Straight{}, 10.0}}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 100.0, StationZone{120.0}, 10.0}}), GeometryError);
  EXPECT_THROW(build_track({}), GeometryError);
  EXPECT_THROW(build_track({{1, 0.0, 100.0, Straight{}, 10.0}, {1, 100.0, 50.0, Straight{}, 10.0}}),
               GeometryError);
  EXPECT_NO_THROW(build_track({{1, 0.0, 100.0, Curve{Direction::Left, 30.0}, 55.56}}));
  EXPECT_NO_THROW(build_track({{1, 0.0, 100.0, Slope{-60.0}, 10.0}}));
}

TEST(SegmentAt, OriginBoundaryAndInterior) {
  const Track t = three_segment_track();
  EXPECT_EQ(t.segment_at(0.0).id, 1);
  EXPECT_EQ(t.segment_at(500.0).id, 2);  // boundary belongs to the later segment
  EXPECT_EQ(t.segment_at(499.999).id, 1);
  EXPECT_EQ(t.segment_at(750.0).id, 3);
  EXPECT_THROW(t.segment_at(1000.0), OutOfTrack);
  EXPECT_THROW(t.segment_at(-0.1), OutOfTrack);
}

TEST(SegmentAt, AgreesWithLinearScan) {
  const Track t = default_scenario().track;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(0.0, t.length());
  for (int i = 0; i < 10000; ++i) {
    const double p = pos(rng);
    int expected = -1;
    for (const auto& s : t.segments()) {
      if (s.start_pos <= p && p < s.start_pos + s.length) expected = s.id;
    }
    ASSERT_EQ(t.segment_at(p).id, expected) << "at " << p;
  }
  for (const auto& s : t.segments()) EXPECT_EQ(t.segment_at(s.start_pos).id, s.id);
}

TEST(PlaceTags, NothingToMark) {
  const Track t = build_track({{1, 0.0, 1000.0, Straight{}, 20.0}});
  EXPECT_TRUE(place_tags(t, 150.0).empty());
}

TEST(PlaceTags, StationTagBeforeStopPoint) {
  const Track t = build_track({{1, 0.0, 700.0, Straight{}, 20.0},
                               {2, 700.0, 300.0, StationZone{800.0}, 15.0}});
  const auto tags = place_tags(t, 150.0);
  ASSERT_EQ(tags.size(), 1u);
  EXPECT_EQ(tags[0].position, 650.0);
  EXPECT_EQ(tags[0].tag_class, TagClass::Infrastructure);
  EXPECT_EQ(tags[0].segment_id, 2);
}

TEST(PlaceTags, ClampedAtOrigin) {
  const Track t = build_track({{1, 0.0, 100.0, Straight{}, 20.0},
                               {2, 100.0, 200.0, Curve{Direction::Left, 300.0}, 20.0}});
  const auto tags = place_tags(t, 150.0);
  ASSERT_EQ(tags.size(), 1u);
  EXPECT_EQ(tags[0].position, 0.0);
}

TEST(PlaceTags, OnePerFeatureAndNeverPastIt) {
  const Track t = default_scenario().track;
  int features = 0;
  for (const auto& s : t.segments()) features += feature_position(s).has_value();
  for (double advance : {1.0, 50.0, 150.0, 400.0, 5000.0}) {
    const auto tags = place_tags(t, advance);
    ASSERT_EQ(static_cast<int>(tags.size()), features);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      EXPECT_EQ(tags[i].tag_code, i + 1);
      const auto feature = feature_position(*t.find_segment(*tags[i].segment_id));
      EXPECT_LE(tags[i].position, *feature);
      EXPECT_GE(tags[i].position, 0.0);
    }
  }
  EXPECT_THROW(place_tags(t, 0.0), ConfigError);
}

}  // namespace
}  // namespace metrorfid

#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "metrorfid/units.hpp"

namespace metrorfid {

enum class Direction { Left, Right };

struct Straight {
  bool operator==(const Straight&) const = default;
};

struct Curve {
  Direction direction = Direction::Right;
  double radius = 0.0;
  bool operator==(const Curve&) const = default;
};

struct Slope {
  double grade = 0.0;  // per-mille, positive = uphill
  bool operator==(const Slope&) const = default;
};

struct StationZone {
  double stop_point = 0.0;  // absolute position
  bool operator==(const StationZone&) const = default;
};

using SegmentKind = std::variant<Straight, Curve, Slope, StationZone>;

struct TrackSegment {
  int id = 0;
  double start_pos = 0.0;
  double length = 0.0;
  SegmentKind kind = Straight{};
  double speed_limit = 0.0;

  double end_pos() const { return start_pos + length; }
  bool contains(double pos) const { return pos >= start_pos && pos < end_pos(); }

  template <class Kind>
  const Kind* as() const {
    return std::get_if<Kind>(&kind);
  }

  bool operator==(const TrackSegment&) const = default;
};

// An immutable, validated single line. Built only through build_track().
class Track {
 public:
  const std::vector<TrackSegment>& segments() const { return segments_; }
  double length() const { return length_; }

  // The segment containing pos. A position on a boundary belongs to the
  // segment that starts there. Throws OutOfTrack outside [0, length).
  const TrackSegment& segment_at(double pos) const;

  const TrackSegment* find_segment(int id) const;

  bool operator==(const Track&) const = default;

 private:
  friend Track build_track(std::vector<TrackSegment> segments);
  std::vector<TrackSegment> segments_;
  double length_ = 0.0;
};

// Validates and assembles a track. The first segment must start at 0 and
// each following segment must start exactly where the previous one ends.
// Throws OverlapError on a gap/overlap, GeometryError on out-of-range
// geometry (length <= 0, radius < 30 m, |grade| > 60, speed limit outside
// (0, 55.56], stop point outside its zone, duplicate ids).
Track build_track(std::vector<TrackSegment> segments);

enum class TagClass { Infrastructure, TrainRear, Human };

struct TagInstallation {
  TagCode tag_code = 0;
  double position = 0.0;
  TagClass tag_class = TagClass::Infrastructure;
  // The feature segment an infrastructure tag warns about.
  std::optional<int> segment_id;

  bool operator==(const TagInstallation&) const = default;
};

enum class ObstacleClass { Human, StoppedTrain };

struct Obstacle {
  double position = 0.0;
  ObstacleClass obstacle_class = ObstacleClass::Human;
  TagCode attached_tag = 0;

  bool operator==(const Obstacle&) const = default;
};

inline constexpr double kDefaultTagAdvance = 150.0;

// Position of the hazard a segment represents: entry for curves and slopes,
// stop point for station zones. Straight segments have none.
std::optional<double> feature_position(const TrackSegment& segment);

// One infrastructure tag per curve entry, slope entry and station stop point,
// placed advance_distance before the feature (clamped at the origin). Codes
// run 1, 2, 3... in track order.
std::vector<TagInstallation> place_tags(const Track& track,
                                        double advance_distance = kDefaultTagAdvance);

// The tag a mobile obstacle carries. Codes come from the class prefix ranges.
TagInstallation obstacle_tag(const Obstacle& obstacle);

}  // namespace metrorfid

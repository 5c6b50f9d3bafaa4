#include "metrorfid/track.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

namespace {

void validate_segment(const TrackSegment& seg) {
  if (!(seg.length > 0.0) || !std::isfinite(seg.length)) {
    throw GeometryError(fmt::format("segment {}: length must be positive", seg.id));
  }
  if (!(seg.speed_limit > 0.0 && seg.speed_limit <= kMaxLineSpeed)) {
    throw GeometryError(
        fmt::format("segment {}: speed limit {} outside (0, {}]", seg.id, seg.speed_limit,
                    kMaxLineSpeed));
  }
  if (const auto* curve = seg.as<Curve>(); curve && !(curve->radius >= kMinCurveRadius)) {
    throw GeometryError(
        fmt::format("segment {}: curve radius {} below {} m", seg.id, curve->radius,
                    kMinCurveRadius));
  }
  if (const auto* slope = seg.as<Slope>();
      slope && !(std::abs(slope->grade) <= kMaxGradePerMille)) {
    throw GeometryError(fmt::format("segment {}: grade {} exceeds {} per-mille", seg.id,
                                    slope->grade, kMaxGradePerMille));
  }
  if (const auto* station = seg.as<StationZone>();
      station && !(station->stop_point >= seg.start_pos && station->stop_point <= seg.end_pos())) {
    throw GeometryError(
        fmt::format("segment {}: stop point {} outside [{}, {}]", seg.id, station->stop_point,
                    seg.start_pos, seg.end_pos()));
  }
}

}  // namespace

Track build_track(std::vector<TrackSegment> segments) {
  if (segments.empty()) {
    throw GeometryError("track needs at least one segment");
  }
  std::set<int> ids;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    validate_segment(seg);
    if (!ids.insert(seg.id).second) {
      throw GeometryError(fmt::format("duplicate segment id {}", seg.id));
    }
    const double expected_start = i == 0 ? 0.0 : segments[i - 1].end_pos();
    if (seg.start_pos != expected_start) {
      throw OverlapError(fmt::format("segment {} starts at {} but expected {}", seg.id,
                                     seg.start_pos, expected_start));
    }
  }
  Track track;
  track.length_ = segments.back().end_pos();
  track.segments_ = std::move(segments);
  return track;
}

const TrackSegment& Track::segment_at(double pos) const {
  if (!(pos >= 0.0 && pos < length_)) {
    throw OutOfTrack(fmt::format("position {} outside [0, {})", pos, length_));
  }
  // First segment whose start is strictly greater than pos; the one before
  // it contains pos (boundaries go to the later segment).
  auto it = std::upper_bound(segments_.begin(), segments_.end(), pos,
                             [](double p, const TrackSegment& s) { return p < s.start_pos; });
  return *std::prev(it);
}

const TrackSegment* Track::find_segment(int id) const {
  auto it = std::find_if(segments_.begin(), segments_.end(),
                         [id](const TrackSegment& s) { return s.id == id; });
  return it == segments_.end() ? nullptr : &*it;
}

std::optional<double> feature_position(const TrackSegment& segment) {
  if (segment.as<Curve>() || segment.as<Slope>()) {
    return segment.start_pos;
  }
  if (const auto* station = segment.as<StationZone>()) {
    return station->stop_point;
  }
  return std::nullopt;
}

std::vector<TagInstallation> place_tags(const Track& track, double advance_distance) {
  if (!(advance_distance > 0.0)) {
    throw ConfigError("tag advance distance must be positive");
  }
  std::vector<TagInstallation> tags;
  TagCode next_code = 1;
  for (const auto& seg : track.segments()) {
    const auto feature = feature_position(seg);
    if (!feature) continue;
    tags.push_back(TagInstallation{
        .tag_code = next_code++,
        .position = std::max(0.0, *feature - advance_distance),
        .tag_class = TagClass::Infrastructure,
        .segment_id = seg.id,
    });
  }
  return tags;
}

TagInstallation obstacle_tag(const Obstacle& obstacle) {
  return TagInstallation{
      .tag_code = obstacle.attached_tag,
      .position = obstacle.position,
      .tag_class = obstacle.obstacle_class == ObstacleClass::Human ? TagClass::Human
                                                                   : TagClass::TrainRear,
      .segment_id = std::nullopt,
  };
}

}  // namespace metrorfid

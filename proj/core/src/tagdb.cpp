#include "metrorfid/tagdb.hpp"

#include <cmath>

#include <fmt/format.h>

#include "metrorfid/error.hpp"

namespace metrorfid {

namespace {

bool in_class_range(TagCode code) {
  const TagCode prefix = code & kClassPrefixMask;
  return prefix == kTrainRearPrefix || prefix == kHumanPrefix;
}

void check_condition(TagCode code, const Condition& condition) {
  if (const auto* slope = std::get_if<SlopeAhead>(&condition); slope && slope->grade == 0.0) {
    throw ConfigError(fmt::format("tag {:#x}: flat slope record", code));
  }
  if (const auto* bend = std::get_if<BendAhead>(&condition);
      bend && !(bend->radius >= kMinCurveRadius)) {
    throw ConfigError(fmt::format("tag {:#x}: bend radius {} below minimum", code, bend->radius));
  }
  if (std::holds_alternative<ObstacleAhead>(condition)) {
    throw ConfigError(
        fmt::format("tag {:#x}: obstacle conditions come from prefix rules only", code));
  }
}

}  // namespace

void TagDatabase::insert(TagCode code, Condition condition) {
  if (in_class_range(code)) {
    throw ConfigError(fmt::format("tag {:#x} lies inside a mobile-tag prefix range", code));
  }
  check_condition(code, condition);
  if (!records_.emplace(code, std::move(condition)).second) {
    throw ConfigError(fmt::format("duplicate tag record {:#x}", code));
  }
}

std::optional<Condition> TagDatabase::try_restore(TagCode code) const {
  if (auto it = records_.find(code); it != records_.end()) {
    return it->second;
  }
  switch (code & kClassPrefixMask) {
    case kTrainRearPrefix:
      return ObstacleAhead{ObstacleClass::StoppedTrain};
    case kHumanPrefix:
      return ObstacleAhead{ObstacleClass::Human};
    default:
      return std::nullopt;
  }
}

Condition restore(const TagDatabase& db, TagCode code) {
  auto condition = db.try_restore(code);
  if (!condition) {
    throw UnknownTag(fmt::format("tag {:#010x} is not in the database", code));
  }
  return *condition;
}

Condition condition_for(const TrackSegment& segment) {
  if (const auto* curve = segment.as<Curve>()) {
    return BendAhead{curve->direction, curve->radius, segment.start_pos, segment.length};
  }
  if (const auto* slope = segment.as<Slope>(); slope && slope->grade != 0.0) {
    return SlopeAhead{slope->grade, segment.start_pos, segment.length};
  }
  if (const auto* station = segment.as<StationZone>()) {
    return StationAhead{station->stop_point};
  }
  throw DanglingTag(fmt::format("segment {} carries no hazard", segment.id));
}

TagDatabase build_database(const Track& track, std::span<const TagInstallation> tags) {
  TagDatabase db;
  for (const auto& tag : tags) {
    if (tag.tag_class != TagClass::Infrastructure) continue;
    if (!tag.segment_id) {
      throw DanglingTag(fmt::format("tag {} has no feature segment", tag.tag_code));
    }
    const TrackSegment* seg = track.find_segment(*tag.segment_id);
    if (seg == nullptr) {
      throw DanglingTag(
          fmt::format("tag {} references missing segment {}", tag.tag_code, *tag.segment_id));
    }
    db.insert(tag.tag_code, condition_for(*seg));
  }
  return db;
}

}  // namespace metrorfid

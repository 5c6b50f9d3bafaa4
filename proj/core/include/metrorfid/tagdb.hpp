#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>

#include "metrorfid/track.hpp"
#include "metrorfid/units.hpp"

namespace metrorfid {

struct SlopeAhead {
  double grade = 0.0;  // per-mille, positive = uphill
  double entry_pos = 0.0;
  double length = 0.0;
  bool operator==(const SlopeAhead&) const = default;
};

struct BendAhead {
  Direction direction = Direction::Right;  // Right = inner wheel on the right
  double radius = 0.0;
  double entry_pos = 0.0;
  double length = 0.0;
  bool operator==(const BendAhead&) const = default;
};

struct StationAhead {
  double stop_pos = 0.0;
  bool operator==(const StationAhead&) const = default;
};

// Obstacles move, so the record carries no position. Distance comes from
// live ranging.
struct ObstacleAhead {
  ObstacleClass obstacle_class = ObstacleClass::Human;
  bool operator==(const ObstacleAhead&) const = default;
};

using Condition = std::variant<SlopeAhead, BendAhead, StationAhead, ObstacleAhead>;

// Mobile tags are recognised by the upper 16 bits of their code.
inline constexpr TagCode kClassPrefixMask = 0xFFFF0000u;
inline constexpr TagCode kTrainRearPrefix = 0xFFFF0000u;
inline constexpr TagCode kHumanPrefix = 0xFFFE0000u;

constexpr TagCode train_rear_tag_code(std::uint16_t index) { return kTrainRearPrefix | index; }
constexpr TagCode human_tag_code(std::uint16_t index) { return kHumanPrefix | index; }

// The onboard read-only table: fixed records for infrastructure tags plus
// prefix rules for mobile tags.
class TagDatabase {
 public:
  // Throws ConfigError on a duplicate code, a code inside a class prefix
  // range, or a record that breaks the Condition invariants.
  void insert(TagCode code, Condition condition);

  const std::map<TagCode, Condition>& fixed_records() const { return records_; }

  std::optional<Condition> try_restore(TagCode code) const;

  bool operator==(const TagDatabase&) const = default;

 private:
  std::map<TagCode, Condition> records_;
};

// Fixed record if present, otherwise the prefix class. Throws UnknownTag.
Condition restore(const TagDatabase& db, TagCode code);

// Condition describing the feature a segment represents. Throws DanglingTag
// for segments that carry no hazard (straight, flat).
Condition condition_for(const TrackSegment& segment);

// Maps every infrastructure tag to its feature's condition. Mobile tags in
// the list are covered by the prefix rules and skipped. Throws DanglingTag
// when an infrastructure tag references no feature segment.
TagDatabase build_database(const Track& track, std::span<const TagInstallation> tags);

}  // namespace metrorfid

#include "metrorfid/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "metrorfid/error.hpp"

namespace metrorfid {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("{}: unknown field '{}'", where, key));
    }
  }
}

template <class T>
void read_opt(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

template <class T>
T read_req(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  return it->get<T>();
}

Direction parse_direction(const std::string& s) {
  if (s == "left") return Direction::Left;
  if (s == "right") return Direction::Right;
  throw ConfigError(fmt::format("unknown direction '{}'", s));
}

std::string direction_name(Direction d) { return d == Direction::Left ? "left" : "right"; }

ObstacleClass parse_obstacle_class(const std::string& s) {
  if (s == "human") return ObstacleClass::Human;
  if (s == "stopped_train") return ObstacleClass::StoppedTrain;
  throw ConfigError(fmt::format("unknown obstacle class '{}'", s));
}

SegmentKind parse_kind(const json& j) {
  const auto type = read_req<std::string>(j, "type", "segment kind");
  if (type == "straight") {
    reject_unknown(j, "straight", {"type"});
    return Straight{};
  }
  if (type == "curve") {
    reject_unknown(j, "curve", {"type", "direction", "radius"});
    return Curve{parse_direction(read_req<std::string>(j, "direction", "curve")),
                 read_req<double>(j, "radius", "curve")};
  }
  if (type == "slope") {
    reject_unknown(j, "slope", {"type", "grade"});
    return Slope{read_req<double>(j, "grade", "slope")};
  }
  if (type == "station_zone") {
    reject_unknown(j, "station_zone", {"type", "stop_point"});
    return StationZone{read_req<double>(j, "stop_point", "station_zone")};
  }
  throw ConfigError(fmt::format("unknown segment kind '{}'", type));
}

ordered_json kind_json(const SegmentKind& kind) {
  if (const auto* c = std::get_if<Curve>(&kind)) {
    return {{"type", "curve"}, {"direction", direction_name(c->direction)}, {"radius", c->radius}};
  }
  if (const auto* s = std::get_if<Slope>(&kind)) return {{"type", "slope"}, {"grade", s->grade}};
  if (const auto* st = std::get_if<StationZone>(&kind)) {
    return {{"type", "station_zone"}, {"stop_point", st->stop_point}};
  }
  return {{"type", "straight"}};
}

Condition parse_condition(const json& j) {
  const auto type = read_req<std::string>(j, "type", "condition");
  if (type == "slope_ahead") {
    reject_unknown(j, type, {"type", "grade", "entry_pos", "length"});
    return SlopeAhead{read_req<double>(j, "grade", type), read_req<double>(j, "entry_pos", type),
                      read_req<double>(j, "length", type)};
  }
  if (type == "bend_ahead") {
    reject_unknown(j, type, {"type", "direction", "radius", "entry_pos", "length"});
    return BendAhead{parse_direction(read_req<std::string>(j, "direction", type)),
                     read_req<double>(j, "radius", type), read_req<double>(j, "entry_pos", type),
                     read_req<double>(j, "length", type)};
  }
  if (type == "station_ahead") {
    reject_unknown(j, type, {"type", "stop_pos"});
    return StationAhead{read_req<double>(j, "stop_pos", type)};
  }
  if (type == "obstacle_ahead") {
    reject_unknown(j, type, {"type", "class"});
    return ObstacleAhead{parse_obstacle_class(read_req<std::string>(j, "class", type))};
  }
  throw ConfigError(fmt::format("unknown condition type '{}'", type));
}

ordered_json condition_json(const Condition& c) {
  if (const auto* s = std::get_if<SlopeAhead>(&c)) {
    return {{"type", "slope_ahead"},
            {"grade", s->grade},
            {"entry_pos", s->entry_pos},
            {"length", s->length}};
  }
  if (const auto* b = std::get_if<BendAhead>(&c)) {
    return {{"type", "bend_ahead"},
            {"direction", direction_name(b->direction)},
            {"radius", b->radius},
            {"entry_pos", b->entry_pos},
            {"length", b->length}};
  }
  if (const auto* st = std::get_if<StationAhead>(&c)) {
    return {{"type", "station_ahead"}, {"stop_pos", st->stop_pos}};
  }
  const auto& o = std::get<ObstacleAhead>(c);
  return {{"type", "obstacle_ahead"},
          {"class", o.obstacle_class == ObstacleClass::Human ? "human" : "stopped_train"}};
}

Hazard parse_hazard(const json& j) {
  const auto type = read_req<std::string>(j, "type", "hazard");
  if (type == "none") {
    reject_unknown(j, "hazard", {"type"});
    return NoHazard{};
  }
  if (type == "human") {
    reject_unknown(j, "hazard", {"type", "position"});
    return HumanHazard{read_req<double>(j, "position", "hazard")};
  }
  if (type == "stopped_train") {
    reject_unknown(j, "hazard", {"type", "position"});
    return StoppedTrainHazard{read_req<double>(j, "position", "hazard")};
  }
  if (type == "sharp_turn") {
    reject_unknown(j, "hazard", {"type", "segment_id"});
    return SharpTurnHazard{read_req<int>(j, "segment_id", "hazard")};
  }
  throw ConfigError(fmt::format("unknown hazard type '{}'", type));
}

ordered_json hazard_json(const Hazard& h) {
  if (const auto* hu = std::get_if<HumanHazard>(&h)) {
    return {{"type", "human"}, {"position", hu->position}};
  }
  if (const auto* t = std::get_if<StoppedTrainHazard>(&h)) {
    return {{"type", "stopped_train"}, {"position", t->position}};
  }
  if (const auto* s = std::get_if<SharpTurnHazard>(&h)) {
    return {{"type", "sharp_turn"}, {"segment_id", s->segment_id}};
  }
  return {{"type", "none"}};
}

Scenario parse(const json& doc) {
  reject_unknown(doc, "scenario",
                 {"track", "tag_advance", "tagdb", "radio", "controller", "dynamics", "train",
                  "hazard", "max_ticks", "sharp_turn_radius"});

  const auto& track_json = doc.at("track");
  if (!track_json.is_array()) throw ConfigError("track: expected a list of segments");
  std::vector<TrackSegment> segments;
  for (const auto& sj : track_json) {
    reject_unknown(sj, "segment", {"id", "start_pos", "length", "kind", "speed_limit"});
    segments.push_back(TrackSegment{
        .id = read_req<int>(sj, "id", "segment"),
        .start_pos = read_req<double>(sj, "start_pos", "segment"),
        .length = read_req<double>(sj, "length", "segment"),
        .kind = parse_kind(read_req<json>(sj, "kind", "segment")),
        .speed_limit = read_req<double>(sj, "speed_limit", "segment"),
    });
  }

  Scenario s;
  s.track = build_track(std::move(segments));
  read_opt(doc, "tag_advance", s.tag_advance);
  s.tags = place_tags(s.track, s.tag_advance);

  if (auto it = doc.find("tagdb"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("tagdb: expected a list of records");
    for (const auto& rj : *it) {
      reject_unknown(rj, "tagdb record", {"tag_code", "condition"});
      s.db.insert(read_req<TagCode>(rj, "tag_code", "tagdb record"),
                  parse_condition(read_req<json>(rj, "condition", "tagdb record")));
    }
  } else {
    s.db = build_database(s.track, s.tags);
  }

  if (auto it = doc.find("radio"); it != doc.end()) {
    reject_unknown(*it, "radio",
                   {"ref_power_dbm", "path_loss_exponent", "noise_sigma_db", "read_range_m",
                    "read_probability"});
    read_opt(*it, "ref_power_dbm", s.radio.ref_power_dbm);
    read_opt(*it, "path_loss_exponent", s.radio.path_loss_exponent);
    read_opt(*it, "noise_sigma_db", s.radio.noise_sigma_db);
    read_opt(*it, "read_range_m", s.radio.read_range_m);
    read_opt(*it, "read_probability", s.radio.read_probability);
  }
  if (auto it = doc.find("controller"); it != doc.end()) {
    reject_unknown(*it, "controller",
                   {"service_decel", "max_decel", "lateral_accel_max", "stop_margin",
                    "cruise_speed", "rpm_step", "tick_dt"});
    read_opt(*it, "service_decel", s.control.service_decel);
    read_opt(*it, "max_decel", s.control.max_decel);
    read_opt(*it, "lateral_accel_max", s.control.lateral_accel_max);
    read_opt(*it, "stop_margin", s.control.stop_margin);
    read_opt(*it, "cruise_speed", s.control.cruise_speed);
    read_opt(*it, "rpm_step", s.control.rpm_step);
    read_opt(*it, "tick_dt", s.control.tick_dt);
  }
  if (auto it = doc.find("dynamics"); it != doc.end()) {
    reject_unknown(*it, "dynamics", {"derail_accel", "collision_speed"});
    read_opt(*it, "derail_accel", s.dynamics.derail_accel);
    read_opt(*it, "collision_speed", s.dynamics.collision_speed);
  }
  s.dynamics.max_decel = s.control.max_decel;
  if (auto it = doc.find("train"); it != doc.end()) {
    reject_unknown(*it, "train", {"mass", "wheel_radius"});
    read_opt(*it, "mass", s.train.mass);
    read_opt(*it, "wheel_radius", s.train.wheel_radius);
  }
  if (auto it = doc.find("hazard"); it != doc.end()) s.hazard = parse_hazard(*it);
  read_opt(doc, "max_ticks", s.max_ticks);
  read_opt(doc, "sharp_turn_radius", s.sharp_turn_radius);

  s.validate();
  return s;
}

}  // namespace

Scenario load_scenario(std::string_view json_text) {
  try {
    return parse(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("scenario: {}", e.what()));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("scenario: {}", e.what()));
  }
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open scenario file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string dump_scenario(const Scenario& s) {
  ordered_json track = ordered_json::array();
  for (const auto& seg : s.track.segments()) {
    track.push_back(ordered_json{
        {"id", seg.id},
        {"start_pos", seg.start_pos},
        {"length", seg.length},
        {"kind", kind_json(seg.kind)},
        {"speed_limit", seg.speed_limit},
    });
  }
  ordered_json tagdb = ordered_json::array();
  for (const auto& [code, condition] : s.db.fixed_records()) {
    tagdb.push_back(ordered_json{{"tag_code", code}, {"condition", condition_json(condition)}});
  }
  ordered_json doc{
      {"track", track},
      {"tag_advance", s.tag_advance},
      {"tagdb", tagdb},
      {"radio",
       {{"ref_power_dbm", s.radio.ref_power_dbm},
        {"path_loss_exponent", s.radio.path_loss_exponent},
        {"noise_sigma_db", s.radio.noise_sigma_db},
        {"read_range_m", s.radio.read_range_m},
        {"read_probability", s.radio.read_probability}}},
      {"controller",
       {{"service_decel", s.control.service_decel},
        {"max_decel", s.control.max_decel},
        {"lateral_accel_max", s.control.lateral_accel_max},
        {"stop_margin", s.control.stop_margin},
        {"cruise_speed", s.control.cruise_speed},
        {"rpm_step", s.control.rpm_step},
        {"tick_dt", s.control.tick_dt}}},
      {"dynamics",
       {{"derail_accel", s.dynamics.derail_accel},
        {"collision_speed", s.dynamics.collision_speed}}},
      {"train", {{"mass", s.train.mass}, {"wheel_radius", s.train.wheel_radius}}},
      {"hazard", hazard_json(s.hazard)},
      {"max_ticks", s.max_ticks},
      {"sharp_turn_radius", s.sharp_turn_radius},
  };
  return doc.dump(2) + "\n";
}

}  // namespace metrorfid

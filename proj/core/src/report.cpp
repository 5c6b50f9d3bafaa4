#include "metrorfid/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "metrorfid/error.hpp"

namespace metrorfid {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kReportHeader =
    "trips,hazardous_trips,safe_trips,collisions_human,collisions_train,derailments,"
    "controller_enabled,master_seed\n";

ordered_json stats_json(const ExperimentStats& s) {
  ordered_json by_kind = ordered_json::object();
  for (auto kind :
       {IncidentKind::CollisionHuman, IncidentKind::CollisionTrain, IncidentKind::Derailment}) {
    by_kind[std::string(incident_kind_name(kind))] = s.incident_count(kind);
  }
  return ordered_json{
      {"trips", s.trips},
      {"hazardous_trips", s.hazardous_trips},
      {"safe_trips", s.safe_trips},
      {"incidents_by_kind", by_kind},
      {"controller_enabled", s.controller_enabled},
      {"master_seed", s.master_seed},
  };
}

std::string csv_row(const ExperimentStats& s) {
  return fmt::format("{},{},{},{},{},{},{},{}\n", s.trips, s.hazardous_trips, s.safe_trips,
                     s.incident_count(IncidentKind::CollisionHuman),
                     s.incident_count(IncidentKind::CollisionTrain),
                     s.incident_count(IncidentKind::Derailment),
                     s.controller_enabled ? "true" : "false", s.master_seed);
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError(fmt::format("unknown report format '{}'", name));
}

std::string_view incident_kind_name(IncidentKind kind) {
  switch (kind) {
    case IncidentKind::CollisionHuman:
      return "collision_human";
    case IncidentKind::CollisionTrain:
      return "collision_train";
    case IncidentKind::Derailment:
      return "derailment";
  }
  return "unknown";
}

std::string_view trip_end_name(TripEnd end) {
  switch (end) {
    case TripEnd::TrackEnd:
      return "track_end";
    case TripEnd::Stopped:
      return "stopped";
    case TripEnd::Collision:
      return "collision";
    case TripEnd::Derailment:
      return "derailment";
    case TripEnd::Timeout:
      return "timeout";
  }
  return "unknown";
}

std::string emit_report(const ExperimentStats& stats, ReportFormat format) {
  return emit_report(std::span<const ExperimentStats>(&stats, 1), format);
}

std::string emit_report(std::span<const ExperimentStats> runs, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::string out(kReportHeader);
    for (const auto& s : runs) {
      if (s.trips > 0) out += csv_row(s);
    }
    return out;
  }
  if (runs.size() == 1) return stats_json(runs.front()).dump(2) + "\n";
  ordered_json arr = ordered_json::array();
  for (const auto& s : runs) arr.push_back(stats_json(s));
  return arr.dump(2) + "\n";
}

std::string trajectory_csv(std::span<const TrajectoryRow> rows) {
  std::string out = "tick,pos_m,speed_mps,left_rpm,right_rpm,brake\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", r.tick, r.pos_m, r.speed_mps,
                       r.left_rpm, r.right_rpm, r.brake ? 1 : 0);
  }
  return out;
}

std::string decisions_csv(std::span<const DecisionRow> rows) {
  std::string out = "tick,active_conditions,delta_motor_rpm,delta_left_rpm,delta_right_rpm,brake\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.6f},{:.6f},{:.6f},{}\n", r.tick, r.active_conditions,
                       r.command.delta_motor_rpm, r.command.delta_left_rpm,
                       r.command.delta_right_rpm, r.command.brake ? 1 : 0);
  }
  return out;
}

std::string trip_result_json(const TripResult& result) {
  ordered_json incidents = ordered_json::array();
  for (const auto& i : result.incidents) {
    incidents.push_back(ordered_json{
        {"kind", incident_kind_name(i.kind)},
        {"tick", i.tick},
        {"position", i.position},
        {"speed_at_event", i.speed_at_event},
    });
  }
  ordered_json j{
      {"safe", result.safe},
      {"end", trip_end_name(result.end)},
      {"incidents", incidents},
      {"ticks_used", result.ticks_used},
      {"final_pos", result.final_pos},
      {"station_stop_error", nullptr},
      {"unknown_tag_count", result.unknown_tag_count},
  };
  if (result.station_stop_error) j["station_stop_error"] = *result.station_stop_error;
  return j.dump(2) + "\n";
}

}  // namespace metrorfid

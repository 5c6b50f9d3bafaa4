#pragma once

#include <span>
#include <string>
#include <string_view>

#include "metrorfid/harness.hpp"

namespace metrorfid {

enum class ReportFormat { Csv, Json };

// Throws ConfigError for anything other than "csv" or "json".
ReportFormat parse_report_format(std::string_view name);

std::string_view incident_kind_name(IncidentKind kind);
std::string_view trip_end_name(TripEnd end);

// CSV: header `trips,hazardous_trips,safe_trips,collisions_human,
// collisions_train,derailments,controller_enabled,master_seed` and one row
// per run; a run with zero trips contributes no row. JSON: one object per
// run (an array when there is more than one). Byte-stable.
std::string emit_report(const ExperimentStats& stats, ReportFormat format);
std::string emit_report(std::span<const ExperimentStats> runs, ReportFormat format);

// tick,pos_m,speed_mps,left_rpm,right_rpm,brake
std::string trajectory_csv(std::span<const TrajectoryRow> rows);

// tick,active_conditions,delta_motor_rpm,delta_left_rpm,delta_right_rpm,brake
std::string decisions_csv(std::span<const DecisionRow> rows);

std::string trip_result_json(const TripResult& result);

}  // namespace metrorfid

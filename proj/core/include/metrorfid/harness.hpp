#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "metrorfid/dynamics.hpp"
#include "metrorfid/scenario.hpp"

namespace metrorfid {

enum class TripEnd { TrackEnd, Stopped, Collision, Derailment, Timeout };

struct TripResult {
  bool safe = true;  // no incidents
  std::vector<Incident> incidents;
  Tick ticks_used = 0;
  double final_pos = 0.0;
  // Stop point minus final position, when the train came to rest in a
  // station zone.
  std::optional<double> station_stop_error;
  std::size_t unknown_tag_count = 0;
  TripEnd end = TripEnd::TrackEnd;

  bool timed_out() const { return end == TripEnd::Timeout; }
  bool operator==(const TripResult&) const = default;
};

struct TrajectoryRow {
  Tick tick = 0;
  double pos_m = 0.0;
  double speed_mps = 0.0;
  double left_rpm = 0.0;
  double right_rpm = 0.0;
  bool brake = false;
  bool operator==(const TrajectoryRow&) const = default;
};

struct DecisionRow {
  Tick tick = 0;
  std::size_t active_conditions = 0;
  ActuationCommand command;
  bool operator==(const DecisionRow&) const = default;
};

struct TripTrace {
  std::vector<TrajectoryRow> trajectory;
  std::vector<DecisionRow> decisions;
  bool operator==(const TripTrace&) const = default;
};

// Runs one trip: each tick scans, runs the controller, steps the train and
// checks for incidents. Ends at the track end, when the train comes to rest,
// on the first incident, or after max_ticks (recorded as Timeout).
// Deterministic in (scenario, controller_enabled, trial_seed).
TripResult run_trip(const Scenario& scenario, bool controller_enabled, std::uint64_t trial_seed,
                    TripTrace* trace = nullptr);

// `total` copies of the template. `hazardous` of them, chosen at random,
// carry a hazard whose class is drawn uniformly (human, stopped train, sharp
// turn) and whose position is uniform over the middle 60% of the line. A
// sharp turn tightens the curve nearest that position to sharp_turn_radius;
// templates without curves draw from the two obstacle classes only.
// Throws ConfigError unless 0 <= hazardous <= total.
std::vector<Scenario> generate_scenarios(const Scenario& base, int total, int hazardous,
                                         std::uint64_t master_seed);

struct ExperimentStats {
  int trips = 0;
  int hazardous_trips = 0;
  int safe_trips = 0;
  std::map<IncidentKind, int> incidents_by_kind;
  bool controller_enabled = true;
  std::uint64_t master_seed = 0;

  int unsafe_trips() const { return trips - safe_trips; }
  int incident_count(IncidentKind kind) const;
  bool operator==(const ExperimentStats&) const = default;
};

// Seed of trial `index` within a run seeded by master_seed.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index);

// Runs every scenario with trial seed trial_seed(master_seed, i) on up to
// `parallelism` threads (0 = hardware concurrency). Results are in scenario
// order and do not depend on the thread count.
std::vector<TripResult> run_trips(std::span<const Scenario> scenarios, bool controller_enabled,
                                  std::uint64_t master_seed, unsigned parallelism = 1);

ExperimentStats aggregate(std::span<const Scenario> scenarios, std::span<const TripResult> results,
                          bool controller_enabled, std::uint64_t master_seed);

// generate_scenarios + run_trips + aggregate.
ExperimentStats run_experiment(const Scenario& base, int total, int hazardous,
                               bool controller_enabled, std::uint64_t master_seed,
                               unsigned parallelism = 1);

}  // namespace metrorfid

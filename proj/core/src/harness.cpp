#include "metrorfid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "metrorfid/error.hpp"
#include "metrorfid/random.hpp"

namespace metrorfid {

namespace {

// Salt separating the scenario-generation stream from trial seeds.
constexpr std::uint64_t kScenarioStream = 0x5CE7A410D0ULL;

bool is_hazardous(const Scenario& s) { return !std::holds_alternative<NoHazard>(s.hazard); }

const TrackSegment* nearest_curve(const Track& track, double pos) {
  const TrackSegment* best = nullptr;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& seg : track.segments()) {
    if (!seg.as<Curve>()) continue;
    const double gap = pos < seg.start_pos ? seg.start_pos - pos
                       : pos > seg.end_pos() ? pos - seg.end_pos()
                                             : 0.0;
    if (gap < best_gap) {
      best_gap = gap;
      best = &seg;
    }
  }
  return best;
}

Scenario with_sharp_turn(const Scenario& base, int segment_id) {
  auto segments = base.track.segments();
  for (auto& seg : segments) {
    if (seg.id == segment_id) std::get<Curve>(seg.kind).radius = base.sharp_turn_radius;
  }
  Scenario s = base;
  s.track = build_track(std::move(segments));
  rebuild_tags(s);
  s.hazard = SharpTurnHazard{segment_id};
  return s;
}

}  // namespace

TripResult run_trip(const Scenario& scenario, bool controller_enabled, std::uint64_t trial_seed,
                    TripTrace* trace) {
  Rng rng(trial_seed);
  const ControlParams& control = scenario.control;
  DynamicsParams dynamics = scenario.dynamics;
  dynamics.max_decel = control.max_decel;

  const std::vector<Obstacle> obstacles = scenario.obstacles();
  std::vector<TagInstallation> live_tags = scenario.tags;
  for (const auto& obstacle : obstacles) live_tags.push_back(obstacle_tag(obstacle));

  TrainState train = make_train(0.0, control.cruise_speed, scenario.train.mass,
                                scenario.train.wheel_radius);
  train.controller_enabled = controller_enabled;

  ControllerState ctrl;
  IncidentDetector detector;
  TripResult result;
  result.end = TripEnd::Timeout;

  Tick tick = 0;
  for (; tick < scenario.max_ticks; ++tick) {
    const auto events = scan(train.front_pos, live_tags, scenario.radio, rng, tick);
    const ActuationCommand cmd =
        controller_tick(ctrl, train, events, scenario.db, control, tick);
    const TrackSegment& segment = scenario.track.segment_at(train.front_pos);
    const TrainState next = step(train, cmd, segment, control.tick_dt, dynamics);
    const auto incidents =
        detector.detect(next, train, scenario.track, obstacles, dynamics, tick);

    if (trace != nullptr) {
      trace->decisions.push_back(DecisionRow{tick, ctrl.active.size(), cmd});
      trace->trajectory.push_back(TrajectoryRow{tick, next.front_pos, next.speed, next.left_rpm,
                                                next.right_rpm, cmd.brake});
    }
    train = next;

    if (!incidents.empty()) {
      const bool derailed = std::any_of(incidents.begin(), incidents.end(), [](const Incident& i) {
        return i.kind == IncidentKind::Derailment;
      });
      const bool collided = std::any_of(incidents.begin(), incidents.end(), [](const Incident& i) {
        return i.kind != IncidentKind::Derailment;
      });
      result.end = collided ? TripEnd::Collision : (derailed ? TripEnd::Derailment : result.end);
      ++tick;
      break;
    }
    if (train.front_pos >= scenario.track.length()) {
      result.end = TripEnd::TrackEnd;
      ++tick;
      break;
    }
    if (train.speed == 0.0) {
      result.end = TripEnd::Stopped;
      ++tick;
      break;
    }
  }

  result.incidents = detector.reported();
  result.safe = result.incidents.empty();
  result.ticks_used = tick;
  result.final_pos = train.front_pos;
  result.unknown_tag_count = ctrl.unknown_tags;
  if (result.end == TripEnd::Stopped && train.front_pos < scenario.track.length()) {
    if (const auto* station = scenario.track.segment_at(train.front_pos).as<StationZone>()) {
      result.station_stop_error = station->stop_point - train.front_pos;
    }
  }
  return result;
}

std::vector<Scenario> generate_scenarios(const Scenario& base, int total, int hazardous,
                                         std::uint64_t master_seed) {
  if (total < 0 || hazardous < 0 || hazardous > total) {
    throw ConfigError(
        fmt::format("need 0 <= hazardous ({}) <= total ({})", hazardous, total));
  }
  Rng rng(mix64(master_seed ^ kScenarioStream));

  std::vector<int> order(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = total - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }
  std::vector<bool> chosen(static_cast<std::size_t>(total), false);
  for (int k = 0; k < hazardous; ++k) chosen[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = true;

  const bool has_curve = std::any_of(base.track.segments().begin(), base.track.segments().end(),
                                     [](const TrackSegment& s) { return s.as<Curve>() != nullptr; });
  const double length = base.track.length();
  std::uniform_int_distribution<int> hazard_class(0, has_curve ? 2 : 1);
  std::uniform_real_distribution<double> position(0.2 * length, 0.8 * length);

  Scenario clean = base;
  clean.hazard = NoHazard{};

  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) {
    if (!chosen[static_cast<std::size_t>(i)]) {
      out.push_back(clean);
      continue;
    }
    const int cls = hazard_class(rng);
    const double pos = position(rng);
    switch (cls) {
      case 0: {
        Scenario s = clean;
        s.hazard = HumanHazard{pos};
        out.push_back(std::move(s));
        break;
      }
      case 1: {
        Scenario s = clean;
        s.hazard = StoppedTrainHazard{pos};
        out.push_back(std::move(s));
        break;
      }
      default:
        out.push_back(with_sharp_turn(clean, nearest_curve(base.track, pos)->id));
        break;
    }
  }
  return out;
}

int ExperimentStats::incident_count(IncidentKind kind) const {
  auto it = incidents_by_kind.find(kind);
  return it == incidents_by_kind.end() ? 0 : it->second;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

std::vector<TripResult> run_trips(std::span<const Scenario> scenarios, bool controller_enabled,
                                  std::uint64_t master_seed, unsigned parallelism) {
  std::vector<TripResult> results(scenarios.size());
  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(parallelism, scenarios.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_trip(scenarios[i], controller_enabled, trial_seed(master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

ExperimentStats aggregate(std::span<const Scenario> scenarios, std::span<const TripResult> results,
                          bool controller_enabled, std::uint64_t master_seed) {
  ExperimentStats stats;
  stats.controller_enabled = controller_enabled;
  stats.master_seed = master_seed;
  stats.trips = static_cast<int>(results.size());
  stats.hazardous_trips =
      static_cast<int>(std::count_if(scenarios.begin(), scenarios.end(), is_hazardous));
  for (const auto& r : results) {
    if (r.safe) ++stats.safe_trips;
    for (const auto& incident : r.incidents) ++stats.incidents_by_kind[incident.kind];
  }
  return stats;
}

ExperimentStats run_experiment(const Scenario& base, int total, int hazardous,
                               bool controller_enabled, std::uint64_t master_seed,
                               unsigned parallelism) {
  const auto scenarios = generate_scenarios(base, total, hazardous, master_seed);
  const auto results = run_trips(scenarios, controller_enabled, master_seed, parallelism);
  return aggregate(scenarios, results, controller_enabled, master_seed);
}

}  // namespace metrorfid

#include <benchmark/benchmark.h>

#include "metrorfid/harness.hpp"
#include "metrorfid/radio.hpp"
#include "metrorfid/scenario.hpp"

namespace {

using namespace metrorfid;

void BM_Scan(benchmark::State& state) {
  const Scenario s = default_scenario();
  Rng rng(1);
  double pos = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan(pos, s.tags, s.radio, rng, 0));
    pos = pos > 1900.0 ? 0.0 : pos + 1.7;
  }
}
BENCHMARK(BM_Scan);

void BM_RunTrip(benchmark::State& state) {
  Scenario s = default_scenario();
  s.hazard = HumanHazard{1100.0};
  const bool enabled = state.range(0) != 0;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trip(s, enabled, seed++));
}
BENCHMARK(BM_RunTrip)->Arg(0)->Arg(1);

void BM_RunExperiment(benchmark::State& state) {
  const Scenario s = default_scenario();
  const auto threads = static_cast<unsigned>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(s, 60, 16, true, seed++, threads));
}
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// metrosim: run single trips or on/off experiments over a scenario file.
//
//   metrosim simulate --scenario line.json --controller on --seed 7 --trace traj.csv
//   metrosim experiment --scenario line.json --trips 60 --hazardous 16 --seed 7 --format csv
//   metrosim default-scenario > line.json
//
// Exit codes: 0 success, 2 invalid configuration or arguments, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "metrorfid/error.hpp"
#include "metrorfid/harness.hpp"
#include "metrorfid/report.hpp"
#include "metrorfid/scenario_io.hpp"

namespace {

constexpr int kExitConfig = 2;

metrorfid::Scenario load_or_default(const std::string& path) {
  return path.empty() ? metrorfid::default_scenario() : metrorfid::load_scenario_file(path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw metrorfid::ConfigError(fmt::format("cannot write '{}'", path));
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RFID-instrumented metro line simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string controller = "on";
  std::uint64_t seed = 1;
  std::string trace_path;
  std::string decisions_path;

  auto* simulate = app.add_subcommand("simulate", "Run one trip and print its result as JSON");
  simulate->add_option("--scenario", scenario_path, "Scenario file (default: built-in line)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--controller", controller, "Onboard controller on|off")
      ->check(CLI::IsMember({"on", "off"}));
  simulate->add_option("--seed", seed, "Trial seed");
  simulate->add_option("--trace", trace_path, "Write the per-tick trajectory CSV here");
  simulate->add_option("--decisions", decisions_path, "Write the per-tick controller log CSV here");

  int trips = 60;
  int hazardous = 16;
  std::string format = "csv";
  std::string modes = "both";
  unsigned parallel = 1;

  auto* experiment =
      app.add_subcommand("experiment", "Run a batch of trips and print aggregate statistics");
  experiment->add_option("--scenario", scenario_path, "Template scenario (default: built-in line)")
      ->check(CLI::ExistingFile);
  experiment->add_option("--trips", trips, "Number of trips")->check(CLI::NonNegativeNumber);
  experiment->add_option("--hazardous", hazardous, "Trips carrying a hazard")
      ->check(CLI::NonNegativeNumber);
  experiment->add_option("--seed", seed, "Master seed");
  experiment->add_option("--format", format, "Report format csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--controller", modes, "Controller mode on|off|both")
      ->check(CLI::IsMember({"on", "off", "both"}));
  experiment->add_option("--parallel", parallel, "Worker threads (0 = all cores)");

  auto* dump = app.add_subcommand("default-scenario", "Print the built-in scenario as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      const auto scenario = load_or_default(scenario_path);
      metrorfid::TripTrace trace;
      const bool want_trace = !trace_path.empty() || !decisions_path.empty();
      const auto result =
          metrorfid::run_trip(scenario, controller == "on", seed, want_trace ? &trace : nullptr);
      if (!trace_path.empty()) write_file(trace_path, metrorfid::trajectory_csv(trace.trajectory));
      if (!decisions_path.empty()) {
        write_file(decisions_path, metrorfid::decisions_csv(trace.decisions));
      }
      std::cout << metrorfid::trip_result_json(result);
    } else if (experiment->parsed()) {
      const auto scenario = load_or_default(scenario_path);
      std::vector<metrorfid::ExperimentStats> runs;
      for (bool enabled : {true, false}) {
        if ((enabled && modes == "off") || (!enabled && modes == "on")) continue;
        runs.push_back(
            metrorfid::run_experiment(scenario, trips, hazardous, enabled, seed, parallel));
      }
      std::cout << metrorfid::emit_report(runs, metrorfid::parse_report_format(format));
    } else if (dump->parsed()) {
      std::cout << metrorfid::dump_scenario(metrorfid::default_scenario());
    }
  } catch (const metrorfid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

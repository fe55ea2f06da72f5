#pragma once

// Batch execution: one scenario run (traverse + thermal + reports) or a
// one-parameter sweep of runs. All file outputs are deterministic for a
// fixed config and seed, byte for byte, regardless of concurrency.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warmbox/config_io.hpp"
#include "warmbox/scenario.hpp"
#include "warmbox/thermal.hpp"
#include "warmbox/traverse.hpp"

namespace warmbox {

// Shortest unambiguous fixed-quality form: 9 significant digits, '.' decimal
// separator, no locale dependence.
std::string format_csv_number(double value);

struct RunResult {
  TraverseReport traverse;
  ThermalSummary thermal;
  std::vector<GateReport> gates;
  std::vector<Verdict> verdicts;  // traverse verdicts + steering_selection + thermal_band
  bool aborted = false;
  std::string abort_kind;
  std::size_t abort_step = 0;
  int exit_code = 0;  // 0 all pass, 1 verdict failure, 3 aborted

  bool all_pass() const;
};

// Runs the full pipeline into out_dir: steps.csv, thermal.csv, summary.json
// (error.json instead on abort). seed_override replaces terrain.seed.
RunResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

struct SweepRow {
  double value = 0.0;
  RunResult result;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // input order
  int exit_code = 0;           // 0 all runs completed, 3 if any aborted
};

// One run per value of the dotted parameter path, each in out_dir/value_<i>,
// executed concurrently (at most `jobs` at once; 0 = hardware concurrency),
// plus an aggregated sweep.csv. Configuration problems (bad path, gate or
// validation failure for any value) throw before any run starts.
SweepResult run_sweep(const ScenarioConfig& base, const std::string& parameter_path,
                      const std::vector<double>& values, const std::string& out_dir,
                      unsigned jobs = 0);

}  // namespace warmbox

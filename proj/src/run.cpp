#include "warmbox/run.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

namespace warmbox {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  return out;
}

std::string steps_header(std::size_t n_wheels) {
  std::string h = "step_index,s_m,slope_rad";
  const auto per_wheel = [&](const char* stem) {
    for (std::size_t i = 0; i < n_wheels; ++i) h += "," + std::string(stem) + std::to_string(i);
  };
  per_wheel("load_N_");
  per_wheel("wheel_torque_Nm_");
  per_wheel("motor_torque_Nm_");
  per_wheel("steer_angle_rad_");
  h += ",chain_efficiency,derating,energy_J_cumulative";
  return h;
}

void write_step_row(std::ofstream& out, const TraverseStepRecord& rec) {
  out << rec.step_index << ',' << format_csv_number(rec.s_m) << ','
      << format_csv_number(rec.slope_rad);
  for (double v : rec.load_n) out << ',' << format_csv_number(v);
  for (double v : rec.wheel_torque_nm) out << ',' << format_csv_number(v);
  for (double v : rec.motor_torque_nm) out << ',' << format_csv_number(v);
  for (double v : rec.steer_angle_rad) out << ',' << format_csv_number(v);
  out << ',' << format_csv_number(rec.chain_efficiency) << ','
      << format_csv_number(rec.derating) << ','
      << format_csv_number(rec.energy_j_cumulative) << '\n';
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["name"] = v.name;
  j["pass"] = v.pass;
  j["vacuous"] = v.vacuous;
  j["observed_lo"] = v.observed_lo;
  j["observed_hi"] = v.observed_hi;
  j["bound_lo"] = v.bound_lo;
  j["bound_hi"] = v.bound_hi;
  return j;
}

ordered_json gate_json(const GateReport& g) {
  ordered_json j;
  j["name"] = g.name;
  j["pass"] = g.pass;
  j["observed"] = g.observed;
  j["bound"] = g.bound;
  j["detail"] = g.detail;
  return j;
}

ordered_json traverse_json(const TraverseReport& r) {
  ordered_json j;
  j["steps"] = r.steps;
  j["distance_km"] = r.distance_km;
  j["wheel_torque_min_nm"] = r.wheel_torque_min_nm;
  j["wheel_torque_max_nm"] = r.wheel_torque_max_nm;
  j["steer_torque_min_nm"] = r.steer_torque_min_nm;
  j["steer_torque_max_nm"] = r.steer_torque_max_nm;
  j["motor_torque_max_nm"] = r.motor_torque_max_nm;
  j["energy_drive_j"] = r.energy_drive_j;
  j["energy_steering_j"] = r.energy_steering_j;
  j["energy_total_j"] = r.energy_total_j;
  j["initial_efficiency"] = r.initial_efficiency;
  j["final_efficiency"] = r.final_efficiency;
  j["efficiency_retention"] = r.efficiency_retention;
  j["speed_ripple"] = r.speed_ripple;
  ordered_json wear;
  wear["odometer_km"] = r.wear.odometer_km;
  wear["steer_cycles"] = r.wear.steer_cycles;
  wear["cardan_bend_exposure_rad"] = r.wear.cardan_bend_exposure_rad;
  wear["derating"] = r.wear.derating;
  j["wear"] = wear;
  return j;
}

ordered_json thermal_json(const ThermalSummary& t) {
  ordered_json j;
  j["min_temp_k"] = t.min_temp_k;
  j["max_temp_k"] = t.max_temp_k;
  j["final_temp_k"] = t.final_temp_k;
  j["duty_cycle"] = t.duty_cycle;
  j["duty_cold_half"] = t.duty_cold_half;
  j["duty_warm_half"] = t.duty_warm_half;
  j["band_low_k"] = t.band_low_k;
  j["band_high_k"] = t.band_high_k;
  j["within_band"] = t.within_band;
  j["heater_energy_j"] = t.heater_energy_j;
  j["energy_residual_rel"] = t.energy_residual_rel;
  return j;
}

}  // namespace

std::string format_csv_number(double value) {
  std::array<char, 32> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

bool RunResult::all_pass() const {
  if (aborted) return false;
  if (!std::all_of(gates.begin(), gates.end(), [](const GateReport& g) { return g.pass; }))
    return false;
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

RunResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override) {
  RunResult result;
  result.gates = evaluate_gates(config);
  require_gates(config);
  config.validate();

  ScenarioConfig effective = config;
  if (seed_override) effective.terrain.seed = *seed_override;

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const TerrainProfile terrain = make_terrain(effective.terrain);
  const Route route = make_route(effective.route);
  const TraverseSetup setup = make_traverse_setup(effective);
  const std::size_t n_wheels = setup.layout.legs_m.size();

  try {
    {
      std::ofstream steps = open_output(dir / "steps.csv");
      steps << steps_header(n_wheels) << '\n';
      result.traverse = run_traverse(setup, terrain, route,
                                     [&](const TraverseStepRecord& rec) { write_step_row(steps, rec); });
    }
    {
      std::ofstream trace = open_output(dir / "thermal.csv");
      trace << "time_s,box_temp_K,env_temp_K,heater_W,duty_so_far" << '\n';
      const ThermalSection& th = effective.thermal;
      try {
        result.thermal = simulate_thermal(
            th.node, th.controller, th.environment, th.initial_temp_k, th.duration_s, th.dt_s,
            [&](const ThermalStepRecord& rec) {
              trace << format_csv_number(rec.time_s) << ',' << format_csv_number(rec.box_temp_k)
                    << ',' << format_csv_number(rec.env_temp_k) << ','
                    << format_csv_number(rec.heater_w) << ',' << format_csv_number(rec.duty_so_far)
                    << '\n';
            });
      } catch (const ValidationError& e) {
        throw SimulationAbort(e.what(), 0, "thermal_error");
      }
    }
  } catch (const SimulationAbort& abort) {
    result.aborted = true;
    result.abort_kind = abort.kind;
    result.abort_step = abort.step_index;
    result.exit_code = 3;
    ordered_json err;
    err["kind"] = abort.kind;
    err["step_index"] = abort.step_index;
    err["message"] = abort.what();
    open_output(dir / "error.json") << err.dump(2) << '\n';
    return result;
  }

  result.verdicts = result.traverse.verdicts;

  // Trade-study ordering: the capstan chain must beat the shipped gear train.
  const SteeringComparison cmp =
      compare_steering(effective.steering.capstan, effective.drive.comparison_gear_train);
  Verdict selection;
  selection.name = "steering_selection";
  selection.pass = cmp.capstan_preferred;
  selection.observed_lo = cmp.gear_efficiency;
  selection.observed_hi = cmp.capstan_efficiency;
  selection.bound_lo = cmp.gear_efficiency;
  selection.bound_hi = 1.0;
  result.verdicts.push_back(selection);

  Verdict band;
  band.name = "thermal_band";
  band.pass = result.thermal.within_band;
  band.observed_lo = result.thermal.min_temp_k;
  band.observed_hi = result.thermal.max_temp_k;
  band.bound_lo = result.thermal.band_low_k;
  band.bound_hi = result.thermal.band_high_k;
  result.verdicts.push_back(band);

  result.exit_code = result.all_pass() ? 0 : 1;

  ordered_json summary;
  summary["name"] = effective.name;
  summary["seed"] = effective.terrain.seed;
  ordered_json gates = ordered_json::array();
  for (const GateReport& g : result.gates) gates.push_back(gate_json(g));
  summary["gates"] = gates;
  summary["traverse"] = traverse_json(result.traverse);
  summary["thermal"] = thermal_json(result.thermal);
  ordered_json verdicts = ordered_json::array();
  for (const Verdict& v : result.verdicts) verdicts.push_back(verdict_json(v));
  summary["verdicts"] = verdicts;
  summary["all_pass"] = result.all_pass();
  summary["exit_code"] = result.exit_code;
  open_output(dir / "summary.json") << summary.dump(2) << '\n';

  return result;
}

SweepResult run_sweep(const ScenarioConfig& base, const std::string& parameter_path,
                      const std::vector<double>& values, const std::string& out_dir,
                      unsigned jobs) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  static const char* header =
      "value,steps,distance_km,wheel_torque_min_Nm,wheel_torque_max_Nm,"
      "steering_torque_min_Nm,steering_torque_max_Nm,motor_torque_max_Nm,"
      "energy_total_J,efficiency_retention,verdicts_pass";

  SweepResult result;
  if (values.empty()) {
    open_output(dir / "sweep.csv") << header << '\n';
    return result;
  }

  // Materialize and validate every point before any run starts, so path and
  // config errors surface deterministically.
  const ordered_json base_doc = config_to_json(base);
  std::vector<ScenarioConfig> configs;
  configs.reserve(values.size());
  for (double value : values) {
    ordered_json doc = base_doc;
    apply_sweep_value(doc, parameter_path, value);
    ScenarioConfig cfg = config_from_json(doc);
    require_gates(cfg);
    try {
      cfg.validate();
    } catch (const ValidationError& e) {
      throw ConfigError("sweep value " + format_csv_number(value) + ": " + e.what());
    }
    configs.push_back(std::move(cfg));
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<RunResult> runs(values.size());
  std::vector<std::future<void>> inflight;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (inflight.size() >= jobs) {
      inflight.front().get();
      inflight.erase(inflight.begin());
    }
    inflight.push_back(std::async(std::launch::async, [&, i] {
      const fs::path run_dir = dir / ("value_" + std::to_string(i));
      runs[i] = run_scenario(configs[i], run_dir.string());
    }));
  }
  for (auto& f : inflight) f.get();

  std::ofstream table = open_output(dir / "sweep.csv");
  table << header << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    const RunResult& run = runs[i];
    const TraverseReport& tr = run.traverse;
    const double wheel_min = tr.wheel_torque_min_nm.empty()
                                 ? 0.0
                                 : *std::min_element(tr.wheel_torque_min_nm.begin(),
                                                     tr.wheel_torque_min_nm.end());
    const double wheel_max = tr.wheel_torque_max_nm.empty()
                                 ? 0.0
                                 : *std::max_element(tr.wheel_torque_max_nm.begin(),
                                                     tr.wheel_torque_max_nm.end());
    table << format_csv_number(values[i]) << ',' << tr.steps << ','
          << format_csv_number(tr.distance_km) << ',' << format_csv_number(wheel_min) << ','
          << format_csv_number(wheel_max) << ',' << format_csv_number(tr.steer_torque_min_nm)
          << ',' << format_csv_number(tr.steer_torque_max_nm) << ','
          << format_csv_number(tr.motor_torque_max_nm) << ','
          << format_csv_number(tr.energy_total_j) << ','
          << format_csv_number(tr.efficiency_retention) << ',' << (run.all_pass() ? 1 : 0)
          << '\n';
    result.rows.push_back({values[i], run});
    if (run.aborted) result.exit_code = 3;
  }
  return result;
}

}  // namespace warmbox

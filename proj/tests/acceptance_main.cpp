// Acceptance harness: one line per release criterion, [PASS]/[FAIL] each,
// exit 0 only when every criterion holds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "warmbox/config_io.hpp"
#include "warmbox/run.hpp"
#include "warmbox/scenario.hpp"

namespace fs = std::filesystem;
using namespace warmbox;

namespace {

constexpr double deg = pi / 180.0;

int checked = 0;
int passed = 0;

void criterion(int index, const char* text,
               const std::function<std::pair<bool, std::string>()>& body) {
  ++checked;
  bool ok = false;
  std::string detail;
  try {
    auto result = body();
    ok = result.first;
    detail = std::move(result.second);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (ok) ++passed;
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", index, text,
              detail.c_str());
}

std::string num(double v) { return format_csv_number(v); }

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("warmbox_acceptance_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_artifacts(const fs::path& a, const fs::path& b) {
  for (const char* name : {"steps.csv", "thermal.csv", "summary.json"})
    if (slurp(a / name) != slurp(b / name)) return false;
  return true;
}

bool verdict_passes(const RunResult& run, const std::string& name) {
  for (const Verdict& v : run.verdicts)
    if (v.name == name) return v.pass;
  return false;
}

}  // namespace

int main() {
  const ScenarioConfig flight = preset_config(Preset::flight);

  criterion(1, "drive chain efficiency hits both calibrated endpoints", [&] {
    const DriveChain chain = make_drive_chain(flight.drive);
    const std::vector<double> straight{0.0, 0.0};
    const std::vector<double> worst{flight.drive.worst_bend_rad, -flight.drive.worst_bend_rad};
    const double neutral_eff = chain_efficiency(chain, straight);
    const double worst_eff = chain_efficiency(chain, worst);
    const bool ok =
        std::abs(neutral_eff - 0.99) <= 0.005 && std::abs(worst_eff - 0.43) <= 0.01;
    return std::make_pair(ok, "neutral " + num(neutral_eff) + ", worst " + num(worst_eff));
  });

  criterion(2, "capstan steering beats the comparison gear train on efficiency", [&] {
    const SteeringComparison cmp =
        compare_steering(flight.steering.capstan, flight.drive.comparison_gear_train);
    const bool ok = std::abs(cmp.capstan_efficiency - 0.91) <= 0.005 &&
                    cmp.capstan_preferred && cmp.gear_efficiency < cmp.capstan_efficiency;
    return std::make_pair(ok, "capstan " + num(cmp.capstan_efficiency) + " vs gear " +
                                  num(cmp.gear_efficiency));
  });

  criterion(3, "torque envelopes hold across the calibration sweep", [&] {
    const TraverseSetup setup = make_traverse_setup(flight);
    const CalibrationSection& cal = flight.calibration;
    const double big = std::numeric_limits<double>::infinity();
    double wheel_lo = big, wheel_hi = -big, steer_lo = big, steer_hi = -big;
    for (int i = 0; i <= 40; ++i) {
      const double slope =
          cal.slope_min_rad + (cal.slope_max_rad - cal.slope_min_rad) * i / 40.0;
      for (int j = 0; j <= 40; ++j) {
        const double c_rr = cal.rolling_resistance_min +
                            (cal.rolling_resistance_max - cal.rolling_resistance_min) * j / 40.0;
        const auto loads = wheel_loads(setup.layout, setup.total_mass_kg,
                                       flight.terrain.gravity_mps2, slope, 0.0);
        const auto drives = drive_torques(loads, slope, c_rr, setup.layout, setup.chain,
                                          setup.articulation_rad, 1.0);
        const auto steers = steering_torques(loads, setup.steering_load, setup.capstan);
        for (const auto& d : drives) {
          wheel_lo = std::min(wheel_lo, d.wheel_torque_nm);
          wheel_hi = std::max(wheel_hi, d.wheel_torque_nm);
        }
        for (const auto& s : steers) {
          steer_lo = std::min(steer_lo, s.steer_torque_nm);
          steer_hi = std::max(steer_hi, s.steer_torque_nm);
        }
      }
    }
    const DesignEnvelopes& env = flight.envelopes;
    const bool ok = wheel_lo >= env.wheel_torque_min_nm && wheel_hi <= env.wheel_torque_max_nm &&
                    steer_lo >= env.steering_torque_min_nm &&
                    steer_hi <= env.steering_torque_max_nm;
    return std::make_pair(ok, "wheel [" + num(wheel_lo) + ", " + num(wheel_hi) +
                                  "], steering [" + num(steer_lo) + ", " + num(steer_hi) + "]");
  });

  criterion(4, "the 50 km nominal traverse passes and retains efficiency", [&] {
    const fs::path dir = scratch("nominal");
    const RunResult run = run_scenario(preset_config(Preset::paper_nominal), dir.string());
    const double retention = run.traverse.efficiency_retention;
    const bool ok = run.exit_code == 0 && retention >= 0.95 &&
                    std::abs(retention - 0.970) <= 0.001 &&
                    verdict_passes(run, "wheel_torque") && verdict_passes(run, "steering_torque");
    return std::make_pair(ok, "exit " + std::to_string(run.exit_code) + ", retention " +
                                  num(retention) + " over " + num(run.traverse.distance_km) +
                                  " km");
  });

  criterion(5, "opposite equal bends keep the dual-joint speed ratio at one", [] {
    DualCardanChain dual;
    double worst_dev = 0.0;
    for (int b = 1; b <= 20; ++b) {
      const double bend = 74.0 * deg * b / 20.0;
      for (int k = 0; k < 360; ++k) {
        const double theta = two_pi * k / 360.0;
        worst_dev = std::max(worst_dev, std::abs(dual.speed_ratio(theta, bend, -bend) - 1.0));
      }
    }
    return std::make_pair(worst_dev <= 1e-9, "max |ratio - 1| = " + num(worst_dev));
  });

  criterion(6, "transfer derivatives agree with central finite differences", [] {
    const double h = 1e-6;
    double worst_dev = 0.0;
    for (double bend : {5.0 * deg, 25.0 * deg, 45.0 * deg, 65.0 * deg}) {
      for (double phase : {0.0, 1.0}) {
        const CardanJoint joint{bend, phase};
        for (int k = 0; k < 360; ++k) {
          const double theta = two_pi * k / 360.0;
          const double fd =
              (joint.output_angle(theta + h) - joint.output_angle(theta - h)) / (2.0 * h);
          worst_dev = std::max(worst_dev, std::abs(fd - joint.speed_ratio(theta)));
        }
      }
    }
    DualCardanChain dual;
    dual.joint_a = {0.5, 0.2};
    dual.joint_b = {0.3, 0.0};
    for (int k = 0; k < 360; ++k) {
      const double theta = two_pi * k / 360.0;
      const double fd = (dual.output_angle(theta + h) - dual.output_angle(theta - h)) / (2.0 * h);
      worst_dev = std::max(worst_dev, std::abs(fd - dual.speed_ratio(theta)));
    }
    return std::make_pair(worst_dev <= 1e-5, "max |fd - ratio| = " + num(worst_dev));
  });

  criterion(7, "wheel lines meet the turn centre and the twist reconstructs", [&] {
    const RoverLayout& layout = flight.rover.layout;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> vel(-0.3, 0.3);
    std::uniform_real_distribution<double> spin(-0.5, 0.5);
    double worst_line = 0.0, worst_twist = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const BodyTwist twist{vel(rng), vel(rng), spin(rng)};
      const auto setpoints = allocate(layout, twist);
      const Icr icr = icr_of(twist);
      if (!icr.at_infinity) {
        for (std::size_t i = 0; i < setpoints.size(); ++i) {
          if (setpoints[i].at_icr) continue;
          const Vec2 heading{std::cos(setpoints[i].steer_angle_rad),
                             std::sin(setpoints[i].steer_angle_rad)};
          worst_line =
              std::max(worst_line, std::abs(dot(heading, icr.position_m - layout.legs_m[i])));
        }
      }
      const BodyTwist back = reconstruct_twist(layout, setpoints);
      worst_twist = std::max({worst_twist, std::abs(back.vx_mps - twist.vx_mps),
                              std::abs(back.vy_mps - twist.vy_mps),
                              std::abs(back.omega_radps - twist.omega_radps)});
    }
    const bool ok = worst_line <= 1e-6 && worst_twist <= 1e-9;
    return std::make_pair(ok, "line offset " + num(worst_line) + " m, twist error " +
                                  num(worst_twist));
  });

  criterion(8, "suspension height inversion round-trips across the duty range", [&] {
    const WishboneGeometry& geo = flight.suspension.geometry;
    const double z0 = hub_pose(geo, geo.neutral_angle_rad).position_m.z;
    double worst_alpha = 0.0, worst_orient = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double alpha = -5.0 * deg + (35.0 * deg) * k / 100.0;
      const HubPose pose = hub_pose(geo, alpha);
      worst_orient = std::max(worst_orient, std::abs(pose.orientation_error_rad));
      const double back = alpha_for_height(geo, pose.position_m.z - z0);
      worst_alpha = std::max(worst_alpha, std::abs(back - alpha));
    }
    const bool ok = worst_alpha <= 1e-8 && worst_orient < 1e-9;
    return std::make_pair(ok, "angle error " + num(worst_alpha) + ", upright tilt " +
                                  num(worst_orient));
  });

  criterion(9, "heater sizing holds and a lunation stays inside the band", [&] {
    ThermalNode bench;
    bench.heat_capacity_j_per_k = 9000.0;
    bench.mli_effective_emissivity = 0.03;
    bench.radiating_area_m2 = 0.5;
    bench.heater_max_power_w = 20.0;
    bench.internal_dissipation_w = 0.0;
    const double hold = steady_heater_power(bench, 293.0, 93.0);
    const ThermalSummary lunation = simulate_thermal(
        flight.thermal.node, flight.thermal.controller, flight.thermal.environment,
        flight.thermal.initial_temp_k, flight.thermal.duration_s, flight.thermal.dt_s);
    const bool ok = std::abs(hold - 6.205) <= 1e-3 && lunation.within_band;
    return std::make_pair(ok, "hold power " + num(hold) + " W, box [" +
                                  num(lunation.min_temp_k) + ", " + num(lunation.max_temp_k) +
                                  "] K in [" + num(lunation.band_low_k) + ", " +
                                  num(lunation.band_high_k) + "]");
  });

  criterion(10, "requirement gates accept flight and name each violation", [&] {
    for (const GateReport& gate : evaluate_gates(flight))
      if (!gate.pass) return std::make_pair(false, "flight gate failed: " + gate.name);

    ScenarioConfig fat_wheels = flight;
    fat_wheels.rover.layout.wheel_radius_m = 0.4;
    std::string fat_gate;
    try {
      require_gates(fat_wheels);
    } catch (const ConfigError& e) {
      fat_gate = e.gate_name;
    }

    ScenarioConfig narrow_steer = flight;
    narrow_steer.steering.capstan.limits = {-1.0, 1.0};
    std::string steer_gate;
    try {
      require_gates(narrow_steer);
    } catch (const ConfigError& e) {
      steer_gate = e.gate_name;
    }

    std::string file_gate;
    try {
      load_scenario(std::string(WARMBOX_SOURCE_DIR) + "/tests/data/bad_wheel_radius.json");
    } catch (const ConfigError& e) {
      file_gate = e.gate_name;
    }

    const bool ok = fat_gate == "wheel_radius_max" && steer_gate == "steer_range" &&
                    file_gate == "wheel_radius_max";
    return std::make_pair(ok, "gates named: " + fat_gate + ", " + steer_gate + ", " + file_gate);
  });

  criterion(11, "repeat runs and concurrent sweeps are byte-identical", [&] {
    ScenarioConfig small = flight;
    small.route.points_m = {{5.0, 0.0}, {25.0, 0.0}};
    small.thermal.duration_s = 6000.0;

    const fs::path serial_a = scratch("serial_a");
    const fs::path serial_b = scratch("serial_b");
    run_scenario(small, serial_a.string());
    run_scenario(small, serial_b.string());

    const fs::path sweep_dir = scratch("sweep");
    const SweepResult sweep =
        run_sweep(small, "terrain.seed", {42.0, 42.0}, sweep_dir.string(), 2);

    const bool ok = same_artifacts(serial_a, serial_b) &&
                    same_artifacts(serial_a, sweep_dir / "value_0") &&
                    same_artifacts(sweep_dir / "value_0", sweep_dir / "value_1") &&
                    sweep.exit_code == 0;
    return std::make_pair(ok, ok ? "three runs matched byte for byte" : "artifact mismatch");
  });

  std::printf("%d/%d criteria passed\n", passed, checked);
  return passed == checked ? 0 : 1;
}

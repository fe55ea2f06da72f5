#pragma once

// Quasi-static traverse simulation: wheel load distribution, drive and
// steering torque demands, first-order wear derating, and envelope verdicts
// aggregated over a route.
//
// Conventions:
//   - pitch is positive nose-up (load transfers to -x legs), roll positive
//     loading the +y legs.
//   - Torque envelopes apply at the wheel/steering output side; motor-side
//     torques divide by gear ratio, chain efficiency, and wear derating.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "warmbox/errors.hpp"
#include "warmbox/locomotion.hpp"
#include "warmbox/steering.hpp"
#include "warmbox/terrain.hpp"
#include "warmbox/transmission.hpp"

namespace warmbox {

// Fixed design bounds the fleet is certified against. Loaded from config;
// never rescaled or silently altered.
struct DesignEnvelopes {
  double wheel_torque_min_nm = 30.01;
  double wheel_torque_max_nm = 86.11;
  double steering_torque_min_nm = 26.01;
  double steering_torque_max_nm = 32.09;
  double chain_efficiency_min = 0.43;
  double chain_efficiency_max = 0.99;
  double steering_efficiency = 0.91;
  double architecture_mass_kg = 10.25;  // reporting only
  double max_reach_m = 0.738;
  double traverse_requirement_km = 50.0;
  double efficiency_retention_min = 0.95;

  void validate() const;
};

// Normal loads per leg from planar static balance (one force and two moment
// equations), distributed minimum-norm across the legs. Throws TipOverError
// if any load comes out negative.
std::vector<double> wheel_loads(const RoverLayout& layout, double total_mass_kg,
                                double gravity_mps2, double pitch_rad, double roll_rad);

struct WheelDrive {
  double wheel_torque_nm = 0.0;
  double motor_torque_nm = 0.0;
};

// Tractive demand per wheel: rolling resistance plus a grade share split by
// load fraction (grade force = sum(loads) * tan(slope), exact at zero roll).
// Motor torque = wheel torque / (gear ratio * chain efficiency * derating).
// articulation_rad carries one bend list per wheel, chain joint order.
std::vector<WheelDrive> drive_torques(std::span<const double> loads_n, double slope_rad,
                                      double rolling_resistance, const RoverLayout& layout,
                                      const DriveChain& chain,
                                      const std::vector<std::vector<double>>& articulation_rad,
                                      double derating);

struct SteeringLoadModel {
  double scrub_coeff = 0.0;      // >= 0
  double contact_offset_m = 0.0; // >= 0

  void validate() const;
};

struct WheelSteering {
  double steer_torque_nm = 0.0;
  double motor_torque_nm = 0.0;
};

// Static scrub torque per wheel: scrub_coeff * load * contact_offset, and the
// motor-side demand through the capstan drum ratio at nominal efficiency.
std::vector<WheelSteering> steering_torques(std::span<const double> loads_n,
                                            const SteeringLoadModel& model,
                                            const CapstanDrive& drive);

struct WearCoefficients {
  double per_km = 6.0e-4;          // derating loss per traversed km
  double per_steer_cycle = 1.0e-7; // derating loss per full steering cycle

  void validate() const;
};

struct WearState {
  double odometer_km = 0.0;
  double steer_cycles = 0.0;           // accumulated full cycles (fractional)
  double cardan_bend_exposure_rad = 0.0;  // seal exposure counter, |bend| x shaft angle
  double derating = 1.0;               // (0, 1], multiplies chain efficiency

  void validate() const;
};

// First-order multiplicative wear:
// derating <- derating * (1 - per_km * distance - per_steer_cycle * cycles),
// floored at zero. Counters accumulate.
WearState wear_update(WearState state, const WearCoefficients& coeffs, double distance_km,
                      double steer_cycles, double bend_activity_rad);

struct Route {
  std::vector<Vec2> points_m;  // polyline, >= 2 points, nonzero length
  double speed_mps = 0.0;      // > 0

  void validate() const;
  double length_m() const;
  Vec2 position_at(double s_m) const;
  Vec2 heading_at(double s_m) const;  // unit tangent of the containing segment
};

Route line_route(Vec2 start_m, double heading_rad, double length_m, double speed_mps);

struct TraverseSetup {
  RoverLayout layout;
  double total_mass_kg = 0.0;
  DriveChain chain;
  std::vector<std::vector<double>> articulation_rad;  // [wheel][joint], fixed per run
  CapstanDrive capstan;
  SteeringLoadModel steering_load;
  WearCoefficients wear;
  WearState initial_wear;
  DesignEnvelopes envelopes;
  double step_m = 0.1;  // > 0

  void validate() const;
};

struct TraverseStepRecord {
  std::size_t step_index = 0;
  double s_m = 0.0;
  double slope_rad = 0.0;
  std::vector<double> load_n;
  std::vector<double> wheel_torque_nm;
  std::vector<double> motor_torque_nm;
  std::vector<double> steer_angle_rad;
  double chain_efficiency = 1.0;  // articulation terms only; derating separate
  double derating = 1.0;
  double energy_j_cumulative = 0.0;
};

struct Verdict {
  std::string name;
  bool pass = true;
  bool vacuous = false;  // no samples; bounds trivially satisfied
  double observed_lo = 0.0;
  double observed_hi = 0.0;
  double bound_lo = 0.0;
  double bound_hi = 0.0;
};

struct TraverseReport {
  std::size_t steps = 0;
  double distance_km = 0.0;
  std::vector<double> wheel_torque_min_nm;  // per wheel
  std::vector<double> wheel_torque_max_nm;
  double steer_torque_min_nm = 0.0;
  double steer_torque_max_nm = 0.0;
  double motor_torque_max_nm = 0.0;
  double energy_drive_j = 0.0;
  double energy_steering_j = 0.0;
  double energy_total_j = 0.0;
  double initial_efficiency = 1.0;  // chain efficiency x derating at the first step
  double final_efficiency = 1.0;
  double efficiency_retention = 1.0;  // final / initial
  double speed_ripple = 0.0;          // diagnostic, at the configured articulation
  WearState wear;
  std::vector<Verdict> verdicts;

  bool all_verdicts_pass() const;
  const Verdict* find_verdict(const std::string& name) const;
};

using TraverseStepSink = std::function<void(const TraverseStepRecord&)>;

// Marches the route at fixed arc-length steps; per step it samples terrain
// pitch under the body, solves wheel loads, evaluates drive/steering demands,
// integrates energy, and applies wear. Aborts (SimulationAbort) on tip-over
// or chain domain errors, carrying the offending step index.
TraverseReport run_traverse(const TraverseSetup& setup, const TerrainProfile& terrain,
                            const Route& route, const TraverseStepSink& sink = {});

}  // namespace warmbox

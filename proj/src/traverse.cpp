#include "warmbox/traverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace warmbox {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Solves the symmetric 3x3 system M*x = b by Cramer's rule.
std::array<double, 3> solve_sym3(const std::array<double, 6>& m /* 11,12,13,22,23,33 */,
                                 const std::array<double, 3>& b, const char* what) {
  const double a11 = m[0], a12 = m[1], a13 = m[2], a22 = m[3], a23 = m[4], a33 = m[5];
  const auto det3 = [](double x11, double x12, double x13, double x21, double x22, double x23,
                       double x31, double x32, double x33) {
    return x11 * (x22 * x33 - x23 * x32) - x12 * (x21 * x33 - x23 * x31) +
           x13 * (x21 * x32 - x22 * x31);
  };
  const double d = det3(a11, a12, a13, a12, a22, a23, a13, a23, a33);
  if (std::abs(d) <= 1e-12) throw ValidationError(std::string(what) + ": singular leg layout");
  const double d1 = det3(b[0], a12, a13, b[1], a22, a23, b[2], a23, a33);
  const double d2 = det3(a11, b[0], a13, a12, b[1], a23, a13, b[2], a33);
  const double d3 = det3(a11, a12, b[0], a12, a22, b[1], a13, a23, b[2]);
  return {d1 / d, d2 / d, d3 / d};
}

}  // namespace

void DesignEnvelopes::validate() const {
  require_finite(wheel_torque_min_nm, "wheel_torque_min_nm");
  require_finite(steering_torque_min_nm, "steering_torque_min_nm");
  if (!(wheel_torque_max_nm > wheel_torque_min_nm))
    throw ValidationError("wheel torque envelope must be ordered");
  if (!(steering_torque_max_nm > steering_torque_min_nm))
    throw ValidationError("steering torque envelope must be ordered");
  require_in_unit(chain_efficiency_min, "chain_efficiency_min");
  require_in_unit(chain_efficiency_max, "chain_efficiency_max");
  if (!(chain_efficiency_max > chain_efficiency_min))
    throw ValidationError("chain efficiency envelope must be ordered");
  require_in_unit(steering_efficiency, "steering_efficiency");
  require_positive(architecture_mass_kg, "architecture_mass_kg");
  require_positive(max_reach_m, "max_reach_m");
  require_non_negative(traverse_requirement_km, "traverse_requirement_km");
  require_in_unit(efficiency_retention_min, "efficiency_retention_min");
}

std::vector<double> wheel_loads(const RoverLayout& layout, double total_mass_kg,
                                double gravity_mps2, double pitch_rad, double roll_rad) {
  layout.validate();
  require_positive(total_mass_kg, "total_mass_kg");
  require_positive(gravity_mps2, "gravity_mps2");
  require_finite(pitch_rad, "pitch_rad");
  require_finite(roll_rad, "roll_rad");
  if (!(std::abs(pitch_rad) < pi / 3.0) || !(std::abs(roll_rad) < pi / 3.0))
    throw ValidationError("wheel_loads requires |pitch| and |roll| < pi/3");

  const auto& legs = layout.legs_m;
  const double n = static_cast<double>(legs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Vec2& leg : legs) {
    sx += leg.x;
    sy += leg.y;
    sxx += leg.x * leg.x;
    sxy += leg.x * leg.y;
    syy += leg.y * leg.y;
  }

  // Static balance in the body frame (x forward, y left, z contact normal):
  //   sum N_i       = m*g*cos(pitch)*cos(roll)
  //   sum N_i * x_i = m*g*(-h*sin(pitch) + x_c*cos(pitch)*cos(roll))
  //   sum N_i * y_i = m*g*( h*cos(pitch)*sin(roll) + y_c*cos(pitch)*cos(roll))
  // Minimum-norm distribution: N = A^T * lambda with (A*A^T) lambda = b.
  const double w = total_mass_kg * gravity_mps2;
  const double cz = std::cos(pitch_rad) * std::cos(roll_rad);
  const std::array<double, 3> b = {
      w * cz,
      w * (-layout.com_height_m * std::sin(pitch_rad) + layout.com_offset_m.x * cz),
      w * (layout.com_height_m * std::cos(pitch_rad) * std::sin(roll_rad) +
           layout.com_offset_m.y * cz)};
  const auto lambda = solve_sym3({n, sx, sy, sxx, sxy, syy}, b, "wheel_loads");

  std::vector<double> loads(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    loads[i] = lambda[0] + lambda[1] * legs[i].x + lambda[2] * legs[i].y;
    if (loads[i] < 0.0)
      throw TipOverError("negative wheel load: attitude tips the body off leg " +
                             std::to_string(i),
                         i);
  }
  return loads;
}

std::vector<WheelDrive> drive_torques(std::span<const double> loads_n, double slope_rad,
                                      double rolling_resistance, const RoverLayout& layout,
                                      const DriveChain& chain,
                                      const std::vector<std::vector<double>>& articulation_rad,
                                      double derating) {
  layout.validate();
  chain.validate();
  require_finite(slope_rad, "slope_rad");
  if (!(std::abs(slope_rad) < pi / 2.0))
    throw ValidationError("slope_rad must satisfy |slope| < pi/2");
  require_non_negative(rolling_resistance, "rolling_resistance");
  require_in_unit(derating, "derating");
  if (loads_n.size() != layout.legs_m.size())
    throw ValidationError("drive_torques: one load per leg required");
  if (articulation_rad.size() != layout.legs_m.size())
    throw ValidationError("drive_torques: one articulation list per leg required");

  const double gear_ratio = chain.total_gear_ratio();
  const double resistance = rolling_resistance + std::tan(slope_rad);
  std::vector<WheelDrive> out(loads_n.size());
  for (std::size_t i = 0; i < loads_n.size(); ++i) {
    require_finite(loads_n[i], "load_n");
    const double eff = chain_efficiency(chain, articulation_rad[i]);
    out[i].wheel_torque_nm = loads_n[i] * resistance * layout.wheel_radius_m;
    out[i].motor_torque_nm = out[i].wheel_torque_nm / (gear_ratio * eff * derating);
  }
  return out;
}

void SteeringLoadModel::validate() const {
  require_non_negative(scrub_coeff, "scrub_coeff");
  require_non_negative(contact_offset_m, "contact_offset_m");
}

std::vector<WheelSteering> steering_torques(std::span<const double> loads_n,
                                            const SteeringLoadModel& model,
                                            const CapstanDrive& drive) {
  model.validate();
  drive.validate();
  std::vector<WheelSteering> out(loads_n.size());
  for (std::size_t i = 0; i < loads_n.size(); ++i) {
    require_finite(loads_n[i], "load_n");
    out[i].steer_torque_nm = model.scrub_coeff * loads_n[i] * model.contact_offset_m;
    out[i].motor_torque_nm =
        out[i].steer_torque_nm / (drive.drum_ratio() * drive.nominal_efficiency);
  }
  return out;
}

void WearCoefficients::validate() const {
  require_non_negative(per_km, "per_km");
  require_non_negative(per_steer_cycle, "per_steer_cycle");
}

void WearState::validate() const {
  require_non_negative(odometer_km, "odometer_km");
  require_non_negative(steer_cycles, "steer_cycles");
  require_non_negative(cardan_bend_exposure_rad, "cardan_bend_exposure_rad");
  require_in_unit(derating, "derating");
}

WearState wear_update(WearState state, const WearCoefficients& coeffs, double distance_km,
                      double steer_cycles, double bend_activity_rad) {
  state.validate();
  coeffs.validate();
  require_non_negative(distance_km, "distance_km");
  require_non_negative(steer_cycles, "steer_cycles");
  require_non_negative(bend_activity_rad, "bend_activity_rad");

  const double loss = coeffs.per_km * distance_km + coeffs.per_steer_cycle * steer_cycles;
  state.derating *= std::max(0.0, 1.0 - loss);
  state.odometer_km += distance_km;
  state.steer_cycles += steer_cycles;
  state.cardan_bend_exposure_rad += bend_activity_rad;
  return state;
}

void Route::validate() const {
  if (points_m.size() < 2) throw ValidationError("route needs at least two points");
  for (const Vec2& p : points_m) {
    require_finite(p.x, "route point x");
    require_finite(p.y, "route point y");
  }
  require_positive(speed_mps, "speed_mps");
}

double Route::length_m() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points_m.size(); ++i)
    total += norm(points_m[i + 1] - points_m[i]);
  return total;
}

Vec2 Route::position_at(double s_m) const {
  require_finite(s_m, "s_m");
  double remaining = std::clamp(s_m, 0.0, length_m());
  for (std::size_t i = 0; i + 1 < points_m.size(); ++i) {
    const Vec2 seg = points_m[i + 1] - points_m[i];
    const double len = norm(seg);
    if (len <= 0.0) continue;
    if (remaining <= len) return points_m[i] + (remaining / len) * seg;
    remaining -= len;
  }
  return points_m.back();
}

Vec2 Route::heading_at(double s_m) const {
  require_finite(s_m, "s_m");
  double remaining = std::clamp(s_m, 0.0, length_m());
  const Vec2* last_dir_from = nullptr;
  const Vec2* last_dir_to = nullptr;
  for (std::size_t i = 0; i + 1 < points_m.size(); ++i) {
    const Vec2 seg = points_m[i + 1] - points_m[i];
    const double len = norm(seg);
    if (len <= 0.0) continue;
    last_dir_from = &points_m[i];
    last_dir_to = &points_m[i + 1];
    if (remaining <= len) break;
    remaining -= len;
  }
  if (last_dir_from == nullptr)
    throw ValidationError("heading undefined on a zero-length route");
  const Vec2 seg = *last_dir_to - *last_dir_from;
  return (1.0 / norm(seg)) * seg;
}

Route line_route(Vec2 start_m, double heading_rad, double length_m, double speed_mps) {
  require_finite(heading_rad, "heading_rad");
  require_non_negative(length_m, "length_m");
  Route route;
  route.points_m = {start_m,
                    start_m + length_m * Vec2{std::cos(heading_rad), std::sin(heading_rad)}};
  route.speed_mps = speed_mps;
  route.validate();
  return route;
}

void TraverseSetup::validate() const {
  layout.validate();
  require_positive(total_mass_kg, "total_mass_kg");
  chain.validate();
  capstan.validate();
  steering_load.validate();
  wear.validate();
  initial_wear.validate();
  envelopes.validate();
  require_positive(step_m, "step_m");
  if (articulation_rad.size() != layout.legs_m.size())
    throw ValidationError("one articulation list per leg required");
  for (const auto& bends : articulation_rad)
    chain_efficiency(chain, bends);  // validates joint count and positive efficiency
}

bool TraverseReport::all_verdicts_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass; });
}

const Verdict* TraverseReport::find_verdict(const std::string& name) const {
  const auto it = std::find_if(verdicts.begin(), verdicts.end(),
                               [&](const Verdict& v) { return v.name == name; });
  return it == verdicts.end() ? nullptr : &*it;
}

namespace {

Verdict range_verdict(std::string name, bool vacuous, double observed_lo, double observed_hi,
                      double bound_lo, double bound_hi) {
  Verdict v;
  v.name = std::move(name);
  v.vacuous = vacuous;
  v.observed_lo = vacuous ? 0.0 : observed_lo;
  v.observed_hi = vacuous ? 0.0 : observed_hi;
  v.bound_lo = bound_lo;
  v.bound_hi = bound_hi;
  v.pass = vacuous || (observed_lo >= bound_lo && observed_hi <= bound_hi);
  return v;
}

}  // namespace

TraverseReport run_traverse(const TraverseSetup& setup, const TerrainProfile& terrain,
                            const Route& route, const TraverseStepSink& sink) {
  setup.validate();
  terrain.validate();
  route.validate();

  const std::size_t n_wheels = setup.layout.legs_m.size();
  double mean_eff = 0.0;
  for (const auto& bends : setup.articulation_rad)
    mean_eff += chain_efficiency(setup.chain, bends);
  mean_eff /= static_cast<double>(n_wheels);
  const double gear_ratio = setup.chain.total_gear_ratio();
  const double drum_ratio = setup.capstan.drum_ratio();

  TraverseReport report;
  report.wheel_torque_min_nm.assign(n_wheels, inf);
  report.wheel_torque_max_nm.assign(n_wheels, -inf);
  report.steer_torque_min_nm = inf;
  report.steer_torque_max_nm = -inf;
  report.motor_torque_max_nm = 0.0;
  report.wear = setup.initial_wear;
  report.initial_efficiency = mean_eff * setup.initial_wear.derating;
  report.speed_ripple = chain_speed_ripple(setup.chain, setup.articulation_rad.front());

  const double total_len = route.length_m();
  const std::size_t n_steps =
      total_len > 0.0 ? static_cast<std::size_t>(std::ceil(total_len / setup.step_m)) : 0;

  double s_prev = 0.0;
  double heading_prev = 0.0;
  std::vector<double> steer_prev(n_wheels, 0.0);
  if (n_steps > 0) {
    const Vec2 d0 = route.heading_at(0.0);
    heading_prev = std::atan2(d0.y, d0.x);
    const auto start = allocate(setup.layout, BodyTwist{route.speed_mps, 0.0, 0.0});
    for (std::size_t i = 0; i < n_wheels; ++i) steer_prev[i] = start[i].steer_angle_rad;
  }

  double energy_drive = 0.0;
  double energy_steering = 0.0;

  for (std::size_t k = 0; k < n_steps; ++k) {
    const double s_end = std::min(static_cast<double>(k + 1) * setup.step_m, total_len);
    const double ds = s_end - s_prev;
    if (ds <= 0.0) break;
    try {
      const Vec2 pos = route.position_at(s_end);
      const Vec2 dir = route.heading_at(s_end);
      const Vec2 lateral{-dir.y, dir.x};
      const double pitch = std::atan(terrain.slope_along(pos, dir));
      const double roll = std::atan(terrain.slope_along(pos, lateral));
      const double c_rr = terrain.rolling_resistance_at(pos);

      const std::vector<double> loads =
          wheel_loads(setup.layout, setup.total_mass_kg, terrain.gravity_mps2, pitch, roll);
      const auto drives = drive_torques(loads, pitch, c_rr, setup.layout, setup.chain,
                                        setup.articulation_rad, report.wear.derating);
      const auto steers = steering_torques(loads, setup.steering_load, setup.capstan);

      // Twist along the path: forward speed plus the yaw rate the polyline
      // implies across this step.
      const double heading = std::atan2(dir.y, dir.x);
      const double dt = ds / route.speed_mps;
      const double omega = wrap_pi(heading - heading_prev) / dt;
      auto setpoints = allocate(setup.layout, BodyTwist{route.speed_mps, 0.0, omega});
      for (auto& sp : setpoints) {
        if (sp.steer_angle_rad > setup.capstan.limits.max_rad) {
          sp.steer_angle_rad = setup.capstan.limits.max_rad;
          sp.saturated = true;
        } else if (sp.steer_angle_rad < setup.capstan.limits.min_rad) {
          sp.steer_angle_rad = setup.capstan.limits.min_rad;
          sp.saturated = true;
        }
      }

      double steer_cycles = 0.0;
      double bend_activity = 0.0;
      for (std::size_t i = 0; i < n_wheels; ++i) {
        const double wheel_speed = std::abs(setpoints[i].wheel_speed_radps);
        energy_drive += drives[i].motor_torque_nm * wheel_speed * gear_ratio * dt;
        const double steer_travel = std::abs(setpoints[i].steer_angle_rad - steer_prev[i]);
        energy_steering += steers[i].motor_torque_nm * steer_travel * drum_ratio;
        steer_cycles += steer_travel / two_pi;
        double bend_sum = 0.0;
        for (double bend : setup.articulation_rad[i]) bend_sum += std::abs(bend);
        bend_activity += bend_sum * wheel_speed * dt;

        report.wheel_torque_min_nm[i] =
            std::min(report.wheel_torque_min_nm[i], drives[i].wheel_torque_nm);
        report.wheel_torque_max_nm[i] =
            std::max(report.wheel_torque_max_nm[i], drives[i].wheel_torque_nm);
        report.steer_torque_min_nm = std::min(report.steer_torque_min_nm, steers[i].steer_torque_nm);
        report.steer_torque_max_nm = std::max(report.steer_torque_max_nm, steers[i].steer_torque_nm);
        report.motor_torque_max_nm = std::max(report.motor_torque_max_nm, drives[i].motor_torque_nm);
      }

      if (sink) {
        TraverseStepRecord rec;
        rec.step_index = k;
        rec.s_m = s_end;
        rec.slope_rad = pitch;
        rec.load_n = loads;
        rec.wheel_torque_nm.resize(n_wheels);
        rec.motor_torque_nm.resize(n_wheels);
        rec.steer_angle_rad.resize(n_wheels);
        for (std::size_t i = 0; i < n_wheels; ++i) {
          rec.wheel_torque_nm[i] = drives[i].wheel_torque_nm;
          rec.motor_torque_nm[i] = drives[i].motor_torque_nm;
          rec.steer_angle_rad[i] = setpoints[i].steer_angle_rad;
        }
        rec.chain_efficiency = mean_eff;
        rec.derating = report.wear.derating;
        rec.energy_j_cumulative = energy_drive + energy_steering;
        sink(rec);
      }

      report.wear =
          wear_update(report.wear, setup.wear, ds / 1000.0, steer_cycles, bend_activity);
      for (std::size_t i = 0; i < n_wheels; ++i) steer_prev[i] = setpoints[i].steer_angle_rad;
      heading_prev = heading;
      s_prev = s_end;
      ++report.steps;
    } catch (const TipOverError& e) {
      throw SimulationAbort(e.what(), k, "tip_over");
    } catch (const ValidationError& e) {
      throw SimulationAbort(e.what(), k, "step_error");
    }
  }

  report.distance_km = s_prev / 1000.0;
  report.energy_drive_j = energy_drive;
  report.energy_steering_j = energy_steering;
  report.energy_total_j = energy_drive + energy_steering;
  report.final_efficiency = mean_eff * report.wear.derating;
  report.efficiency_retention = report.final_efficiency / report.initial_efficiency;

  const bool vacuous = report.steps == 0;
  if (vacuous) {
    std::fill(report.wheel_torque_min_nm.begin(), report.wheel_torque_min_nm.end(), 0.0);
    std::fill(report.wheel_torque_max_nm.begin(), report.wheel_torque_max_nm.end(), 0.0);
    report.steer_torque_min_nm = 0.0;
    report.steer_torque_max_nm = 0.0;
  }
  const double wheel_lo =
      vacuous ? 0.0
              : *std::min_element(report.wheel_torque_min_nm.begin(),
                                  report.wheel_torque_min_nm.end());
  const double wheel_hi =
      vacuous ? 0.0
              : *std::max_element(report.wheel_torque_max_nm.begin(),
                                  report.wheel_torque_max_nm.end());
  const DesignEnvelopes& env = setup.envelopes;
  report.verdicts.push_back(range_verdict("wheel_torque", vacuous, wheel_lo, wheel_hi,
                                          env.wheel_torque_min_nm, env.wheel_torque_max_nm));
  report.verdicts.push_back(range_verdict("steering_torque", vacuous, report.steer_torque_min_nm,
                                          report.steer_torque_max_nm, env.steering_torque_min_nm,
                                          env.steering_torque_max_nm));
  report.verdicts.push_back(range_verdict("chain_efficiency", vacuous, report.final_efficiency,
                                          report.initial_efficiency, env.chain_efficiency_min,
                                          env.chain_efficiency_max));
  report.verdicts.push_back(range_verdict(
      "steering_efficiency", false, setup.capstan.nominal_efficiency,
      setup.capstan.nominal_efficiency, env.steering_efficiency - 0.005,
      env.steering_efficiency + 0.005));
  report.verdicts.push_back(range_verdict("efficiency_retention", vacuous,
                                          report.efficiency_retention,
                                          report.efficiency_retention,
                                          env.efficiency_retention_min, 1.0));
  return report;
}

}  // namespace warmbox

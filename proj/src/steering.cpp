#include "warmbox/steering.hpp"

#include <cmath>
#include <limits>

namespace warmbox {

void SteerLimits::validate() const {
  require_finite(min_rad, "min_rad");
  require_finite(max_rad, "max_rad");
  if (!(min_rad < 0.0 && 0.0 < max_rad))
    throw ValidationError("steer limits must bracket zero (min < 0 < max)");
}

void CapstanDrive::validate() const {
  require_positive(input_drum_radius_m, "input_drum_radius_m");
  require_positive(output_drum_radius_m, "output_drum_radius_m");
  if (!(output_drum_radius_m >= input_drum_radius_m))
    throw ValidationError("output_drum_radius_m must be >= input_drum_radius_m");
  require_positive(wrap_angle_rad, "wrap_angle_rad");
  require_positive(friction_coeff, "friction_coeff");
  require_non_negative(pretension_n, "pretension_n");
  require_in_unit(nominal_efficiency, "nominal_efficiency");
  limits.validate();
}

double capstan_tension_ratio(double friction_coeff, double wrap_angle_rad) {
  require_positive(friction_coeff, "friction_coeff");
  require_positive(wrap_angle_rad, "wrap_angle_rad");
  return std::exp(friction_coeff * wrap_angle_rad);
}

SteerAngle steer_angle(const CapstanDrive& drive, double motor_angle_rad) {
  drive.validate();
  require_finite(motor_angle_rad, "motor_angle_rad");
  const double raw = motor_angle_rad / drive.drum_ratio();
  if (raw < drive.limits.min_rad) return {drive.limits.min_rad, true};
  if (raw > drive.limits.max_rad) return {drive.limits.max_rad, true};
  return {raw, false};
}

double slip_margin(const CapstanDrive& drive, double required_torque_nm) {
  drive.validate();
  require_non_negative(required_torque_nm, "required_torque_nm");
  if (required_torque_nm == 0.0) return std::numeric_limits<double>::infinity();
  const double transmissible =
      drive.pretension_n * drive.output_drum_radius_m *
      (capstan_tension_ratio(drive.friction_coeff, drive.wrap_angle_rad) - 1.0);
  return transmissible / required_torque_nm;
}

double steering_torque_chain(const CapstanDrive& drive, double motor_torque_nm) {
  drive.validate();
  require_finite(motor_torque_nm, "motor_torque_nm");
  return motor_torque_nm * drive.drum_ratio() * drive.nominal_efficiency;
}

double gear_steering_torque_chain(std::span<const GearStage> stages, double motor_torque_nm) {
  require_finite(motor_torque_nm, "motor_torque_nm");
  double out = motor_torque_nm;
  for (const auto& stage : stages) {
    stage.validate();
    out *= stage.ratio * stage.mesh_efficiency;
  }
  return out;
}

SteeringComparison compare_steering(const CapstanDrive& drive,
                                    std::span<const GearStage> gear_train) {
  drive.validate();
  SteeringComparison cmp;
  cmp.capstan_efficiency = drive.nominal_efficiency;
  cmp.capstan_ratio = drive.drum_ratio();
  cmp.gear_efficiency = 1.0;
  cmp.gear_ratio = 1.0;
  for (const auto& stage : gear_train) {
    stage.validate();
    cmp.gear_efficiency *= stage.mesh_efficiency;
    cmp.gear_ratio *= stage.ratio;
  }
  cmp.capstan_preferred = cmp.capstan_efficiency > cmp.gear_efficiency;
  return cmp;
}

}  // namespace warmbox

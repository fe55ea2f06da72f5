#pragma once

// Capstan cable steering: drum kinematics, Euler/Eytelwein tension amplification,
// slip margin against the commanded torque, and the torque chain compared with
// a conventional gear train.
//
// Conventions:
//   - drum_ratio = output_drum_radius / input_drum_radius (> 1 multiplies
//     torque and divides angle).
//   - Torques are magnitudes at the named shaft; efficiencies in (0, 1].

#include <span>

#include "warmbox/errors.hpp"
#include "warmbox/transmission.hpp"

namespace warmbox {

struct SteerLimits {
  double min_rad = -pi / 2.0;
  double max_rad = pi / 2.0;

  void validate() const;
};

struct CapstanDrive {
  double input_drum_radius_m = 0.0;   // > 0
  double output_drum_radius_m = 0.0;  // >= input_drum_radius_m
  double wrap_angle_rad = 0.0;        // > 0
  double friction_coeff = 0.0;        // > 0
  double pretension_n = 0.0;          // >= 0
  double nominal_efficiency = 1.0;    // (0, 1]
  SteerLimits limits;

  void validate() const;
  double drum_ratio() const { return output_drum_radius_m / input_drum_radius_m; }
};

// Tension amplification e^(mu * wrap) of a cable on a drum.
double capstan_tension_ratio(double friction_coeff, double wrap_angle_rad);

struct SteerAngle {
  double angle_rad = 0.0;
  bool saturated = false;  // clamped at a steer limit
};

// Wheel steer angle for a motor shaft angle under the drum ratio, clamped to
// the configured limits.
SteerAngle steer_angle(const CapstanDrive& drive, double motor_angle_rad);

// Largest cable-transmissible torque over the required torque.
// transmissible = pretension * output_radius * (e^(mu*wrap) - 1).
// Returns +infinity when required torque is zero; 0 when pretension is zero
// and torque is demanded.
double slip_margin(const CapstanDrive& drive, double required_torque_nm);

// Steering torque delivered at the wheel: motor torque * drum ratio * nominal
// efficiency.
double steering_torque_chain(const CapstanDrive& drive, double motor_torque_nm);

// Same composition through a conventional gear train (identical to
// chain_transfer restricted to gear stages).
double gear_steering_torque_chain(std::span<const GearStage> stages, double motor_torque_nm);

struct SteeringComparison {
  double capstan_efficiency = 0.0;
  double gear_efficiency = 0.0;
  double capstan_ratio = 0.0;
  double gear_ratio = 0.0;
  bool capstan_preferred = false;  // strictly higher composed efficiency
};

SteeringComparison compare_steering(const CapstanDrive& drive,
                                    std::span<const GearStage> gear_train);

}  // namespace warmbox

#pragma once

// Wheel steering/speed allocation for a planar body twist. All drive modes
// reduce to one twist (vx, vy, omega); each wheel's ground velocity follows
// the rigid-body field and the steer angle folds into +/-90 degrees with a
// speed sign flip so steering hardware never winds past a quarter turn.
//
// Conventions:
//   - Body frame: x forward, y left, z up; omega positive counterclockwise.
//   - wheel_speed is the signed angular rate about the wheel axle.

#include <span>
#include <vector>

#include "warmbox/errors.hpp"
#include "warmbox/numeric.hpp"

namespace warmbox {

struct RoverLayout {
  std::vector<Vec2> legs_m;    // >= 3 legs, pairwise distinct mounting points
  double wheel_radius_m = 0.0; // (0, 0.35]
  double wheel_width_m = 0.11;
  Vec2 com_offset_m;           // centre of mass, body frame
  double com_height_m = 0.0;   // above the contact plane, >= 0

  void validate() const;
};

struct BodyTwist {
  double vx_mps = 0.0;
  double vy_mps = 0.0;
  double omega_radps = 0.0;
};

struct WheelSetpoint {
  double steer_angle_rad = 0.0;   // |angle| <= pi/2
  double wheel_speed_radps = 0.0; // signed
  bool saturated = false;         // steer-limit clamp applied downstream
  bool at_icr = false;            // leg sits at the turn centre; zeroed
};

enum class DriveMode { ackermann, crab, point_turn };

BodyTwist ackermann_command(double speed_mps, double curvature_per_m);
BodyTwist crab_command(double speed_mps, double heading_rad);
BodyTwist point_turn_command(double omega_radps);

struct ModeParams {
  double speed_mps = 0.0;
  double curvature_per_m = 0.0;
  double heading_rad = 0.0;
  double omega_radps = 0.0;
};

BodyTwist mode_command(DriveMode mode, const ModeParams& params);

struct NormalizedSteer {
  double angle_rad = 0.0;
  double speed = 0.0;
};

// Folds a raw heading into [-pi/2, pi/2] modulo pi, flipping the speed sign
// once per fold. Idempotent; the +/-pi/2 boundary is preserved.
NormalizedSteer normalize_steer(double raw_angle_rad, double raw_speed);

// Per-wheel setpoints realizing the twist: ground velocity
// u = (vx - omega*y, vy + omega*x) at each leg, steer = atan2(uy, ux) folded,
// wheel_speed = |u| / wheel_radius with the fold's sign.
std::vector<WheelSetpoint> allocate(const RoverLayout& layout, const BodyTwist& twist);

struct Icr {
  Vec2 position_m;
  bool at_infinity = false;  // omega == 0 (pure translation)
};

// Instantaneous centre of rotation (-vy/omega, vx/omega).
Icr icr_of(const BodyTwist& twist);

// Least-squares twist from setpoints (residual is zero when none are
// saturated or degenerate).
BodyTwist reconstruct_twist(const RoverLayout& layout, std::span<const WheelSetpoint> setpoints);

}  // namespace warmbox

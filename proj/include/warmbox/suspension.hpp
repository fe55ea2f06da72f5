#pragma once

// Parallelogram double-wishbone suspension. Equal-length parallel arms keep
// the upright chassis-parallel at every arm angle, so the hub orientation
// error is identically zero and the hub translates on a circle of the arm
// radius.
//
// Conventions:
//   - alpha is the arm angle from horizontal, positive raising the hub
//     (z up, x outboard along the arm at alpha = 0).
//   - The upright offset is a fixed vector in the hub frame; because the
//     parallelogram keeps that frame chassis-parallel it adds verbatim.

#include "warmbox/errors.hpp"
#include "warmbox/numeric.hpp"

namespace warmbox {

struct WishboneGeometry {
  double arm_length_m = 0.0;                 // > 0
  double pivot_vertical_separation_m = 0.0;  // > 0, spacing of the two chassis pivots
  Vec3 chassis_anchor_m;                     // upper pivot on the warm-box wall
  Vec3 upright_offset_m;                     // hub pivot -> wheel connection
  double neutral_angle_rad = 0.0;
  double angle_min_rad = 0.0;                // range containing the neutral angle
  double angle_max_rad = 0.0;
  double spring_rate_nm_per_rad = 0.0;       // > 0
  double spring_free_angle_rad = 0.0;
  double actuator_gain_rad = 0.0;            // free-angle shift per unit command

  void validate() const;
};

struct HubPose {
  Vec3 position_m;
  double orientation_error_rad = 0.0;  // upright tilt vs chassis; 0 for an ideal parallelogram
};

// Forward kinematics at arm angle alpha (must lie in the configured range).
HubPose hub_pose(const WishboneGeometry& geo, double alpha_rad);

// Arm angle that places the hub delta_z above (below, if negative) its height
// at the neutral angle. Solved by safeguarded Newton/bisection on the
// monotone branch; throws UnreachableHeightError with the achievable interval
// when delta_z is outside it.
double alpha_for_height(const WishboneGeometry& geo, double delta_z_m);

struct SuspensionEquilibrium {
  double alpha_rad = 0.0;
  bool clamped = false;  // no interior root; nearest range end returned
};

// Static balance spring_rate * (alpha - free - gain*command) = load * L * cos(alpha).
SuspensionEquilibrium equilibrium_alpha(const WishboneGeometry& geo, double wheel_load_n,
                                        double command);

// Distance from the chassis anchor to the wheel connection at alpha.
double reach(const WishboneGeometry& geo, double alpha_rad);

// Largest reach over the configured angle range.
double max_reach(const WishboneGeometry& geo);

}  // namespace warmbox

#include "warmbox/locomotion.hpp"

#include <cmath>

namespace warmbox {

namespace {

// Ground speeds below this are treated as a leg sitting on the turn centre.
constexpr double icr_speed_floor_mps = 1e-12;

}  // namespace

void RoverLayout::validate() const {
  if (legs_m.size() < 3) throw ValidationError("legs_m must contain at least 3 legs");
  for (std::size_t i = 0; i < legs_m.size(); ++i) {
    require_finite(legs_m[i].x, "legs_m.x");
    require_finite(legs_m[i].y, "legs_m.y");
    for (std::size_t j = i + 1; j < legs_m.size(); ++j) {
      if (legs_m[i].x == legs_m[j].x && legs_m[i].y == legs_m[j].y)
        throw ValidationError("legs_m must be pairwise distinct");
    }
  }
  require_positive(wheel_radius_m, "wheel_radius_m");
  if (!(wheel_radius_m <= 0.35)) throw ValidationError("wheel_radius_m must be <= 0.35");
  require_positive(wheel_width_m, "wheel_width_m");
  require_finite(com_offset_m.x, "com_offset_m.x");
  require_finite(com_offset_m.y, "com_offset_m.y");
  require_non_negative(com_height_m, "com_height_m");
}

BodyTwist ackermann_command(double speed_mps, double curvature_per_m) {
  require_finite(speed_mps, "speed_mps");
  require_finite(curvature_per_m, "curvature_per_m");
  return {speed_mps, 0.0, speed_mps * curvature_per_m};
}

BodyTwist crab_command(double speed_mps, double heading_rad) {
  require_finite(speed_mps, "speed_mps");
  require_finite(heading_rad, "heading_rad");
  return {speed_mps * std::cos(heading_rad), speed_mps * std::sin(heading_rad), 0.0};
}

BodyTwist point_turn_command(double omega_radps) {
  require_finite(omega_radps, "omega_radps");
  return {0.0, 0.0, omega_radps};
}

BodyTwist mode_command(DriveMode mode, const ModeParams& params) {
  switch (mode) {
    case DriveMode::ackermann:
      return ackermann_command(params.speed_mps, params.curvature_per_m);
    case DriveMode::crab:
      return crab_command(params.speed_mps, params.heading_rad);
    case DriveMode::point_turn:
      return point_turn_command(params.omega_radps);
  }
  throw ValidationError("mode_command: unknown mode");
}

NormalizedSteer normalize_steer(double raw_angle_rad, double raw_speed) {
  require_finite(raw_angle_rad, "raw_angle_rad");
  require_finite(raw_speed, "raw_speed");
  double a = wrap_pi(raw_angle_rad);
  double s = raw_speed;
  if (a > pi / 2.0) {
    a -= pi;
    s = -s;
  } else if (a < -pi / 2.0) {
    a += pi;
    s = -s;
  }
  return {a, s};
}

std::vector<WheelSetpoint> allocate(const RoverLayout& layout, const BodyTwist& twist) {
  layout.validate();
  require_finite(twist.vx_mps, "vx_mps");
  require_finite(twist.vy_mps, "vy_mps");
  require_finite(twist.omega_radps, "omega_radps");
  std::vector<WheelSetpoint> out(layout.legs_m.size());
  for (std::size_t i = 0; i < layout.legs_m.size(); ++i) {
    const Vec2 p = layout.legs_m[i];
    const double ux = twist.vx_mps - twist.omega_radps * p.y;
    const double uy = twist.vy_mps + twist.omega_radps * p.x;
    const double speed = std::hypot(ux, uy);
    if (speed < icr_speed_floor_mps) {
      out[i].at_icr = (twist.vx_mps != 0.0 || twist.vy_mps != 0.0 || twist.omega_radps != 0.0);
      continue;  // zero setpoint either way
    }
    const NormalizedSteer folded =
        normalize_steer(std::atan2(uy, ux), speed / layout.wheel_radius_m);
    out[i].steer_angle_rad = folded.angle_rad;
    out[i].wheel_speed_radps = folded.speed;
  }
  return out;
}

Icr icr_of(const BodyTwist& twist) {
  require_finite(twist.vx_mps, "vx_mps");
  require_finite(twist.vy_mps, "vy_mps");
  require_finite(twist.omega_radps, "omega_radps");
  if (twist.omega_radps == 0.0) return {{0.0, 0.0}, true};
  return {{-twist.vy_mps / twist.omega_radps, twist.vx_mps / twist.omega_radps}, false};
}

BodyTwist reconstruct_twist(const RoverLayout& layout,
                            std::span<const WheelSetpoint> setpoints) {
  layout.validate();
  if (setpoints.size() != layout.legs_m.size())
    throw ValidationError("setpoints size must match leg count");
  // Normal equations for the 2n x 3 system u_i = (vx - w*y_i, vy + w*x_i).
  double a11 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < setpoints.size(); ++i) {
    const auto& sp = setpoints[i];
    if (sp.at_icr || sp.saturated) continue;
    const Vec2 p = layout.legs_m[i];
    const double v = sp.wheel_speed_radps * layout.wheel_radius_m;
    const double ux = v * std::cos(sp.steer_angle_rad);
    const double uy = v * std::sin(sp.steer_angle_rad);
    // Row (1, 0, -y) -> ux ; row (0, 1, x) -> uy.
    a11 += 1.0;
    a13 += -p.y;
    a22 += 1.0;
    a23 += p.x;
    a33 += p.x * p.x + p.y * p.y;
    b1 += ux;
    b2 += uy;
    b3 += -p.y * ux + p.x * uy;
    ++used;
  }
  if (used < 2) throw ValidationError("reconstruct_twist: fewer than 2 usable setpoints");
  // Cramer's rule on the symmetric system [[a11,0,a13],[0,a22,a23],[a13,a23,a33]].
  auto det3x3 = [](double c11, double c12, double c13, double c21, double c22, double c23,
                   double c31, double c32, double c33) {
    return c11 * (c22 * c33 - c23 * c32) - c12 * (c21 * c33 - c23 * c31) +
           c13 * (c21 * c32 - c22 * c31);
  };
  const double d = det3x3(a11, 0.0, a13, 0.0, a22, a23, a13, a23, a33);
  if (!(std::abs(d) > 1e-12)) throw ValidationError("reconstruct_twist: singular layout");
  const double dx = det3x3(b1, 0.0, a13, b2, a22, a23, b3, a23, a33);
  const double dy = det3x3(a11, b1, a13, 0.0, b2, a23, a13, b3, a33);
  const double dw = det3x3(a11, 0.0, b1, 0.0, a22, b2, a13, a23, b3);
  return {dx / d, dy / d, dw / d};
}

}  // namespace warmbox

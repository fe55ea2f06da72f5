#include "warmbox/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace warmbox {

namespace {

void require_alpha_in_range(const WishboneGeometry& geo, double alpha_rad) {
  require_finite(alpha_rad, "alpha_rad");
  if (!(alpha_rad >= geo.angle_min_rad && alpha_rad <= geo.angle_max_rad)) {
    std::ostringstream os;
    os << "alpha_rad " << alpha_rad << " outside configured range [" << geo.angle_min_rad
       << ", " << geo.angle_max_rad << "]";
    throw ValidationError(os.str());
  }
}

}  // namespace

void WishboneGeometry::validate() const {
  require_positive(arm_length_m, "arm_length_m");
  require_positive(pivot_vertical_separation_m, "pivot_vertical_separation_m");
  require_finite(neutral_angle_rad, "neutral_angle_rad");
  require_finite(angle_min_rad, "angle_min_rad");
  require_finite(angle_max_rad, "angle_max_rad");
  if (!(angle_min_rad < angle_max_rad))
    throw ValidationError("angle_min_rad must be < angle_max_rad");
  if (!(neutral_angle_rad >= angle_min_rad && neutral_angle_rad <= angle_max_rad))
    throw ValidationError("neutral_angle_rad must lie inside the angle range");
  // Arm angles stay on the monotone branch of sin.
  if (!(angle_min_rad > -pi / 2.0 && angle_max_rad < pi / 2.0))
    throw ValidationError("angle range must lie inside (-pi/2, pi/2)");
  require_positive(spring_rate_nm_per_rad, "spring_rate_nm_per_rad");
  require_finite(spring_free_angle_rad, "spring_free_angle_rad");
  require_finite(actuator_gain_rad, "actuator_gain_rad");
}

HubPose hub_pose(const WishboneGeometry& geo, double alpha_rad) {
  geo.validate();
  require_alpha_in_range(geo, alpha_rad);
  const Vec3 arm{geo.arm_length_m * std::cos(alpha_rad), 0.0,
                 geo.arm_length_m * std::sin(alpha_rad)};
  // Four-point linkage: both arms carry the same vector, so the hub-side
  // pivot pair stays parallel to the chassis pivot pair.
  const Vec3 upper = geo.chassis_anchor_m + arm;
  const Vec3 lower_anchor =
      geo.chassis_anchor_m - Vec3{0.0, 0.0, geo.pivot_vertical_separation_m};
  const Vec3 lower = lower_anchor + arm;
  const Vec3 upright = upper - lower;
  HubPose pose;
  pose.position_m = upper + geo.upright_offset_m;
  pose.orientation_error_rad = std::atan2(std::hypot(upright.x, upright.y), upright.z);
  return pose;
}

double alpha_for_height(const WishboneGeometry& geo, double delta_z_m) {
  geo.validate();
  require_finite(delta_z_m, "delta_z_m");
  const double L = geo.arm_length_m;
  const double z0 = L * std::sin(geo.neutral_angle_rad);
  const double lo = L * std::sin(geo.angle_min_rad) - z0;
  const double hi = L * std::sin(geo.angle_max_rad) - z0;
  if (!(delta_z_m >= lo && delta_z_m <= hi)) {
    std::ostringstream os;
    os << "delta_z_m " << delta_z_m << " unreachable; achievable interval is [" << lo << ", "
       << hi << "] m";
    throw UnreachableHeightError(os.str(), lo, hi);
  }
  auto f = [&](double a) { return L * std::sin(a) - z0 - delta_z_m; };
  auto df = [&](double a) { return L * std::cos(a); };
  if (f(geo.angle_min_rad) == 0.0) return geo.angle_min_rad;
  if (f(geo.angle_max_rad) == 0.0) return geo.angle_max_rad;
  return solve_bracketed(f, df, geo.angle_min_rad, geo.angle_max_rad, 1e-13);
}

SuspensionEquilibrium equilibrium_alpha(const WishboneGeometry& geo, double wheel_load_n,
                                        double command) {
  geo.validate();
  require_non_negative(wheel_load_n, "wheel_load_n");
  require_finite(command, "command");
  const double set_angle = geo.spring_free_angle_rad + geo.actuator_gain_rad * command;
  // Positive residual: spring torque exceeds the load moment (arm settles lower).
  auto residual = [&](double a) {
    return geo.spring_rate_nm_per_rad * (a - set_angle) -
           wheel_load_n * geo.arm_length_m * std::cos(a);
  };
  auto dresidual = [&](double a) {
    return geo.spring_rate_nm_per_rad + wheel_load_n * geo.arm_length_m * std::sin(a);
  };
  const double g_lo = residual(geo.angle_min_rad);
  const double g_hi = residual(geo.angle_max_rad);
  if (g_lo == 0.0) return {geo.angle_min_rad, false};
  if (g_hi == 0.0) return {geo.angle_max_rad, false};
  if (g_lo * g_hi < 0.0) {
    return {solve_bracketed(residual, dresidual, geo.angle_min_rad, geo.angle_max_rad, 1e-13),
            false};
  }
  if (g_lo > 0.0 && g_hi > 0.0) return {geo.angle_min_rad, true};  // spring wins everywhere
  if (g_lo < 0.0 && g_hi < 0.0) return {geo.angle_max_rad, true};  // load wins everywhere
  throw ValidationError("equilibrium_alpha: residual is not finite over the angle range");
}

double reach(const WishboneGeometry& geo, double alpha_rad) {
  const HubPose pose = hub_pose(geo, alpha_rad);
  return norm(pose.position_m - geo.chassis_anchor_m);
}

double max_reach(const WishboneGeometry& geo) {
  geo.validate();
  // reach(alpha) has at most one interior extremum on (-pi/2, pi/2); a dense
  // scan refined at the best sample is robust for every configured geometry.
  constexpr int samples = 256;
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double a = geo.angle_min_rad +
                     (geo.angle_max_rad - geo.angle_min_rad) * static_cast<double>(i) / samples;
    best = std::max(best, reach(geo, a));
  }
  return best;
}

}  // namespace warmbox

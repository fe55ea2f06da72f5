#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "warmbox/locomotion.hpp"

using namespace warmbox;

namespace {

RoverLayout bench_layout() {
  RoverLayout layout;
  layout.legs_m = {{0.6, 0.5}, {0.6, -0.5}, {-0.6, 0.5}, {-0.6, -0.5}};
  layout.wheel_radius_m = 0.25;
  layout.wheel_width_m = 0.11;
  layout.com_offset_m = {0.0, 0.0};
  layout.com_height_m = 0.3;
  return layout;
}

// Least-squares twist from the stacked per-wheel velocity equations,
// independent of the library's normal-equation solve.
BodyTwist stacked_twist(const RoverLayout& layout, const std::vector<WheelSetpoint>& sp) {
  Eigen::MatrixXd a(2 * sp.size(), 3);
  Eigen::VectorXd b(2 * sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const Vec2 leg = layout.legs_m[i];
    const double s = sp[i].wheel_speed_radps * layout.wheel_radius_m;
    a.row(2 * i) << 1.0, 0.0, -leg.y;
    b(2 * i) = s * std::cos(sp[i].steer_angle_rad);
    a.row(2 * i + 1) << 0.0, 1.0, leg.x;
    b(2 * i + 1) = s * std::sin(sp[i].steer_angle_rad);
  }
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(b);
  return {x(0), x(1), x(2)};
}

}  // namespace

TEST_CASE("ackermann allocation puts every wheel on the turning circle") {
  const RoverLayout layout = bench_layout();
  const BodyTwist twist = ackermann_command(0.1, 1.0);
  CHECK(twist.vx_mps == 0.1);
  CHECK(twist.omega_radps == 0.1);

  const auto sp = allocate(layout, twist);
  REQUIRE(sp.size() == 4);
  CHECK(sp[0].steer_angle_rad == doctest::Approx(0.8760580505981934).epsilon(1e-12));
  CHECK(sp[0].wheel_speed_radps == doctest::Approx(0.31240998703626616).epsilon(1e-12));
  CHECK(sp[1].steer_angle_rad == doctest::Approx(0.38050637711236485).epsilon(1e-12));
  CHECK(sp[1].wheel_speed_radps == doctest::Approx(0.6462197768561405).epsilon(1e-12));
  CHECK(sp[2].steer_angle_rad == doctest::Approx(-0.8760580505981934).epsilon(1e-12));
  CHECK(sp[2].wheel_speed_radps == doctest::Approx(0.31240998703626616).epsilon(1e-12));
  CHECK(sp[3].steer_angle_rad == doctest::Approx(-0.38050637711236485).epsilon(1e-12));
  CHECK(sp[3].wheel_speed_radps == doctest::Approx(0.6462197768561405).epsilon(1e-12));
  for (const auto& w : sp) {
    CHECK_FALSE(w.saturated);
    CHECK_FALSE(w.at_icr);
  }
}

TEST_CASE("crab allocation steers every wheel to the common heading") {
  const auto sp = allocate(bench_layout(), crab_command(0.2, pi / 4.0));
  for (const auto& w : sp) {
    CHECK(w.steer_angle_rad == doctest::Approx(0.7853981633974482).epsilon(1e-12));
    CHECK(w.wheel_speed_radps == doctest::Approx(0.8).epsilon(1e-12));
  }
}

TEST_CASE("point turn allocation is tangential with mirrored signs") {
  const auto sp = allocate(bench_layout(), point_turn_command(0.2));
  REQUIRE(sp.size() == 4);
  CHECK(sp[0].steer_angle_rad == doctest::Approx(-0.8760580505981932).epsilon(1e-12));
  CHECK(sp[0].wheel_speed_radps == doctest::Approx(-0.6248199740725323).epsilon(1e-12));
  CHECK(sp[1].steer_angle_rad == doctest::Approx(0.8760580505981934).epsilon(1e-12));
  CHECK(sp[1].wheel_speed_radps == doctest::Approx(0.6248199740725323).epsilon(1e-12));
  CHECK(sp[2].steer_angle_rad == doctest::Approx(0.8760580505981932).epsilon(1e-12));
  CHECK(sp[2].wheel_speed_radps == doctest::Approx(-0.6248199740725323).epsilon(1e-12));
  CHECK(sp[3].steer_angle_rad == doctest::Approx(-0.8760580505981934).epsilon(1e-12));
  CHECK(sp[3].wheel_speed_radps == doctest::Approx(0.6248199740725323).epsilon(1e-12));
}

TEST_CASE("mode command dispatches to the matching constructor") {
  ModeParams p;
  p.speed_mps = 0.1;
  p.curvature_per_m = 1.0;
  p.heading_rad = pi / 4.0;
  p.omega_radps = 0.2;

  const BodyTwist a = mode_command(DriveMode::ackermann, p);
  const BodyTwist a_ref = ackermann_command(0.1, 1.0);
  CHECK(a.vx_mps == a_ref.vx_mps);
  CHECK(a.vy_mps == a_ref.vy_mps);
  CHECK(a.omega_radps == a_ref.omega_radps);

  const BodyTwist c = mode_command(DriveMode::crab, p);
  const BodyTwist c_ref = crab_command(0.1, pi / 4.0);
  CHECK(c.vx_mps == c_ref.vx_mps);
  CHECK(c.vy_mps == c_ref.vy_mps);
  CHECK(c.omega_radps == c_ref.omega_radps);

  const BodyTwist t = mode_command(DriveMode::point_turn, p);
  CHECK(t.vx_mps == 0.0);
  CHECK(t.omega_radps == 0.2);
}

TEST_CASE("steer normalization folds by half turns and flips the speed") {
  const NormalizedSteer folded = normalize_steer(2.2655346029916, 1.0);
  CHECK(folded.angle_rad == doctest::Approx(-0.8760580505981932).epsilon(1e-12));
  CHECK(folded.speed == -1.0);

  // Idempotent on its own output.
  const NormalizedSteer again = normalize_steer(folded.angle_rad, folded.speed);
  CHECK(again.angle_rad == folded.angle_rad);
  CHECK(again.speed == folded.speed);

  // The quarter-turn boundary stays put.
  CHECK(normalize_steer(pi / 2.0, 0.5).angle_rad == doctest::Approx(pi / 2.0).epsilon(1e-12));
  CHECK(normalize_steer(-pi / 2.0, 0.5).angle_rad == doctest::Approx(-pi / 2.0).epsilon(1e-12));

  // A half-turn offset is the same wheel line with reversed rolling.
  for (double a : {0.0, 0.3, -0.7, 1.2}) {
    const NormalizedSteer shifted = normalize_steer(a + pi, 0.4);
    CHECK(shifted.angle_rad == doctest::Approx(a).epsilon(1e-12));
    CHECK(shifted.speed == doctest::Approx(-0.4).epsilon(1e-12));
  }
}

TEST_CASE("instantaneous centre of rotation") {
  const Icr icr = icr_of({0.1, 0.0, 0.1});
  CHECK_FALSE(icr.at_infinity);
  CHECK(icr.position_m.x == 0.0);
  CHECK(icr.position_m.y == 1.0);

  CHECK(icr_of({0.2, 0.1, 0.0}).at_infinity);
}

TEST_CASE("wheel axle lines intersect at the centre of rotation") {
  const RoverLayout layout = bench_layout();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> vel(-0.3, 0.3);
  std::uniform_real_distribution<double> spin(0.05, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const BodyTwist twist{vel(rng), vel(rng), spin(rng)};
    const Icr icr = icr_of(twist);
    REQUIRE_FALSE(icr.at_infinity);
    const auto sp = allocate(layout, twist);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      if (sp[i].at_icr) continue;
      const Vec2 heading{std::cos(sp[i].steer_angle_rad), std::sin(sp[i].steer_angle_rad)};
      const Vec2 radial = icr.position_m - layout.legs_m[i];
      CHECK(std::abs(dot(heading, radial)) < 1e-9);
    }
  }
}

TEST_CASE("twist reconstruction inverts the allocation") {
  const RoverLayout layout = bench_layout();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> vel(-0.3, 0.3);
  std::uniform_real_distribution<double> spin(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const BodyTwist twist{vel(rng), vel(rng), spin(rng)};
    const auto sp = allocate(layout, twist);
    const BodyTwist back = reconstruct_twist(layout, sp);
    CHECK(back.vx_mps == doctest::Approx(twist.vx_mps).epsilon(1e-9));
    CHECK(back.vy_mps == doctest::Approx(twist.vy_mps).epsilon(1e-9));
    CHECK(back.omega_radps == doctest::Approx(twist.omega_radps).epsilon(1e-9));

    const BodyTwist qr = stacked_twist(layout, sp);
    CHECK(back.vx_mps == doctest::Approx(qr.vx_mps).epsilon(1e-9));
    CHECK(back.vy_mps == doctest::Approx(qr.vy_mps).epsilon(1e-9));
    CHECK(back.omega_radps == doctest::Approx(qr.omega_radps).epsilon(1e-9));
  }
}

TEST_CASE("reconstruction skips degenerate wheels and needs two usable ones") {
  const RoverLayout layout = bench_layout();

  // Centre of rotation exactly on leg 0: that wheel is zeroed and skipped.
  const BodyTwist twist{0.1, -0.12, 0.2};
  const auto sp = allocate(layout, twist);
  CHECK(sp[0].at_icr);
  CHECK(sp[0].wheel_speed_radps == 0.0);
  const BodyTwist back = reconstruct_twist(layout, sp);
  CHECK(back.vx_mps == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(back.vy_mps == doctest::Approx(-0.12).epsilon(1e-9));
  CHECK(back.omega_radps == doctest::Approx(0.2).epsilon(1e-9));

  std::vector<WheelSetpoint> starved(4);
  for (auto& w : starved) w.saturated = true;
  CHECK_THROWS_AS(reconstruct_twist(layout, starved), ValidationError);
  starved[0].saturated = false;
  CHECK_THROWS_AS(reconstruct_twist(layout, starved), ValidationError);
}

TEST_CASE("layout validation") {
  RoverLayout two_legs = bench_layout();
  two_legs.legs_m = {{0.6, 0.5}, {-0.6, -0.5}};
  CHECK_THROWS_AS(two_legs.validate(), ValidationError);

  RoverLayout duplicated = bench_layout();
  duplicated.legs_m[1] = duplicated.legs_m[0];
  CHECK_THROWS_AS(duplicated.validate(), ValidationError);

  RoverLayout big_wheel = bench_layout();
  big_wheel.wheel_radius_m = 0.4;
  CHECK_THROWS_AS(big_wheel.validate(), ValidationError);

  RoverLayout no_wheel = bench_layout();
  no_wheel.wheel_radius_m = 0.0;
  CHECK_THROWS_AS(no_wheel.validate(), ValidationError);
}

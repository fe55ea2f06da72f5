#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "warmbox/steering.hpp"

using namespace warmbox;

namespace {

// Independent oracle for the cable tension amplification: integrate the
// capstan ODE dT/dphi = mu * T from T = 1 with classic RK4.
double integrated_tension_ratio(double mu, double wrap) {
  const int n = 20000;
  const double h = wrap / n;
  double t = 1.0;
  for (int i = 0; i < n; ++i) {
    const double k1 = mu * t;
    const double k2 = mu * (t + 0.5 * h * k1);
    const double k3 = mu * (t + 0.5 * h * k2);
    const double k4 = mu * (t + h * k3);
    t += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return t;
}

CapstanDrive flight_drive() {
  CapstanDrive drive;
  drive.input_drum_radius_m = 0.02;
  drive.output_drum_radius_m = 0.06;
  drive.wrap_angle_rad = pi;
  drive.friction_coeff = 0.3;
  drive.pretension_n = 200.0;
  drive.nominal_efficiency = 0.91;
  return drive;
}

}  // namespace

TEST_CASE("capstan tension ratio matches the integrated cable equation") {
  CHECK(capstan_tension_ratio(0.3, pi) ==
        doctest::Approx(integrated_tension_ratio(0.3, pi)).epsilon(1e-9));
  CHECK(capstan_tension_ratio(0.3, pi) == doctest::Approx(2.566332395208135).epsilon(1e-12));
  CHECK(capstan_tension_ratio(0.3, two_pi) ==
        doctest::Approx(6.586061962694725).epsilon(1e-12));
  // Wrap composes multiplicatively: two half wraps equal one full wrap.
  CHECK(capstan_tension_ratio(0.3, pi) * capstan_tension_ratio(0.3, pi) ==
        doctest::Approx(capstan_tension_ratio(0.3, two_pi)).epsilon(1e-12));
  CHECK_THROWS_AS(capstan_tension_ratio(0.0, pi), ValidationError);
  CHECK_THROWS_AS(capstan_tension_ratio(0.3, 0.0), ValidationError);
}

TEST_CASE("steer angle divides by the drum ratio and clamps at the limits") {
  const CapstanDrive drive = flight_drive();
  CHECK(drive.drum_ratio() == doctest::Approx(3.0).epsilon(1e-15));

  const SteerAngle mid = steer_angle(drive, 3.0);
  CHECK(mid.angle_rad == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(mid.saturated);

  const SteerAngle high = steer_angle(drive, 6.0);
  CHECK(high.angle_rad == pi / 2.0);
  CHECK(high.saturated);
  const SteerAngle low = steer_angle(drive, -6.0);
  CHECK(low.angle_rad == -pi / 2.0);
  CHECK(low.saturated);

  CHECK(steer_angle(drive, -3.0).angle_rad == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("slip margin compares transmissible against demanded torque") {
  const CapstanDrive drive = flight_drive();
  CHECK(slip_margin(drive, 10.0) == doctest::Approx(1.879598874249762).epsilon(1e-12));
  CHECK(slip_margin(drive, 20.0) ==
        doctest::Approx(0.5 * slip_margin(drive, 10.0)).epsilon(1e-12));
  CHECK(slip_margin(drive, 0.0) == std::numeric_limits<double>::infinity());

  CapstanDrive slack = drive;
  slack.pretension_n = 0.0;
  CHECK(slip_margin(slack, 10.0) == 0.0);
}

TEST_CASE("steering torque chain applies ratio and nominal efficiency") {
  const CapstanDrive drive = flight_drive();
  CHECK(steering_torque_chain(drive, 10.0) == doctest::Approx(27.3).epsilon(1e-12));
  const double at_rated = steering_torque_chain(drive, 11.75);
  CHECK(at_rated == doctest::Approx(32.0775).epsilon(1e-12));
  CHECK(at_rated >= 26.01);
  CHECK(at_rated <= 32.09);
}

TEST_CASE("gear steering chain composes stage by stage") {
  const std::vector<GearStage> pair{{1.5, 0.92}, {2.0, 0.92}};
  CHECK(gear_steering_torque_chain(pair, 10.0) == doctest::Approx(25.392).epsilon(1e-12));

  const std::vector<GearStage> triple{{2.0, 0.95}, {2.0, 0.95}, {2.0, 0.95}};
  CHECK(gear_steering_torque_chain(triple, 1.0) ==
        doctest::Approx(8.0 * 0.857375).epsilon(1e-12));
}

TEST_CASE("comparison prefers the strictly higher composed efficiency") {
  const CapstanDrive drive = flight_drive();
  const std::vector<GearStage> lossy{{1.5, 0.92}, {2.0, 0.92}};
  const SteeringComparison cmp = compare_steering(drive, lossy);
  CHECK(cmp.capstan_efficiency == 0.91);
  CHECK(cmp.gear_efficiency == doctest::Approx(0.8464).epsilon(1e-12));
  CHECK(cmp.capstan_ratio == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cmp.gear_ratio == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cmp.capstan_preferred);

  const std::vector<GearStage> fine{{1.0, 0.95}, {3.0, 0.97}};
  CHECK_FALSE(compare_steering(drive, fine).capstan_preferred);

  const std::vector<GearStage> equal{{3.0, 0.91}};
  CHECK_FALSE(compare_steering(drive, equal).capstan_preferred);  // strict ordering
}

TEST_CASE("capstan validation rejects inverted drums and zero wrap") {
  CapstanDrive drive = flight_drive();
  drive.output_drum_radius_m = 0.01;  // smaller than the input drum
  CHECK_THROWS_AS(drive.validate(), ValidationError);

  CapstanDrive unwrapped = flight_drive();
  unwrapped.wrap_angle_rad = 0.0;
  CHECK_THROWS_AS(unwrapped.validate(), ValidationError);

  CapstanDrive onesided = flight_drive();
  onesided.limits.min_rad = 0.1;  // limits must bracket zero
  CHECK_THROWS_AS(onesided.validate(), ValidationError);
}

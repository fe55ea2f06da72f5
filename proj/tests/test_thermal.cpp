#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "warmbox/thermal.hpp"

using namespace warmbox;

namespace {

ThermalNode bench_node() {
  ThermalNode node;
  node.heat_capacity_j_per_k = 9000.0;
  node.mli_effective_emissivity = 0.03;
  node.radiating_area_m2 = 0.5;
  node.heater_max_power_w = 20.0;
  node.internal_dissipation_w = 0.0;
  return node;
}

ThermalNode flight_node() {
  ThermalNode node = bench_node();
  node.heater_max_power_w = 30.0;
  node.internal_dissipation_w = 1.0;
  return node;
}

EnvironmentProfile constant_sink(double temp_k) {
  EnvironmentProfile env;
  env.sink_min_k = temp_k;
  env.sink_max_k = temp_k;
  env.period_s = 2551443.0;
  env.phase_rad = 0.0;
  return env;
}

}  // namespace

TEST_CASE("radiative power follows the fourth-power law") {
  const ThermalNode node = bench_node();
  CHECK(radiative_power(node, 293.0, 93.0) ==
        doctest::Approx(6.205016104584346).epsilon(1e-12));
  CHECK(radiative_power(node, 200.0, 200.0) == 0.0);

  // Monotonic: hotter box radiates more, hotter sink absorbs less.
  CHECK(radiative_power(node, 300.0, 93.15) > radiative_power(node, 293.15, 93.15));
  CHECK(radiative_power(node, 293.15, 150.0) < radiative_power(node, 293.15, 93.15));

  // Linear in emissivity and area.
  ThermalNode doubled = node;
  doubled.radiating_area_m2 *= 2.0;
  CHECK(radiative_power(doubled, 293.15, 93.15) ==
        doctest::Approx(2.0 * radiative_power(node, 293.15, 93.15)).epsilon(1e-12));
}

TEST_CASE("steady heater power nets out the internal dissipation") {
  CHECK(steady_heater_power(bench_node(), 293.0, 93.0) ==
        doctest::Approx(6.205016104584346).epsilon(1e-12));
  CHECK(steady_heater_power(flight_node(), 293.0, 93.0) ==
        doctest::Approx(5.205016104584346).epsilon(1e-12));
  CHECK(steady_heater_power(bench_node(), 200.0, 200.0) == 0.0);

  ThermalNode small = bench_node();
  small.heater_max_power_w = 5.0;
  CHECK_THROWS_AS(steady_heater_power(small, 293.0, 93.0), UndersizedHeaterError);
  try {
    steady_heater_power(small, 293.0, 93.0);
  } catch (const UndersizedHeaterError& e) {
    CHECK(e.required_power_w == doctest::Approx(6.205016104584346).epsilon(1e-12));
  }
}

TEST_CASE("bang-bang control holds the band with a predictable duty cycle") {
  const ThermalNode node = bench_node();
  HeaterController controller;
  controller.on_below_k = 288.0;
  controller.off_above_k = 298.0;
  const EnvironmentProfile env = constant_sink(93.0);

  std::vector<ThermalStepRecord> records;
  const ThermalSummary summary =
      simulate_thermal(node, controller, env, 293.0, 600000.0, 60.0,
                       [&](const ThermalStepRecord& r) { records.push_back(r); });

  // Long-run duty approaches the steady heat-loss-to-heater-power ratio.
  const double steady_ratio = steady_heater_power(node, 293.0, 93.0) / node.heater_max_power_w;
  CHECK(std::abs(summary.duty_cycle - steady_ratio) < 0.05);
  CHECK(summary.band_low_k == doctest::Approx(283.0));
  CHECK(summary.band_high_k == doctest::Approx(303.0));
  CHECK(summary.within_band);
  CHECK(summary.min_temp_k >= 287.0);
  CHECK(summary.max_temp_k <= 299.0);

  REQUIRE(records.size() == 10000);
  std::size_t on_steps = 0;
  double energy = 0.0;
  for (const auto& r : records) {
    const bool on = r.heater_w == 20.0;
    CHECK((on || r.heater_w == 0.0));
    if (on) ++on_steps;
    energy += r.heater_w * 60.0;
    CHECK(r.env_temp_k == doctest::Approx(93.0));
  }
  CHECK(summary.duty_cycle ==
        doctest::Approx(static_cast<double>(on_steps) / 10000.0).epsilon(1e-15));
  CHECK(records.back().duty_so_far == doctest::Approx(summary.duty_cycle).epsilon(1e-15));
  CHECK(summary.heater_energy_j == doctest::Approx(energy).epsilon(1e-12));
  CHECK(summary.energy_residual_rel < 1e-6);
  CHECK(summary.final_temp_k == doctest::Approx(records.back().box_temp_k));
}

TEST_CASE("per-step temperature changes above one kelvin are rejected") {
  CHECK_THROWS_AS(simulate_thermal(bench_node(), {288.0, 298.0}, constant_sink(93.0), 293.0,
                                   2.0e5, 1.0e5),
                  ValidationError);
}

TEST_CASE("halving the step barely moves a pure cooling trajectory") {
  ThermalNode node = bench_node();
  node.heater_max_power_w = 0.0;
  HeaterController idle;
  idle.on_below_k = 10.0;
  idle.off_above_k = 20.0;
  const EnvironmentProfile env = constant_sink(93.0);

  const double coarse =
      simulate_thermal(node, idle, env, 300.0, 200000.0, 60.0).final_temp_k;
  const double fine = simulate_thermal(node, idle, env, 300.0, 200000.0, 30.0).final_temp_k;
  CHECK(std::abs(coarse - fine) < 0.1);
  CHECK(coarse == doctest::Approx(221.0).epsilon(0.005));
}

TEST_CASE("the environment profile sweeps sink extremes over one period") {
  EnvironmentProfile env;
  env.sink_min_k = 93.15;
  env.sink_max_k = 393.15;
  env.period_s = 2551443.0;
  env.phase_rad = 0.0;
  env.validate();
  CHECK(env.sink_at(0.0) == doctest::Approx(93.15).epsilon(1e-9));
  CHECK(env.sink_at(env.period_s / 2.0) == doctest::Approx(393.15).epsilon(1e-9));
  CHECK(env.sink_at(env.period_s) == doctest::Approx(93.15).epsilon(1e-9));
  CHECK(env.sink_mid_k() == doctest::Approx(243.15));
}

TEST_CASE("a lunation at flight settings stays inside the control band") {
  const ThermalNode node = flight_node();
  HeaterController controller;
  controller.on_below_k = 395.15;
  controller.off_above_k = 399.15;
  EnvironmentProfile env;
  env.sink_min_k = 93.15;
  env.sink_max_k = 393.15;
  env.period_s = 2551443.0;

  const ThermalSummary summary =
      simulate_thermal(node, controller, env, 397.0, 2551443.0, 60.0);
  CHECK(summary.within_band);
  CHECK(summary.min_temp_k >= 390.15);
  CHECK(summary.max_temp_k <= 404.15);
  // The cold half of the cycle works the heater harder than the warm half.
  CHECK(summary.duty_cold_half > summary.duty_warm_half);
  CHECK(summary.duty_cycle > 0.0);
  CHECK(summary.duty_cycle < 1.0);
}

TEST_CASE("thermal validation rejects inverted settings") {
  HeaterController inverted;
  inverted.on_below_k = 300.0;
  inverted.off_above_k = 290.0;
  CHECK_THROWS_AS(inverted.validate(), ValidationError);

  CHECK_THROWS_AS(simulate_thermal(bench_node(), {288.0, 298.0}, constant_sink(93.0), -5.0,
                                   600.0, 60.0),
                  ValidationError);

  EnvironmentProfile swapped;
  swapped.sink_min_k = 400.0;
  swapped.sink_max_k = 100.0;
  CHECK_THROWS_AS(swapped.validate(), ValidationError);

  ThermalNode hollow = bench_node();
  hollow.heat_capacity_j_per_k = 0.0;
  CHECK_THROWS_AS(hollow.validate(), ValidationError);
}

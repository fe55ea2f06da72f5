#pragma once

// Warm-box thermal control: a single lumped node behind MLI radiating to an
// effective sink, heated by a bang-bang controller with hysteresis.
//
// Model: C * dT/dt = heater + dissipation - eps* . sigma . A . (T^4 - Tenv^4),
// integrated with explicit Euler. Conduction is neglected; eps* is the
// effective MLI emissivity covering both blanket faces.

#include <functional>

#include "warmbox/errors.hpp"
#include "warmbox/numeric.hpp"

namespace warmbox {

inline constexpr double stefan_boltzmann_w_m2_k4 = 5.670374419e-8;

struct ThermalNode {
  double heat_capacity_j_per_k = 0.0;     // > 0
  double mli_effective_emissivity = 0.0;  // (0, 1]
  double radiating_area_m2 = 0.0;         // > 0
  double heater_max_power_w = 0.0;        // >= 0
  double internal_dissipation_w = 0.0;    // >= 0

  void validate() const;
};

struct HeaterController {
  double on_below_k = 0.0;   // heater latches on at or below this temperature
  double off_above_k = 0.0;  // and off at or above this one; on_below < off_above

  void validate() const;
};

struct EnvironmentProfile {
  double sink_min_k = 93.15;
  double sink_max_k = 393.15;
  double period_s = 2551443.0;  // synodic lunar day
  double phase_rad = 0.0;       // 0 puts the sink minimum at t = 0

  void validate() const;
  double sink_at(double t_s) const;
  double sink_mid_k() const { return 0.5 * (sink_min_k + sink_max_k); }
};

// Net radiated power (positive = heat leaving the box).
double radiative_power(const ThermalNode& node, double box_temp_k, double env_temp_k);

// Heater power holding the box at hold_temp against a fixed sink,
// max(0, radiative - dissipation). Throws UndersizedHeaterError (carrying the
// required wattage) when the demand exceeds heater_max_power_w.
double steady_heater_power(const ThermalNode& node, double hold_temp_k, double env_temp_k);

struct ThermalStepRecord {
  std::size_t step_index = 0;
  double time_s = 0.0;
  double box_temp_k = 0.0;
  double env_temp_k = 0.0;
  double heater_w = 0.0;
  double duty_so_far = 0.0;
};

struct ThermalSummary {
  double min_temp_k = 0.0;
  double max_temp_k = 0.0;
  double final_temp_k = 0.0;
  double duty_cycle = 0.0;       // fraction of steps with the heater on
  double duty_cold_half = 0.0;   // sink below its midpoint
  double duty_warm_half = 0.0;   // sink at or above its midpoint
  double band_low_k = 0.0;       // on_below - 5
  double band_high_k = 0.0;      // off_above + 5
  bool within_band = true;       // false flags an undersized/overwhelmed heater
  double heater_energy_j = 0.0;
  double energy_residual_rel = 0.0;  // |C*dT - integral(net power)| / max(1, heater energy)
};

using ThermalStepSink = std::function<void(const ThermalStepRecord&)>;

// Explicit Euler over [0, duration]. The per-step temperature change must stay
// below 1 K (throws ValidationError otherwise). Heater output is strictly
// bang-bang: 0 or heater_max_power_w.
ThermalSummary simulate_thermal(const ThermalNode& node, const HeaterController& controller,
                                const EnvironmentProfile& env, double initial_temp_k,
                                double duration_s, double dt_s,
                                const ThermalStepSink& sink = {});

}  // namespace warmbox

#include "warmbox/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace warmbox {

void ThermalNode::validate() const {
  require_positive(heat_capacity_j_per_k, "heat_capacity_j_per_k");
  require_in_unit(mli_effective_emissivity, "mli_effective_emissivity");
  require_positive(radiating_area_m2, "radiating_area_m2");
  require_non_negative(heater_max_power_w, "heater_max_power_w");
  require_non_negative(internal_dissipation_w, "internal_dissipation_w");
}

void HeaterController::validate() const {
  require_positive(on_below_k, "on_below_k");
  require_positive(off_above_k, "off_above_k");
  if (!(on_below_k < off_above_k))
    throw ValidationError("on_below_k must be < off_above_k");
}

void EnvironmentProfile::validate() const {
  require_positive(sink_min_k, "sink_min_k");
  require_positive(sink_max_k, "sink_max_k");
  if (!(sink_min_k <= sink_max_k)) throw ValidationError("sink_min_k must be <= sink_max_k");
  require_positive(period_s, "period_s");
  require_finite(phase_rad, "phase_rad");
}

double EnvironmentProfile::sink_at(double t_s) const {
  const double amp = 0.5 * (sink_max_k - sink_min_k);
  return sink_mid_k() - amp * std::cos(two_pi * t_s / period_s + phase_rad);
}

double radiative_power(const ThermalNode& node, double box_temp_k, double env_temp_k) {
  node.validate();
  require_positive(box_temp_k, "box_temp_k");
  require_positive(env_temp_k, "env_temp_k");
  const double t4 = box_temp_k * box_temp_k * box_temp_k * box_temp_k;
  const double e4 = env_temp_k * env_temp_k * env_temp_k * env_temp_k;
  return node.mli_effective_emissivity * stefan_boltzmann_w_m2_k4 * node.radiating_area_m2 *
         (t4 - e4);
}

double steady_heater_power(const ThermalNode& node, double hold_temp_k, double env_temp_k) {
  const double required =
      std::max(0.0, radiative_power(node, hold_temp_k, env_temp_k) - node.internal_dissipation_w);
  if (required > node.heater_max_power_w) {
    std::ostringstream os;
    os << "heater undersized: holding " << hold_temp_k << " K against " << env_temp_k
       << " K requires " << required << " W but heater_max_power_w is "
       << node.heater_max_power_w << " W";
    throw UndersizedHeaterError(os.str(), required);
  }
  return required;
}

ThermalSummary simulate_thermal(const ThermalNode& node, const HeaterController& controller,
                                const EnvironmentProfile& env, double initial_temp_k,
                                double duration_s, double dt_s, const ThermalStepSink& sink) {
  node.validate();
  controller.validate();
  env.validate();
  require_positive(initial_temp_k, "initial_temp_k");
  require_non_negative(duration_s, "duration_s");
  require_positive(dt_s, "dt_s");

  ThermalSummary summary;
  summary.band_low_k = controller.on_below_k - 5.0;
  summary.band_high_k = controller.off_above_k + 5.0;
  summary.min_temp_k = initial_temp_k;
  summary.max_temp_k = initial_temp_k;
  summary.final_temp_k = initial_temp_k;

  double temp = initial_temp_k;
  bool heater_on = temp <= controller.on_below_k;
  const auto steps = static_cast<std::size_t>(std::ceil(duration_s / dt_s));
  std::size_t on_steps = 0, cold_steps = 0, cold_on = 0, warm_steps = 0, warm_on = 0;
  double net_energy_j = 0.0;

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt_s;
    const double env_temp = env.sink_at(t);
    const double heater = heater_on ? node.heater_max_power_w : 0.0;
    const double net_w = heater + node.internal_dissipation_w - radiative_power(node, temp, env_temp);
    const double delta = net_w * dt_s / node.heat_capacity_j_per_k;
    if (!(std::abs(delta) < 1.0)) {
      std::ostringstream os;
      os << "dt_s too large: per-step temperature change " << delta << " K at step " << i
         << " reaches 1 K";
      throw ValidationError(os.str());
    }
    temp += delta;
    net_energy_j += net_w * dt_s;
    summary.heater_energy_j += heater * dt_s;

    if (heater_on) ++on_steps;
    if (env_temp < env.sink_mid_k()) {
      ++cold_steps;
      if (heater_on) ++cold_on;
    } else {
      ++warm_steps;
      if (heater_on) ++warm_on;
    }

    summary.min_temp_k = std::min(summary.min_temp_k, temp);
    summary.max_temp_k = std::max(summary.max_temp_k, temp);
    if (temp < summary.band_low_k || temp > summary.band_high_k) summary.within_band = false;

    // Hysteresis: latch on at or below on_below, off at or above off_above.
    if (temp <= controller.on_below_k) heater_on = true;
    else if (temp >= controller.off_above_k) heater_on = false;

    if (sink) {
      ThermalStepRecord rec;
      rec.step_index = i;
      rec.time_s = t + dt_s;
      rec.box_temp_k = temp;
      rec.env_temp_k = env_temp;
      rec.heater_w = heater;
      rec.duty_so_far = static_cast<double>(on_steps) / static_cast<double>(i + 1);
      sink(rec);
    }
  }

  summary.final_temp_k = temp;
  summary.duty_cycle = steps ? static_cast<double>(on_steps) / static_cast<double>(steps) : 0.0;
  summary.duty_cold_half =
      cold_steps ? static_cast<double>(cold_on) / static_cast<double>(cold_steps) : 0.0;
  summary.duty_warm_half =
      warm_steps ? static_cast<double>(warm_on) / static_cast<double>(warm_steps) : 0.0;
  const double stored = node.heat_capacity_j_per_k * (temp - initial_temp_k);
  summary.energy_residual_rel =
      std::abs(stored - net_energy_j) / std::max(1.0, std::abs(summary.heater_energy_j));
  return summary;
}

}  // namespace warmbox

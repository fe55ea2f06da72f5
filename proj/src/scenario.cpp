#include "warmbox/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace warmbox {
namespace {

constexpr double gate_slack = 1e-12;
constexpr double quarter_turn = pi / 2.0;
constexpr double suspension_low_rad = -0.08726646259971647;  // -5 deg
constexpr double suspension_high_rad = 0.5235987755982988;   // +30 deg

}  // namespace

void RoverSection::validate() const {
  require_positive(total_mass_kg, "total_mass_kg");
  layout.validate();
}

void SuspensionSection::validate() const {
  geometry.validate();
  require_finite(height_command, "height_command");
}

void DriveSection::validate() const {
  require_positive(gear_ratio, "gear_ratio");
  drive_efficiency_model(*this);  // enforces the endpoint-calibration domain
  require_finite(cardan_phase_rad, "cardan_phase_rad");
  if (articulation_rad.empty()) throw ValidationError("articulation_rad must list every wheel");
  for (const auto& bends : articulation_rad) {
    if (bends.size() != 2)
      throw ValidationError("articulation_rad needs two bends per wheel (one dual-cardan pair)");
    for (double bend : bends) {
      require_finite(bend, "articulation bend");
      if (!(std::abs(bend) < pi / 2.0))
        throw ValidationError("articulation bend must satisfy |bend| < pi/2");
    }
  }
  if (comparison_gear_train.empty())
    throw ValidationError("comparison_gear_train must have at least one stage");
  for (const auto& stage : comparison_gear_train) stage.validate();
}

void SteeringSection::validate() const {
  capstan.validate();
  load_model.validate();
}

void TerrainSection::validate() const {
  require_positive(grid_spacing_m, "grid_spacing_m");
  require_positive(length_m, "length_m");
  require_positive(width_m, "width_m");
  if (kind == TerrainKind::plane) {
    require_finite(slope_rad, "slope_rad");
    if (!(std::abs(slope_rad) < pi / 3.0))
      throw ValidationError("slope_rad must satisfy |slope| < pi/3");
  } else {
    require_non_negative(amplitude_m, "amplitude_m");
    require_positive(wavelength_m, "wavelength_m");
    require_non_negative(roughness_amplitude_m, "roughness_amplitude_m");
    require_positive(roughness_wavelength_m, "roughness_wavelength_m");
  }
  require_non_negative(rolling_resistance, "rolling_resistance");
  for (const auto& patch : patches) patch.validate();
  require_positive(gravity_mps2, "gravity_mps2");
}

void RouteSection::validate() const {
  if (points_m.size() < 2) throw ValidationError("route needs at least two points");
  for (const Vec2& p : points_m) {
    require_finite(p.x, "route point x");
    require_finite(p.y, "route point y");
  }
  require_positive(speed_mps, "speed_mps");
  require_positive(step_m, "step_m");
}

void ThermalSection::validate() const {
  node.validate();
  controller.validate();
  environment.validate();
  require_positive(initial_temp_k, "initial_temp_k");
  require_non_negative(duration_s, "duration_s");
  require_positive(dt_s, "dt_s");
}

void WearSection::validate() const {
  coefficients.validate();
  initial.validate();
}

void CalibrationSection::validate() const {
  require_finite(slope_min_rad, "slope_min_rad");
  require_finite(slope_max_rad, "slope_max_rad");
  if (!(slope_min_rad <= slope_max_rad))
    throw ValidationError("slope range must be ordered");
  if (!(std::abs(slope_min_rad) < pi / 3.0 && std::abs(slope_max_rad) < pi / 3.0))
    throw ValidationError("calibration slopes must satisfy |slope| < pi/3");
  require_non_negative(rolling_resistance_min, "rolling_resistance_min");
  require_non_negative(rolling_resistance_max, "rolling_resistance_max");
  if (!(rolling_resistance_min <= rolling_resistance_max))
    throw ValidationError("rolling resistance range must be ordered");
}

void ScenarioConfig::validate() const {
  if (schema_version != 1) throw ValidationError("schema_version must be 1");
  if (name.empty()) throw ValidationError("name must be non-empty");
  rover.validate();
  suspension.validate();
  drive.validate();
  steering.validate();
  terrain.validate();
  route.validate();
  thermal.validate();
  wear.validate();
  calibration.validate();
  envelopes.validate();
  if (drive.articulation_rad.size() != rover.layout.legs_m.size())
    throw ValidationError("articulation_rad must list one bend pair per leg");
}

EfficiencyModel drive_efficiency_model(const DriveSection& drive) {
  return calibrate_efficiency(drive.neutral_efficiency, drive.worst_efficiency,
                              drive.worst_bend_rad);
}

DriveChain make_drive_chain(const DriveSection& drive) {
  return make_calibrated_chain(drive_efficiency_model(drive), drive.gear_ratio,
                               drive.cardan_phase_rad);
}

TerrainProfile make_terrain(const TerrainSection& terrain) {
  terrain.validate();
  if (terrain.kind == TerrainKind::plane) {
    PlaneTerrainParams params;
    params.grid_spacing_m = terrain.grid_spacing_m;
    params.length_m = terrain.length_m;
    params.width_m = terrain.width_m;
    params.slope_rad = terrain.slope_rad;
    params.rolling_resistance = terrain.rolling_resistance;
    params.patches = terrain.patches;
    params.gravity_mps2 = terrain.gravity_mps2;
    return make_plane_terrain(params);
  }
  RidgeTerrainParams params;
  params.grid_spacing_m = terrain.grid_spacing_m;
  params.length_m = terrain.length_m;
  params.width_m = terrain.width_m;
  params.amplitude_m = terrain.amplitude_m;
  params.wavelength_m = terrain.wavelength_m;
  params.roughness_amplitude_m = terrain.roughness_amplitude_m;
  params.roughness_wavelength_m = terrain.roughness_wavelength_m;
  params.rolling_resistance = terrain.rolling_resistance;
  params.patches = terrain.patches;
  params.gravity_mps2 = terrain.gravity_mps2;
  return make_ridge_terrain(params, terrain.seed);
}

Route make_route(const RouteSection& route) {
  route.validate();
  Route r;
  r.points_m = route.points_m;
  r.speed_mps = route.speed_mps;
  r.validate();
  return r;
}

TraverseSetup make_traverse_setup(const ScenarioConfig& config) {
  TraverseSetup setup;
  setup.layout = config.rover.layout;
  setup.total_mass_kg = config.rover.total_mass_kg;
  setup.chain = make_drive_chain(config.drive);
  setup.articulation_rad = config.drive.articulation_rad;
  setup.capstan = config.steering.capstan;
  setup.steering_load = config.steering.load_model;
  setup.wear = config.wear.coefficients;
  setup.initial_wear = config.wear.initial;
  setup.envelopes = config.envelopes;
  setup.step_m = config.route.step_m;
  return setup;
}

std::vector<GateReport> evaluate_gates(const ScenarioConfig& config) {
  std::vector<GateReport> gates;

  GateReport radius;
  radius.name = "wheel_radius_max";
  radius.observed = config.rover.layout.wheel_radius_m;
  radius.bound = 0.35;
  radius.pass = config.rover.layout.wheel_radius_m <= 0.35 + gate_slack;
  radius.detail = "assembled wheel radius must not exceed 0.35 m";
  gates.push_back(radius);

  GateReport steer;
  steer.name = "steer_range";
  const auto& limits = config.steering.capstan.limits;
  steer.observed = std::min(limits.max_rad, -limits.min_rad);
  steer.bound = quarter_turn;
  steer.pass = steer.observed >= quarter_turn - gate_slack;
  steer.detail = "steer limits must cover +/-90 deg";
  gates.push_back(steer);

  GateReport susp;
  susp.name = "suspension_range";
  const auto& geo = config.suspension.geometry;
  const double shortfall = std::max(0.0, geo.angle_min_rad - suspension_low_rad) +
                           std::max(0.0, suspension_high_rad - geo.angle_max_rad);
  susp.observed = shortfall;
  susp.bound = 0.0;
  susp.pass = shortfall <= gate_slack;
  susp.detail = "arm angle range must cover [-5 deg, +30 deg]";
  gates.push_back(susp);

  GateReport reach_gate;
  reach_gate.name = "max_reach";
  reach_gate.bound = config.envelopes.max_reach_m;
  reach_gate.detail = "anchor-to-wheel reach over the angle range";
  try {
    reach_gate.observed = max_reach(geo);
    reach_gate.pass = reach_gate.observed <= config.envelopes.max_reach_m + gate_slack;
  } catch (const ValidationError&) {
    // Geometry itself is invalid; full validation will raise the real error.
    reach_gate.observed = 0.0;
    reach_gate.pass = true;
    reach_gate.detail = "not evaluated: geometry invalid";
  }
  gates.push_back(reach_gate);

  return gates;
}

void require_gates(const ScenarioConfig& config) {
  for (const GateReport& gate : evaluate_gates(config)) {
    if (!gate.pass)
      throw ConfigError("requirement gate '" + gate.name + "' failed: " + gate.detail +
                            " (observed " + std::to_string(gate.observed) + ", bound " +
                            std::to_string(gate.bound) + ")",
                        gate.name);
  }
}

std::vector<std::string> preset_names() { return {"flight", "breadboard_1_3", "paper_nominal"}; }

std::optional<Preset> preset_from_name(const std::string& name) {
  if (name == "flight") return Preset::flight;
  if (name == "breadboard_1_3") return Preset::breadboard_1_3;
  if (name == "paper_nominal") return Preset::paper_nominal;
  return std::nullopt;
}

namespace {

ScenarioConfig flight_config() {
  ScenarioConfig cfg;
  cfg.schema_version = 1;
  cfg.name = "flight";

  cfg.rover.total_mass_kg = 230.0;
  cfg.rover.layout.legs_m = {{0.6, 0.5}, {0.6, -0.5}, {-0.6, 0.5}, {-0.6, -0.5}};
  cfg.rover.layout.wheel_radius_m = 0.35;
  cfg.rover.layout.wheel_width_m = 0.11;
  cfg.rover.layout.com_offset_m = {0.0, 0.0};
  cfg.rover.layout.com_height_m = 0.35;

  cfg.suspension.geometry.arm_length_m = 0.55;
  cfg.suspension.geometry.pivot_vertical_separation_m = 0.18;
  cfg.suspension.geometry.chassis_anchor_m = {0.0, 0.0, 0.0};
  cfg.suspension.geometry.upright_offset_m = {0.08, 0.0, 0.12};
  cfg.suspension.geometry.neutral_angle_rad = 0.2;
  cfg.suspension.geometry.angle_min_rad = -0.15;
  cfg.suspension.geometry.angle_max_rad = 0.55;
  cfg.suspension.geometry.spring_rate_nm_per_rad = 2000.0;
  cfg.suspension.geometry.spring_free_angle_rad = 0.05;
  cfg.suspension.geometry.actuator_gain_rad = 0.05;
  cfg.suspension.height_command = 0.0;

  cfg.drive.gear_ratio = 25.0;
  cfg.drive.neutral_efficiency = 0.99;
  cfg.drive.worst_efficiency = 0.43;
  cfg.drive.worst_bend_rad = 1.1344640137963142;  // 65 deg
  cfg.drive.cardan_phase_rad = 0.0;
  cfg.drive.articulation_rad = {{0.2, -0.2}, {0.2, -0.2}, {0.2, -0.2}, {0.2, -0.2}};
  cfg.drive.comparison_gear_train = {{1.5, 0.92}, {2.0, 0.92}};

  cfg.steering.capstan.input_drum_radius_m = 0.02;
  cfg.steering.capstan.output_drum_radius_m = 0.06;
  cfg.steering.capstan.wrap_angle_rad = two_pi;
  cfg.steering.capstan.friction_coeff = 0.3;
  cfg.steering.capstan.pretension_n = 200.0;
  cfg.steering.capstan.nominal_efficiency = 0.91;
  cfg.steering.capstan.limits.min_rad = -pi / 2.0;
  cfg.steering.capstan.limits.max_rad = pi / 2.0;
  cfg.steering.load_model.scrub_coeff = 0.65;
  cfg.steering.load_model.contact_offset_m = 0.0785;

  cfg.terrain.kind = TerrainKind::plane;
  cfg.terrain.grid_spacing_m = 1.0;
  cfg.terrain.length_m = 1010.0;
  cfg.terrain.width_m = 20.0;
  cfg.terrain.slope_rad = 0.0;
  cfg.terrain.rolling_resistance = 0.38;
  cfg.terrain.gravity_mps2 = 9.81;
  cfg.terrain.seed = 42;

  cfg.route.points_m = {{5.0, 0.0}, {1005.0, 0.0}};
  cfg.route.speed_mps = 0.1;
  cfg.route.step_m = 0.1;

  cfg.thermal.node.heat_capacity_j_per_k = 9000.0;
  cfg.thermal.node.mli_effective_emissivity = 0.03;
  cfg.thermal.node.radiating_area_m2 = 0.5;
  cfg.thermal.node.heater_max_power_w = 30.0;
  cfg.thermal.node.internal_dissipation_w = 1.0;
  cfg.thermal.controller.on_below_k = 395.15;
  cfg.thermal.controller.off_above_k = 399.15;
  cfg.thermal.environment.sink_min_k = 93.15;
  cfg.thermal.environment.sink_max_k = 393.15;
  cfg.thermal.environment.period_s = 2551443.0;
  cfg.thermal.environment.phase_rad = 0.0;
  cfg.thermal.initial_temp_k = 397.0;
  cfg.thermal.duration_s = 2551443.0;
  cfg.thermal.dt_s = 60.0;

  cfg.wear.coefficients.per_km = 6.0e-4;
  cfg.wear.coefficients.per_steer_cycle = 1.0e-7;
  cfg.wear.initial = WearState{};

  cfg.calibration.slope_min_rad = -0.03490658503988659;  // -2 deg
  cfg.calibration.slope_max_rad = 0.03490658503988659;
  cfg.calibration.rolling_resistance_min = 0.20;
  cfg.calibration.rolling_resistance_max = 0.39;

  cfg.envelopes = DesignEnvelopes{};
  return cfg;
}

ScenarioConfig paper_nominal_config() {
  ScenarioConfig cfg = flight_config();
  cfg.name = "paper_nominal";
  cfg.terrain.kind = TerrainKind::ridge;
  cfg.terrain.length_m = 50020.0;
  cfg.terrain.width_m = 20.0;
  cfg.terrain.amplitude_m = 2.0;
  cfg.terrain.wavelength_m = 200.0;
  cfg.terrain.roughness_amplitude_m = 0.01;
  cfg.terrain.roughness_wavelength_m = 50.0;
  cfg.route.points_m = {{10.0, 0.0}, {50010.0, 0.0}};
  cfg.route.step_m = 1.0;
  return cfg;
}

}  // namespace

ScenarioConfig preset_config(Preset preset) {
  switch (preset) {
    case Preset::flight:
      return flight_config();
    case Preset::paper_nominal:
      return paper_nominal_config();
    case Preset::breadboard_1_3: {
      ScenarioConfig cfg = scale_config(flight_config(), 1.0 / 3.0);
      cfg.name = "breadboard_1_3";
      return cfg;
    }
  }
  throw ValidationError("unknown preset");
}

ScenarioConfig scale_config(const ScenarioConfig& config, double factor) {
  require_positive(factor, "factor");
  const double f = factor;
  const double f2 = f * f;
  const double f3 = f2 * f;
  const double f4 = f2 * f2;

  ScenarioConfig out = config;

  out.rover.total_mass_kg *= f3;
  for (Vec2& leg : out.rover.layout.legs_m) leg = f * leg;
  out.rover.layout.wheel_radius_m *= f;
  out.rover.layout.wheel_width_m *= f;
  out.rover.layout.com_offset_m = f * out.rover.layout.com_offset_m;
  out.rover.layout.com_height_m *= f;

  WishboneGeometry& geo = out.suspension.geometry;
  geo.arm_length_m *= f;
  geo.pivot_vertical_separation_m *= f;
  geo.chassis_anchor_m = f * geo.chassis_anchor_m;
  geo.upright_offset_m = f * geo.upright_offset_m;
  geo.spring_rate_nm_per_rad *= f4;

  out.steering.capstan.input_drum_radius_m *= f;
  out.steering.capstan.output_drum_radius_m *= f;
  out.steering.capstan.pretension_n *= f3;
  out.steering.load_model.contact_offset_m *= f;

  out.terrain.grid_spacing_m *= f;
  out.terrain.length_m *= f;
  out.terrain.width_m *= f;
  out.terrain.amplitude_m *= f;
  out.terrain.wavelength_m *= f;
  out.terrain.roughness_amplitude_m *= f;
  out.terrain.roughness_wavelength_m *= f;
  for (TerrainPatch& patch : out.terrain.patches) {
    patch.x_min_m *= f;
    patch.x_max_m *= f;
    patch.y_min_m *= f;
    patch.y_max_m *= f;
  }

  for (Vec2& p : out.route.points_m) p = f * p;
  out.route.speed_mps *= f;
  out.route.step_m *= f;

  out.thermal.node.heat_capacity_j_per_k *= f3;
  out.thermal.node.radiating_area_m2 *= f2;
  out.thermal.node.heater_max_power_w *= f2;
  out.thermal.node.internal_dissipation_w *= f2;

  return out;
}

}  // namespace warmbox

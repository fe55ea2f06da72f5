#include "warmbox/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace warmbox {
namespace {

using nlohmann::ordered_json;

// Tracks consumed keys so finish() can reject anything outside the schema.
class ObjectReader {
 public:
  ObjectReader(const ordered_json& j, std::string path) : obj_(&j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  const ordered_json& field(const std::string& key) {
    const auto it = obj_->find(key);
    if (it == obj_->end()) throw ConfigError(path_ + ": missing key '" + key + "'");
    seen_.insert(key);
    return *it;
  }

  double num(const std::string& key) {
    const ordered_json& v = field(key);
    if (!v.is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key) {
    const ordered_json& v = field(key);
    if (!v.is_number_integer()) throw ConfigError(path_ + "." + key + ": expected an integer");
    return v.get<int>();
  }

  std::uint64_t uinteger(const std::string& key) {
    const ordered_json& v = field(key);
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
      throw ConfigError(path_ + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string str(const std::string& key) {
    const ordered_json& v = field(key);
    if (!v.is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
    return v.get<std::string>();
  }

  const ordered_json& array(const std::string& key) {
    const ordered_json& v = field(key);
    if (!v.is_array()) throw ConfigError(path_ + "." + key + ": expected an array");
    return v;
  }

  std::string child_path(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = obj_->begin(); it != obj_->end(); ++it)
      if (!seen_.contains(it.key()))
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const ordered_json* obj_;
  std::string path_;
  std::set<std::string> seen_;
};

double number_at(const ordered_json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

Vec2 vec2_from(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path + ": expected [x, y]");
  return {number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]")};
}

Vec3 vec3_from(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(path + ": expected [x, y, z]");
  return {number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]"),
          number_at(v[2], path + "[2]")};
}

ordered_json vec2_json(Vec2 v) { return ordered_json::array({v.x, v.y}); }
ordered_json vec3_json(Vec3 v) { return ordered_json::array({v.x, v.y, v.z}); }

RoverSection rover_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  RoverSection out;
  out.total_mass_kg = r.num("total_mass_kg");
  const ordered_json& legs = r.array("legs_m");
  for (std::size_t i = 0; i < legs.size(); ++i)
    out.layout.legs_m.push_back(vec2_from(legs[i], path + ".legs_m[" + std::to_string(i) + "]"));
  out.layout.wheel_radius_m = r.num("wheel_radius_m");
  out.layout.wheel_width_m = r.num("wheel_width_m");
  out.layout.com_offset_m = vec2_from(r.field("com_offset_m"), path + ".com_offset_m");
  out.layout.com_height_m = r.num("com_height_m");
  r.finish();
  return out;
}

ordered_json rover_json(const RoverSection& s) {
  ordered_json j;
  j["total_mass_kg"] = s.total_mass_kg;
  ordered_json legs = ordered_json::array();
  for (Vec2 leg : s.layout.legs_m) legs.push_back(vec2_json(leg));
  j["legs_m"] = legs;
  j["wheel_radius_m"] = s.layout.wheel_radius_m;
  j["wheel_width_m"] = s.layout.wheel_width_m;
  j["com_offset_m"] = vec2_json(s.layout.com_offset_m);
  j["com_height_m"] = s.layout.com_height_m;
  return j;
}

SuspensionSection suspension_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  SuspensionSection out;
  out.geometry.arm_length_m = r.num("arm_length_m");
  out.geometry.pivot_vertical_separation_m = r.num("pivot_vertical_separation_m");
  out.geometry.chassis_anchor_m = vec3_from(r.field("chassis_anchor_m"), path + ".chassis_anchor_m");
  out.geometry.upright_offset_m = vec3_from(r.field("upright_offset_m"), path + ".upright_offset_m");
  out.geometry.neutral_angle_rad = r.num("neutral_angle_rad");
  out.geometry.angle_min_rad = r.num("angle_min_rad");
  out.geometry.angle_max_rad = r.num("angle_max_rad");
  out.geometry.spring_rate_nm_per_rad = r.num("spring_rate_nm_per_rad");
  out.geometry.spring_free_angle_rad = r.num("spring_free_angle_rad");
  out.geometry.actuator_gain_rad = r.num("actuator_gain_rad");
  out.height_command = r.num("height_command");
  r.finish();
  return out;
}

ordered_json suspension_json(const SuspensionSection& s) {
  ordered_json j;
  j["arm_length_m"] = s.geometry.arm_length_m;
  j["pivot_vertical_separation_m"] = s.geometry.pivot_vertical_separation_m;
  j["chassis_anchor_m"] = vec3_json(s.geometry.chassis_anchor_m);
  j["upright_offset_m"] = vec3_json(s.geometry.upright_offset_m);
  j["neutral_angle_rad"] = s.geometry.neutral_angle_rad;
  j["angle_min_rad"] = s.geometry.angle_min_rad;
  j["angle_max_rad"] = s.geometry.angle_max_rad;
  j["spring_rate_nm_per_rad"] = s.geometry.spring_rate_nm_per_rad;
  j["spring_free_angle_rad"] = s.geometry.spring_free_angle_rad;
  j["actuator_gain_rad"] = s.geometry.actuator_gain_rad;
  j["height_command"] = s.height_command;
  return j;
}

DriveSection drive_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  DriveSection out;
  out.gear_ratio = r.num("gear_ratio");
  out.neutral_efficiency = r.num("neutral_efficiency");
  out.worst_efficiency = r.num("worst_efficiency");
  out.worst_bend_rad = r.num("worst_bend_rad");
  out.cardan_phase_rad = r.num("cardan_phase_rad");
  const ordered_json& art = r.array("articulation_rad");
  for (std::size_t i = 0; i < art.size(); ++i) {
    const std::string wheel_path = path + ".articulation_rad[" + std::to_string(i) + "]";
    if (!art[i].is_array()) throw ConfigError(wheel_path + ": expected an array of bends");
    std::vector<double> bends;
    for (std::size_t k = 0; k < art[i].size(); ++k)
      bends.push_back(number_at(art[i][k], wheel_path + "[" + std::to_string(k) + "]"));
    out.articulation_rad.push_back(std::move(bends));
  }
  const ordered_json& train = r.array("comparison_gear_train");
  for (std::size_t i = 0; i < train.size(); ++i) {
    ObjectReader stage(train[i], path + ".comparison_gear_train[" + std::to_string(i) + "]");
    GearStage gs;
    gs.ratio = stage.num("ratio");
    gs.mesh_efficiency = stage.num("mesh_efficiency");
    stage.finish();
    out.comparison_gear_train.push_back(gs);
  }
  r.finish();
  return out;
}

ordered_json drive_json(const DriveSection& s) {
  ordered_json j;
  j["gear_ratio"] = s.gear_ratio;
  j["neutral_efficiency"] = s.neutral_efficiency;
  j["worst_efficiency"] = s.worst_efficiency;
  j["worst_bend_rad"] = s.worst_bend_rad;
  j["cardan_phase_rad"] = s.cardan_phase_rad;
  ordered_json art = ordered_json::array();
  for (const auto& bends : s.articulation_rad) art.push_back(bends);
  j["articulation_rad"] = art;
  ordered_json train = ordered_json::array();
  for (const GearStage& gs : s.comparison_gear_train) {
    ordered_json stage;
    stage["ratio"] = gs.ratio;
    stage["mesh_efficiency"] = gs.mesh_efficiency;
    train.push_back(stage);
  }
  j["comparison_gear_train"] = train;
  return j;
}

SteeringSection steering_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  SteeringSection out;
  out.capstan.input_drum_radius_m = r.num("input_drum_radius_m");
  out.capstan.output_drum_radius_m = r.num("output_drum_radius_m");
  out.capstan.wrap_angle_rad = r.num("wrap_angle_rad");
  out.capstan.friction_coeff = r.num("friction_coeff");
  out.capstan.pretension_n = r.num("pretension_n");
  out.capstan.nominal_efficiency = r.num("nominal_efficiency");
  out.capstan.limits.min_rad = r.num("steer_min_rad");
  out.capstan.limits.max_rad = r.num("steer_max_rad");
  out.load_model.scrub_coeff = r.num("scrub_coeff");
  out.load_model.contact_offset_m = r.num("contact_offset_m");
  r.finish();
  return out;
}

ordered_json steering_json(const SteeringSection& s) {
  ordered_json j;
  j["input_drum_radius_m"] = s.capstan.input_drum_radius_m;
  j["output_drum_radius_m"] = s.capstan.output_drum_radius_m;
  j["wrap_angle_rad"] = s.capstan.wrap_angle_rad;
  j["friction_coeff"] = s.capstan.friction_coeff;
  j["pretension_n"] = s.capstan.pretension_n;
  j["nominal_efficiency"] = s.capstan.nominal_efficiency;
  j["steer_min_rad"] = s.capstan.limits.min_rad;
  j["steer_max_rad"] = s.capstan.limits.max_rad;
  j["scrub_coeff"] = s.load_model.scrub_coeff;
  j["contact_offset_m"] = s.load_model.contact_offset_m;
  return j;
}

TerrainSection terrain_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  TerrainSection out;
  const std::string kind = r.str("kind");
  if (kind == "plane") {
    out.kind = TerrainKind::plane;
  } else if (kind == "ridge") {
    out.kind = TerrainKind::ridge;
  } else {
    throw ConfigError(path + ".kind: expected \"plane\" or \"ridge\"");
  }
  out.grid_spacing_m = r.num("grid_spacing_m");
  out.length_m = r.num("length_m");
  out.width_m = r.num("width_m");
  if (out.kind == TerrainKind::plane) {
    out.slope_rad = r.num("slope_rad");
  } else {
    out.amplitude_m = r.num("amplitude_m");
    out.wavelength_m = r.num("wavelength_m");
    out.roughness_amplitude_m = r.num("roughness_amplitude_m");
    out.roughness_wavelength_m = r.num("roughness_wavelength_m");
  }
  out.rolling_resistance = r.num("rolling_resistance");
  const ordered_json& patches = r.array("patches");
  for (std::size_t i = 0; i < patches.size(); ++i) {
    ObjectReader pr(patches[i], path + ".patches[" + std::to_string(i) + "]");
    TerrainPatch patch;
    patch.x_min_m = pr.num("x_min_m");
    patch.x_max_m = pr.num("x_max_m");
    patch.y_min_m = pr.num("y_min_m");
    patch.y_max_m = pr.num("y_max_m");
    patch.rolling_resistance = pr.num("rolling_resistance");
    pr.finish();
    out.patches.push_back(patch);
  }
  out.gravity_mps2 = r.num("gravity_mps2");
  out.seed = r.uinteger("seed");
  r.finish();
  return out;
}

ordered_json terrain_json(const TerrainSection& s) {
  ordered_json j;
  j["kind"] = s.kind == TerrainKind::plane ? "plane" : "ridge";
  j["grid_spacing_m"] = s.grid_spacing_m;
  j["length_m"] = s.length_m;
  j["width_m"] = s.width_m;
  if (s.kind == TerrainKind::plane) {
    j["slope_rad"] = s.slope_rad;
  } else {
    j["amplitude_m"] = s.amplitude_m;
    j["wavelength_m"] = s.wavelength_m;
    j["roughness_amplitude_m"] = s.roughness_amplitude_m;
    j["roughness_wavelength_m"] = s.roughness_wavelength_m;
  }
  j["rolling_resistance"] = s.rolling_resistance;
  ordered_json patches = ordered_json::array();
  for (const TerrainPatch& patch : s.patches) {
    ordered_json p;
    p["x_min_m"] = patch.x_min_m;
    p["x_max_m"] = patch.x_max_m;
    p["y_min_m"] = patch.y_min_m;
    p["y_max_m"] = patch.y_max_m;
    p["rolling_resistance"] = patch.rolling_resistance;
    patches.push_back(p);
  }
  j["patches"] = patches;
  j["gravity_mps2"] = s.gravity_mps2;
  j["seed"] = s.seed;
  return j;
}

RouteSection route_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  RouteSection out;
  const ordered_json& pts = r.array("points_m");
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.points_m.push_back(vec2_from(pts[i], path + ".points_m[" + std::to_string(i) + "]"));
  out.speed_mps = r.num("speed_mps");
  out.step_m = r.num("step_m");
  r.finish();
  return out;
}

ordered_json route_json(const RouteSection& s) {
  ordered_json j;
  ordered_json pts = ordered_json::array();
  for (Vec2 p : s.points_m) pts.push_back(vec2_json(p));
  j["points_m"] = pts;
  j["speed_mps"] = s.speed_mps;
  j["step_m"] = s.step_m;
  return j;
}

ThermalSection thermal_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  ThermalSection out;
  out.node.heat_capacity_j_per_k = r.num("heat_capacity_j_per_k");
  out.node.mli_effective_emissivity = r.num("mli_effective_emissivity");
  out.node.radiating_area_m2 = r.num("radiating_area_m2");
  out.node.heater_max_power_w = r.num("heater_max_power_w");
  out.node.internal_dissipation_w = r.num("internal_dissipation_w");
  out.controller.on_below_k = r.num("on_below_k");
  out.controller.off_above_k = r.num("off_above_k");
  out.environment.sink_min_k = r.num("sink_min_k");
  out.environment.sink_max_k = r.num("sink_max_k");
  out.environment.period_s = r.num("period_s");
  out.environment.phase_rad = r.num("phase_rad");
  out.initial_temp_k = r.num("initial_temp_k");
  out.duration_s = r.num("duration_s");
  out.dt_s = r.num("dt_s");
  r.finish();
  return out;
}

ordered_json thermal_json(const ThermalSection& s) {
  ordered_json j;
  j["heat_capacity_j_per_k"] = s.node.heat_capacity_j_per_k;
  j["mli_effective_emissivity"] = s.node.mli_effective_emissivity;
  j["radiating_area_m2"] = s.node.radiating_area_m2;
  j["heater_max_power_w"] = s.node.heater_max_power_w;
  j["internal_dissipation_w"] = s.node.internal_dissipation_w;
  j["on_below_k"] = s.controller.on_below_k;
  j["off_above_k"] = s.controller.off_above_k;
  j["sink_min_k"] = s.environment.sink_min_k;
  j["sink_max_k"] = s.environment.sink_max_k;
  j["period_s"] = s.environment.period_s;
  j["phase_rad"] = s.environment.phase_rad;
  j["initial_temp_k"] = s.initial_temp_k;
  j["duration_s"] = s.duration_s;
  j["dt_s"] = s.dt_s;
  return j;
}

WearSection wear_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  WearSection out;
  out.coefficients.per_km = r.num("per_km");
  out.coefficients.per_steer_cycle = r.num("per_steer_cycle");
  out.initial.derating = r.num("initial_derating");
  out.initial.odometer_km = r.num("initial_odometer_km");
  out.initial.steer_cycles = r.num("initial_steer_cycles");
  out.initial.cardan_bend_exposure_rad = r.num("initial_bend_exposure_rad");
  r.finish();
  return out;
}

ordered_json wear_json(const WearSection& s) {
  ordered_json j;
  j["per_km"] = s.coefficients.per_km;
  j["per_steer_cycle"] = s.coefficients.per_steer_cycle;
  j["initial_derating"] = s.initial.derating;
  j["initial_odometer_km"] = s.initial.odometer_km;
  j["initial_steer_cycles"] = s.initial.steer_cycles;
  j["initial_bend_exposure_rad"] = s.initial.cardan_bend_exposure_rad;
  return j;
}

CalibrationSection calibration_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  CalibrationSection out;
  out.slope_min_rad = r.num("slope_min_rad");
  out.slope_max_rad = r.num("slope_max_rad");
  out.rolling_resistance_min = r.num("rolling_resistance_min");
  out.rolling_resistance_max = r.num("rolling_resistance_max");
  r.finish();
  return out;
}

ordered_json calibration_json(const CalibrationSection& s) {
  ordered_json j;
  j["slope_min_rad"] = s.slope_min_rad;
  j["slope_max_rad"] = s.slope_max_rad;
  j["rolling_resistance_min"] = s.rolling_resistance_min;
  j["rolling_resistance_max"] = s.rolling_resistance_max;
  return j;
}

DesignEnvelopes envelopes_from(const ordered_json& j, const std::string& path) {
  ObjectReader r(j, path);
  DesignEnvelopes out;
  out.wheel_torque_min_nm = r.num("wheel_torque_min_nm");
  out.wheel_torque_max_nm = r.num("wheel_torque_max_nm");
  out.steering_torque_min_nm = r.num("steering_torque_min_nm");
  out.steering_torque_max_nm = r.num("steering_torque_max_nm");
  out.chain_efficiency_min = r.num("chain_efficiency_min");
  out.chain_efficiency_max = r.num("chain_efficiency_max");
  out.steering_efficiency = r.num("steering_efficiency");
  out.architecture_mass_kg = r.num("architecture_mass_kg");
  out.max_reach_m = r.num("max_reach_m");
  out.traverse_requirement_km = r.num("traverse_requirement_km");
  out.efficiency_retention_min = r.num("efficiency_retention_min");
  r.finish();
  return out;
}

ordered_json envelopes_json(const DesignEnvelopes& s) {
  ordered_json j;
  j["wheel_torque_min_nm"] = s.wheel_torque_min_nm;
  j["wheel_torque_max_nm"] = s.wheel_torque_max_nm;
  j["steering_torque_min_nm"] = s.steering_torque_min_nm;
  j["steering_torque_max_nm"] = s.steering_torque_max_nm;
  j["chain_efficiency_min"] = s.chain_efficiency_min;
  j["chain_efficiency_max"] = s.chain_efficiency_max;
  j["steering_efficiency"] = s.steering_efficiency;
  j["architecture_mass_kg"] = s.architecture_mass_kg;
  j["max_reach_m"] = s.max_reach_m;
  j["traverse_requirement_km"] = s.traverse_requirement_km;
  j["efficiency_retention_min"] = s.efficiency_retention_min;
  return j;
}

}  // namespace

ordered_json config_to_json(const ScenarioConfig& config) {
  ordered_json j;
  j["schema_version"] = config.schema_version;
  j["name"] = config.name;
  j["rover"] = rover_json(config.rover);
  j["suspension"] = suspension_json(config.suspension);
  j["drive"] = drive_json(config.drive);
  j["steering"] = steering_json(config.steering);
  j["terrain"] = terrain_json(config.terrain);
  j["route"] = route_json(config.route);
  j["thermal"] = thermal_json(config.thermal);
  j["wear"] = wear_json(config.wear);
  j["calibration"] = calibration_json(config.calibration);
  j["envelopes"] = envelopes_json(config.envelopes);
  return j;
}

ScenarioConfig config_from_json(const ordered_json& j) {
  ObjectReader r(j, "config");
  ScenarioConfig out;
  out.schema_version = r.integer("schema_version");
  if (out.schema_version != 1)
    throw ConfigError("config.schema_version: expected 1, got " +
                      std::to_string(out.schema_version));
  out.name = r.str("name");
  out.rover = rover_from(r.field("rover"), "config.rover");
  out.suspension = suspension_from(r.field("suspension"), "config.suspension");
  out.drive = drive_from(r.field("drive"), "config.drive");
  out.steering = steering_from(r.field("steering"), "config.steering");
  out.terrain = terrain_from(r.field("terrain"), "config.terrain");
  out.route = route_from(r.field("route"), "config.route");
  out.thermal = thermal_from(r.field("thermal"), "config.thermal");
  out.wear = wear_from(r.field("wear"), "config.wear");
  out.calibration = calibration_from(r.field("calibration"), "config.calibration");
  out.envelopes = envelopes_from(r.field("envelopes"), "config.envelopes");
  r.finish();
  return out;
}

ScenarioConfig parse_scenario_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Recover line/column from the byte offset for a usable message.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  ScenarioConfig config = config_from_json(doc);
  require_gates(config);
  try {
    config.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return config;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << config_to_json(config).dump(2) << '\n';
}

void apply_sweep_value(ordered_json& document, const std::string& parameter_path, double value) {
  if (parameter_path.empty())
    throw SweepPathError("empty parameter path", "", "schema_version,name,rover,...");

  std::vector<std::string> segments;
  std::string::size_type start = 0;
  while (true) {
    const auto dot = parameter_path.find('.', start);
    segments.push_back(parameter_path.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }

  const auto keys_of = [](const ordered_json& node) {
    std::string keys;
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!keys.empty()) keys += ",";
        keys += it.key();
      }
    } else if (node.is_array()) {
      keys = "indices 0.." + std::to_string(node.size() > 0 ? node.size() - 1 : 0);
    }
    return keys;
  };

  ordered_json* node = &document;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string& seg = segments[i];
    if (node->is_object()) {
      const auto it = node->find(seg);
      if (it == node->end())
        throw SweepPathError("no key '" + seg + "' in parameter path '" + parameter_path + "'",
                             seg, keys_of(*node));
      node = &*it;
    } else if (node->is_array()) {
      if (seg.empty() || seg.find_first_not_of("0123456789") != std::string::npos)
        throw SweepPathError("segment '" + seg + "' must be an array index in '" +
                                 parameter_path + "'",
                             seg, keys_of(*node));
      const std::size_t idx = std::stoul(seg);
      if (idx >= node->size())
        throw SweepPathError("index " + seg + " out of range in '" + parameter_path + "'", seg,
                             keys_of(*node));
      node = &(*node)[idx];
    } else {
      throw SweepPathError("segment '" + segments[i - 1] + "' is a leaf; cannot descend into '" +
                               seg + "'",
                           seg, "");
    }
  }
  if (!node->is_number())
    throw SweepPathError("parameter path '" + parameter_path + "' must address a numeric field",
                         segments.back(), keys_of(*node));
  if (node->is_number_integer() || node->is_number_unsigned()) {
    const auto as_int = static_cast<std::int64_t>(value);
    if (static_cast<double>(as_int) == value) {
      *node = as_int;
      return;
    }
  }
  *node = value;
}

}  // namespace warmbox

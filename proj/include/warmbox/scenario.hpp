#pragma once

// Scenario configuration: the complete, validated input for one simulation
// run (rover, drive, steering, suspension, terrain, route, thermal, wear,
// calibration ranges, design envelopes), plus requirement gates, shipped
// presets, and the geometric-similitude scaling transform.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warmbox/errors.hpp"
#include "warmbox/locomotion.hpp"
#include "warmbox/steering.hpp"
#include "warmbox/suspension.hpp"
#include "warmbox/terrain.hpp"
#include "warmbox/thermal.hpp"
#include "warmbox/transmission.hpp"
#include "warmbox/traverse.hpp"

namespace warmbox {

struct RoverSection {
  double total_mass_kg = 0.0;
  RoverLayout layout;

  void validate() const;
};

struct SuspensionSection {
  WishboneGeometry geometry;
  double height_command = 0.0;  // actuator command applied for the run

  void validate() const;
};

struct DriveSection {
  double gear_ratio = 1.0;         // total motor-to-wheel reduction, > 0
  double neutral_efficiency = 1.0; // chain efficiency at zero articulation
  double worst_efficiency = 1.0;   // chain efficiency at the worst bend
  double worst_bend_rad = 0.0;     // bend at which worst_efficiency applies
  double cardan_phase_rad = 0.0;
  std::vector<std::vector<double>> articulation_rad;  // [wheel][joint]
  std::vector<GearStage> comparison_gear_train;       // steering trade study

  void validate() const;
};

struct SteeringSection {
  CapstanDrive capstan;
  SteeringLoadModel load_model;

  void validate() const;
};

enum class TerrainKind { plane, ridge };

struct TerrainSection {
  TerrainKind kind = TerrainKind::plane;
  double grid_spacing_m = 1.0;
  double length_m = 100.0;
  double width_m = 20.0;
  double slope_rad = 0.0;              // plane only
  double amplitude_m = 0.0;            // ridge only
  double wavelength_m = 1.0;           // ridge only
  double roughness_amplitude_m = 0.0;  // ridge only
  double roughness_wavelength_m = 1.0; // ridge only
  double rolling_resistance = 0.0;
  std::vector<TerrainPatch> patches;
  double gravity_mps2 = 9.81;
  std::uint64_t seed = 0;  // governs synthetic roughness only

  void validate() const;
};

struct RouteSection {
  std::vector<Vec2> points_m;
  double speed_mps = 0.0;
  double step_m = 0.1;

  void validate() const;
};

struct ThermalSection {
  ThermalNode node;
  HeaterController controller;
  EnvironmentProfile environment;
  double initial_temp_k = 0.0;
  double duration_s = 0.0;
  double dt_s = 1.0;

  void validate() const;
};

struct WearSection {
  WearCoefficients coefficients;
  WearState initial;

  void validate() const;
};

// Declared operating ranges the torque envelopes are certified over; the
// calibration sweep samples these bounds.
struct CalibrationSection {
  double slope_min_rad = 0.0;
  double slope_max_rad = 0.0;
  double rolling_resistance_min = 0.0;
  double rolling_resistance_max = 0.0;

  void validate() const;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name;
  RoverSection rover;
  SuspensionSection suspension;
  DriveSection drive;
  SteeringSection steering;
  TerrainSection terrain;
  RouteSection route;
  ThermalSection thermal;
  WearSection wear;
  CalibrationSection calibration;
  DesignEnvelopes envelopes;

  void validate() const;
};

EfficiencyModel drive_efficiency_model(const DriveSection& drive);
DriveChain make_drive_chain(const DriveSection& drive);
TerrainProfile make_terrain(const TerrainSection& terrain);
Route make_route(const RouteSection& route);
TraverseSetup make_traverse_setup(const ScenarioConfig& config);

// Requirement gates checked at load. A failing gate is a configuration
// defect, never silently fixed.
struct GateReport {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double bound = 0.0;
  std::string detail;
};

// Evaluates every gate: wheel_radius_max (<= 0.35 m), steer_range (limits
// cover +/-90 deg), suspension_range (arm range covers -5..+30 deg), and
// max_reach (largest anchor-to-wheel distance <= envelope bound).
std::vector<GateReport> evaluate_gates(const ScenarioConfig& config);

// Throws ConfigError naming the first failing gate.
void require_gates(const ScenarioConfig& config);

enum class Preset { flight, breadboard_1_3, paper_nominal };

std::vector<std::string> preset_names();
std::optional<Preset> preset_from_name(const std::string& name);
ScenarioConfig preset_config(Preset preset);

// Geometric similitude: lengths x f; areas and power x f^2; masses, forces,
// and heat capacity x f^3; spring rate (N*m/rad) x f^4; speeds and arc steps
// x f. Dimensionless coefficients, angles, temperatures, times, wear rates,
// envelopes, gravity, and the seed are unchanged.
ScenarioConfig scale_config(const ScenarioConfig& config, double factor);

}  // namespace warmbox

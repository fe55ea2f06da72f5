#pragma once

// Scenario config file I/O. The on-disk format is a single versioned JSON
// document; parsing is strict both ways: every schema key is required and any
// unknown key is an error (no silent ignoring). Doubles round-trip exactly
// (shortest-representation serialization).

#include <string>

#include <json.hpp>

#include "warmbox/scenario.hpp"

namespace warmbox {

nlohmann::ordered_json config_to_json(const ScenarioConfig& config);

// Strict structural decode; throws ConfigError naming the dotted path of any
// missing, unknown, or ill-typed key. Does not run gates or validation.
ScenarioConfig config_from_json(const nlohmann::ordered_json& j);

// Parse + requirement gates + full validation. Parse errors carry line and
// column; gate failures carry the gate name.
ScenarioConfig parse_scenario_text(const std::string& text);

ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);

// Replaces the numeric leaf addressed by a dotted path ("terrain.slope_rad",
// "drive.articulation_rad.0.1") in a config document. Throws SweepPathError
// carrying the failing segment and the keys valid at that level.
void apply_sweep_value(nlohmann::ordered_json& document, const std::string& parameter_path,
                       double value);

}  // namespace warmbox

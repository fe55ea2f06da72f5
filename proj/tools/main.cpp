// warmbox-sim: batch simulator CLI for the warm-box rover locomotion stack.
//
// Verbs: validate, run, sweep, scale, presets. Exit codes: 0 all verdicts and
// gates pass, 1 verdict failure, 2 configuration error, 3 runtime abort.
// WARMBOX_SIM_OUT provides the default output directory for run and sweep.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "warmbox/config_io.hpp"
#include "warmbox/run.hpp"

namespace {

std::string joined_preset_names() {
  std::string out;
  for (const std::string& name : warmbox::preset_names()) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

warmbox::ScenarioConfig load_input(const std::string& config_path, const std::string& preset) {
  if (!preset.empty() && !config_path.empty())
    throw warmbox::ConfigError("give either a config file or --preset, not both");
  if (!preset.empty()) {
    const std::optional<warmbox::Preset> p = warmbox::preset_from_name(preset);
    if (!p)
      throw warmbox::ConfigError("unknown preset '" + preset +
                                 "' (available: " + joined_preset_names() + ")");
    return warmbox::preset_config(*p);
  }
  if (config_path.empty())
    throw warmbox::ConfigError("no input: give a config file or --preset");
  return warmbox::load_scenario(config_path);
}

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("WARMBOX_SIM_OUT"); env != nullptr && *env != '\0')
    return std::string(env);
  throw warmbox::ConfigError("no output directory: give --out or set WARMBOX_SIM_OUT");
}

void print_verdicts(const std::vector<warmbox::Verdict>& verdicts) {
  for (const warmbox::Verdict& v : verdicts) {
    std::cout << (v.pass ? "pass" : "FAIL") << "  " << v.name;
    if (v.vacuous) {
      std::cout << "  (vacuous)";
    } else {
      std::cout << "  observed [" << warmbox::format_csv_number(v.observed_lo) << ", "
                << warmbox::format_csv_number(v.observed_hi) << "]  bound ["
                << warmbox::format_csv_number(v.bound_lo) << ", "
                << warmbox::format_csv_number(v.bound_hi) << "]";
    }
    std::cout << '\n';
  }
}

int cmd_validate(const std::string& config_path, const std::string& preset) {
  const warmbox::ScenarioConfig config = load_input(config_path, preset);
  for (const warmbox::GateReport& gate : warmbox::evaluate_gates(config)) {
    std::cout << (gate.pass ? "pass" : "FAIL") << "  gate " << gate.name << "  " << gate.detail
              << '\n';
  }
  std::cout << "valid: " << config.name << '\n';
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& out_flag,
            std::optional<std::uint64_t> seed) {
  const warmbox::ScenarioConfig config = load_input(config_path, preset);
  const std::string out_dir = resolve_out_dir(out_flag);
  const warmbox::RunResult result = warmbox::run_scenario(config, out_dir, seed);
  if (result.aborted) {
    std::cerr << "aborted at step " << result.abort_step << " [" << result.abort_kind
              << "]: see " << out_dir << "/error.json" << '\n';
    return result.exit_code;
  }
  print_verdicts(result.verdicts);
  std::cout << "summary: " << out_dir << "/summary.json" << '\n';
  return result.exit_code;
}

int cmd_sweep(const std::string& config_path, const std::string& preset,
              const std::string& param, const std::vector<double>& values,
              const std::string& out_flag, unsigned jobs) {
  const warmbox::ScenarioConfig base = load_input(config_path, preset);
  const std::string out_dir = resolve_out_dir(out_flag);
  const warmbox::SweepResult result = warmbox::run_sweep(base, param, values, out_dir, jobs);
  std::cout << "table: " << out_dir << "/sweep.csv  (" << result.rows.size() << " runs)" << '\n';
  return result.exit_code;
}

int cmd_scale(const std::string& config_path, const std::string& preset, double factor,
              const std::string& out_file) {
  const warmbox::ScenarioConfig config = load_input(config_path, preset);
  const warmbox::ScenarioConfig scaled = warmbox::scale_config(config, factor);
  warmbox::require_gates(scaled);
  scaled.validate();
  warmbox::save_scenario(scaled, out_file);
  std::cout << "wrote " << out_file << '\n';
  return 0;
}

int cmd_presets(const std::string& action, const std::string& name) {
  if (action == "list") {
    for (const std::string& preset : warmbox::preset_names()) std::cout << preset << '\n';
    return 0;
  }
  if (action == "dump") {
    const std::optional<warmbox::Preset> p = warmbox::preset_from_name(name);
    if (!p)
      throw warmbox::ConfigError("unknown preset '" + name +
                                 "' (available: " + joined_preset_names() + ")");
    std::cout << warmbox::config_to_json(warmbox::preset_config(*p)).dump(2) << '\n';
    return 0;
  }
  throw warmbox::ConfigError("unknown presets action '" + action + "' (use list or dump)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warm-box rover locomotion batch simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out;
  std::string param;
  std::vector<double> values;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  double factor = 1.0;
  std::string presets_action;
  std::string presets_name;

  CLI::App* validate = app.add_subcommand("validate", "load a config and evaluate its gates");
  validate->add_option("config", config_path, "scenario config file");
  validate->add_option("--preset", preset, "built-in preset name instead of a file");

  CLI::App* run = app.add_subcommand("run", "run one scenario and write reports");
  run->add_option("config", config_path, "scenario config file");
  run->add_option("--preset", preset, "built-in preset name instead of a file");
  run->add_option("--out", out, "output directory (default: WARMBOX_SIM_OUT)");
  run->add_option("--seed", seed, "override the terrain seed");

  CLI::App* sweep = app.add_subcommand("sweep", "run one scenario per parameter value");
  sweep->add_option("config", config_path, "scenario config file");
  sweep->add_option("--preset", preset, "built-in preset name instead of a file");
  sweep->add_option("--param", param, "dotted config path, e.g. terrain.rolling_resistance")
      ->required();
  sweep->add_option("--values", values, "comma-separated values")->delimiter(',')->required();
  sweep->add_option("--out", out, "output directory (default: WARMBOX_SIM_OUT)");
  sweep->add_option("--jobs", jobs, "max concurrent runs (0 = hardware)");

  CLI::App* scale = app.add_subcommand("scale", "write a geometrically scaled config");
  scale->add_option("config", config_path, "scenario config file");
  scale->add_option("--preset", preset, "built-in preset name instead of a file");
  scale->add_option("--factor", factor, "linear scale factor, e.g. 0.3333333333333333")
      ->required();
  scale->add_option("--out", out, "output config file")->required();

  CLI::App* presets = app.add_subcommand("presets", "list or dump built-in presets");
  presets->add_option("action", presets_action, "list | dump")->required();
  presets->add_option("name", presets_name, "preset name (for dump)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(config_path, preset);
    if (run->parsed()) return cmd_run(config_path, preset, out, seed);
    if (sweep->parsed()) return cmd_sweep(config_path, preset, param, values, out, jobs);
    if (scale->parsed()) return cmd_scale(config_path, preset, factor, out);
    if (presets->parsed()) return cmd_presets(presets_action, presets_name);
  } catch (const warmbox::SimulationAbort& e) {
    std::cerr << "abort at step " << e.step_index << " [" << e.kind << "]: " << e.what() << '\n';
    return 3;
  } catch (const warmbox::ConfigError& e) {
    std::cerr << "config error";
    if (!e.gate_name.empty()) std::cerr << " [gate " << e.gate_name << "]";
    std::cerr << ": " << e.what() << '\n';
    return 2;
  } catch (const warmbox::SweepPathError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const warmbox::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

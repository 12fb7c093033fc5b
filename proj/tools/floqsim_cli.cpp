// Copyright 2026 The floqsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, sweep-omega, stability and preset verbs.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "floqsim/config.hpp"
#include "floqsim/errors.hpp"
#include "floqsim/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

std::filesystem::path output_dir(const std::string& flag, const floqsim::ExperimentConfig& config) {
  if (!flag.empty()) return flag;
  if (!config.output_dir.empty()) return config.output_dir;
  throw floqsim::ConfigError("output.dir", "no output directory given (use --out)");
}

void print_run(const std::vector<floqsim::DriveResult>& results, const std::filesystem::path& dir) {
  for (const auto& r : results) {
    std::cout << floqsim::to_string(r.report.resonance) << ": Omega = " << r.report.omega << ", dim = " << r.report.dim
              << ", " << r.report.propagation << " with " << r.report.steps_per_period << " steps/period";
    if (r.report.step_defect >= 0.0) std::cout << " (defect " << r.report.step_defect << ")";
    std::cout << ", " << r.report.wall_seconds << " s\n";
  }
  std::cout << "wrote " << dir.string() << '\n';
}

void print_stability(const std::vector<floqsim::StabilityRow>& rows, const std::filesystem::path& dir) {
  for (const auto& row : rows) {
    std::cout << "delta_omega_rel = " << row.delta_omega_rel << ": S(probe) = " << row.probe_entropy
              << ", ratio = " << row.ratio_to_baseline << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer and fractional resonances in driven lattice models"};
  app.require_subcommand(1);

  std::string config_path, out, grid, deltas_text, preset_name;
  bool list_presets = false;

  auto* run_cmd = app.add_subcommand("run", "Evolve a configured experiment and write CSVs");
  run_cmd->add_option("--config", config_path, "INI experiment file")->required();
  run_cmd->add_option("--out", out, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep-omega", "Tabulate resonance weights over Omega / U");
  sweep_cmd->add_option("--config", config_path, "INI experiment file")->required();
  sweep_cmd->add_option("--grid", grid, "lo:hi:steps in units of U")->required();
  sweep_cmd->add_option("--out", out, "Output directory");

  auto* stability_cmd = app.add_subcommand("stability", "Entropy under a detuned fractional drive");
  stability_cmd->add_option("--config", config_path, "INI experiment file")->required();
  stability_cmd->add_option("--deltas", deltas_text, "Comma-separated relative detunings");
  stability_cmd->add_option("--out", out, "Output directory");

  auto* preset_cmd = app.add_subcommand("preset", "Run a shipped preset");
  preset_cmd->add_option("name", preset_name, "Preset name");
  preset_cmd->add_flag("--list", list_presets, "List preset names");
  preset_cmd->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      const auto config = floqsim::load_config(config_path);
      const auto dir = output_dir(out, config);
      print_run(floqsim::run(config, dir), dir);
    } else if (*sweep_cmd) {
      const auto config = floqsim::load_config(config_path);
      const auto dir = output_dir(out, config);
      floqsim::sweep_omega(config, floqsim::OmegaGrid::parse(grid), dir);
      std::cout << "wrote " << (dir / "sweep.csv").string() << '\n';
    } else if (*stability_cmd) {
      const auto config = floqsim::load_config(config_path);
      std::vector<double> deltas = config.deltas;
      if (!deltas_text.empty()) {
        deltas.clear();
        std::stringstream in(deltas_text);
        std::string item;
        while (std::getline(in, item, ',')) {
          try {
            deltas.push_back(std::stod(item));
          } catch (const std::logic_error&) {
            throw floqsim::ConfigError("deltas", "malformed detuning '" + item + "'");
          }
        }
      }
      const auto dir = output_dir(out, config);
      print_stability(floqsim::stability_scan(config, deltas, dir), dir);
    } else if (*preset_cmd) {
      if (list_presets) {
        for (const auto& name : floqsim::preset_names()) std::cout << name << '\n';
        return 0;
      }
      if (preset_name.empty()) throw floqsim::ConfigError("preset", "no preset name given");
      const auto config = floqsim::load_preset(preset_name);
      const std::filesystem::path dir = out.empty() ? std::filesystem::path(preset_name) : std::filesystem::path(out);
      if (config.task == "stability") {
        print_stability(floqsim::stability_scan(config, config.deltas, dir), dir);
      } else {
        print_run(floqsim::run(config, dir), dir);
      }
    }
  } catch (const floqsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const floqsim::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

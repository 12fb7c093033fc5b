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

#ifndef FLOQSIM_CONFIG_HPP
#define FLOQSIM_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floqsim/basis.hpp"
#include "floqsim/models.hpp"

namespace floqsim {

enum class Resonance { integer, fractional, custom };

std::string to_string(Resonance r);

enum class Method { dense, sparse };

/// A named superposition of configurations, e.g. psi1 = (|021> + |120>) / sqrt(2).
struct TargetState {
  std::string name;
  std::vector<Configuration> configs;
};

/// Fully validated experiment description. Field names in error messages
/// follow "section.key" of the INI file.
struct ExperimentConfig {
  std::string name = "experiment";
  std::string task = "run";  // run or stability; selects the verb used by presets

  ModelKind model = ModelKind::bose_hubbard;
  int sites = 3;
  int charge = 3;            // particles, excitations or up spins; zero magnetization for spin-1
  int n_max = 0;             // 0 selects the default truncation
  int n_max_photons = 0;     // 0 selects the excitation count
  double U = 0.0;            // 0 selects 40 J0
  double omega_local = 1.0;
  double g = 0.0;            // 0 selects 40 J0
  double omega0 = 1.0;
  std::optional<double> rung_coupling;
  std::optional<int> up_a;
  std::optional<int> up_b;
  int parity = 0;            // 0 keeps the whole sector
  bool polariton_frame = true;

  double j0 = 0.01;
  std::vector<Resonance> drives{Resonance::integer};
  double custom_omega = 0.0;
  double delta_omega_rel = 0.0;

  int periods = 10;
  int steps_per_period = 256;
  int samples_per_period = 0;  // 0 records stroboscopic times only
  Method method = Method::dense;
  std::vector<Configuration> initial;

  std::vector<std::string> observables;
  std::vector<TargetState> targets;
  int cut = 1;
  double count_threshold = 1e-3;

  int m_j = 1, m_k = 1, m_l = 1;
  int sweep_branch = 1;

  double probe_periods = 40.0;
  std::vector<double> deltas;

  std::filesystem::path output_dir;

  double interaction() const { return U > 0.0 ? U : 40.0 * j0; }
  double coupling() const { return g > 0.0 ? g : 40.0 * j0; }
};

/// Parses an INI document (sections, key = value, comma-separated lists).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Embedded preset documents keyed by name.
const std::vector<std::pair<std::string, std::string>>& preset_table();
std::vector<std::string> preset_names();
ExperimentConfig load_preset(const std::string& name);

/// Parses "1,1,1 + 0,2,1" into configurations.
std::vector<Configuration> parse_superposition(const std::string& text, const std::string& field);

/// Drive frequency of a resonance for the configured model.
double resolve_omega(const ExperimentConfig& config, Resonance resonance);

/// Builds the model in its working space (polariton frame, parity block) for one drive.
DrivenModel build_model(const ExperimentConfig& config, Resonance resonance, double delta_omega_rel);

}  // namespace floqsim

#endif  // FLOQSIM_CONFIG_HPP

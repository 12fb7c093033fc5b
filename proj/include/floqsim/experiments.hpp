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

#ifndef FLOQSIM_EXPERIMENTS_HPP
#define FLOQSIM_EXPERIMENTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "floqsim/config.hpp"
#include "floqsim/observables.hpp"

namespace floqsim {

/// Convergence evidence and sizes recorded for one drive of a run.
struct DriveReport {
  Resonance resonance = Resonance::integer;
  double omega = 0.0;
  double period = 0.0;
  double delta_omega_rel = 0.0;
  Eigen::Index dim = 0;
  Eigen::Index sector_dim = 0;
  std::string propagation;     // stroboscopic, continuous or krylov
  int steps_per_period = 0;
  double step_defect = -1.0;   // step-doubling defect of U(T,0); negative when not built
  int quadrature_nodes = 0;
  double quadrature_error = -1.0;  // negative when the Magnus average was not evaluated
  std::string quadrature_note;
  double wall_seconds = 0.0;
};

/// Per-drive results of run(); series are keyed by CSV family name.
struct DriveResult {
  DriveReport report;
  std::vector<std::pair<std::string, ObservableSeries>> series;

  const ObservableSeries& family(const std::string& name) const;
};

/// Worker cap from FLOQSIM_THREADS, defaulting to the hardware concurrency.
int worker_limit();

/// Evolves one drive and collects the configured observables.
DriveResult simulate(const ExperimentConfig& config, Resonance resonance, double delta_omega_rel);

/// Runs every configured drive and writes one CSV per observable family and a
/// manifest.json into out_dir (one subdirectory per drive when several are set).
std::vector<DriveResult> run(const ExperimentConfig& config, const std::filesystem::path& out_dir);

struct OmegaGrid {
  double lo = 0.0;   // in units of U
  double hi = 0.0;
  int steps = 0;

  static OmegaGrid parse(const std::string& text);
  std::vector<double> points() const;
};

/// Resonance weights over a grid of Omega / U; writes sweep.csv.
ObservableSeries sweep_omega(const ExperimentConfig& config, const OmegaGrid& grid, const std::filesystem::path& out_dir);

struct StabilityRow {
  double delta_omega_rel = 0.0;
  double probe_entropy = 0.0;
  double ratio_to_baseline = 0.0;
};

/// Entropy-versus-time under the fractional drive for each detuning; writes
/// stability.csv and stability_summary.csv. The undetuned baseline is always included.
std::vector<StabilityRow> stability_scan(const ExperimentConfig& config, std::vector<double> deltas,
                                         const std::filesystem::path& out_dir);

}  // namespace floqsim

#endif  // FLOQSIM_EXPERIMENTS_HPP

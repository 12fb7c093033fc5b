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

#include "floqsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/propagate.hpp"

namespace floqsim {

namespace {

using nlohmann::json;

bool wants(const ExperimentConfig& config, const std::string& observable) {
  return std::find(config.observables.begin(), config.observables.end(), observable) != config.observables.end();
}

StateVector configured_state(const DrivenModel& model, const std::vector<Configuration>& configs,
                             const std::string& field) {
  try {
    return superposition_state(model, configs);
  } catch (const NotInSector& e) {
    throw ConfigError(field, e.what());
  } catch (const BasisMismatch& e) {
    throw ConfigError(field, e.what());
  }
}

// Runs fn(i) for i in [0, n) on at most worker_limit() threads; the first
// exception is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_limit()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

json report_json(const DriveReport& r) {
  json j{{"resonance", to_string(r.resonance)},
         {"Omega", r.omega},
         {"period", r.period},
         {"delta_omega_rel", r.delta_omega_rel},
         {"dim", r.dim},
         {"sector_dim", r.sector_dim},
         {"propagation", r.propagation},
         {"steps_per_period", r.steps_per_period},
         {"wall_seconds", r.wall_seconds}};
  j["step_doubling_defect"] = r.step_defect >= 0.0 ? json(r.step_defect) : json(nullptr);
  j["quadrature"] = {{"nodes", r.quadrature_nodes},
                     {"error", r.quadrature_error >= 0.0 ? json(r.quadrature_error) : json(nullptr)},
                     {"note", r.quadrature_note}};
  return j;
}

void write_manifest(const ExperimentConfig& config, const std::vector<DriveReport>& reports,
                    const std::filesystem::path& path, json extra = json::object()) {
  json manifest{{"name", config.name},
                {"model", to_string(config.model)},
                {"L", config.sites},
                {"J0", config.j0},
                {"U", config.interaction()},
                {"periods", config.periods},
                {"observables", config.observables}};
  json drives = json::array();
  for (const auto& r : reports) drives.push_back(report_json(r));
  manifest["drives"] = drives;
  for (auto& [k, v] : extra.items()) manifest[k] = v;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << manifest.dump(2) << '\n';
}

// States on the sampling grid of a drive together with the propagation evidence.
std::vector<StateVector> evolve(const ExperimentConfig& config, const DrivenModel& model, const StateVector& psi0,
                                const std::vector<double>& grid, bool stroboscopic, DriveReport& report) {
  report.steps_per_period = config.steps_per_period;
  if (stroboscopic) {
    PropagatorOptions options;
    options.steps = config.steps_per_period;
    const PeriodPropagator prop = period_propagator(model, options);
    report.propagation = "stroboscopic";
    report.steps_per_period = prop.steps;
    report.step_defect = prop.defect;
    return stroboscopic_evolve(prop, psi0, config.periods);
  }
  if (config.method == Method::sparse) {
    KrylovOptions options;
    options.steps_per_period = config.steps_per_period;
    report.propagation = "krylov";
    return sparse_evolve(model, psi0, grid, options);
  }
  report.propagation = "continuous";
  return continuous_evolve(model, psi0, grid, config.steps_per_period);
}

}  // namespace

const ObservableSeries& DriveResult::family(const std::string& name) const {
  for (const auto& [key, s] : series) {
    if (key == name) return s;
  }
  throw std::out_of_range("no observable family " + name);
}

int worker_limit() {
  if (const char* env = std::getenv("FLOQSIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

DriveResult simulate(const ExperimentConfig& config, Resonance resonance, double delta_omega_rel) {
  const auto start = std::chrono::steady_clock::now();
  const DrivenModel model = build_model(config, resonance, delta_omega_rel);
  DriveResult result;
  DriveReport& report = result.report;
  report.resonance = resonance;
  report.omega = model.drive.omega;
  report.period = model.drive.period();
  report.delta_omega_rel = delta_omega_rel;
  report.dim = model.dim();
  report.sector_dim = model.basis.dim();

  const StateVector psi0 = configured_state(model, config.initial, "evolution.initial");
  std::vector<StateVector> targets;
  for (const auto& t : config.targets) targets.push_back(configured_state(model, t.configs, "targets." + t.name));

  if (!model.h0_diag) {
    report.quadrature_note = "static part not diagonal in the working basis";
  } else {
    try {
      QuadratureReport q;
      magnus_h0(model, &q);
      report.quadrature_nodes = q.nodes;
      report.quadrature_error = q.error;
    } catch (const PeriodicityViolation&) {
      report.quadrature_note = "rotating-frame Hamiltonian not periodic at this detuning";
    }
  }

  if (config.observables.empty()) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  const bool stroboscopic =
      config.method == Method::dense && delta_omega_rel == 0.0 && config.samples_per_period == 0;
  const int samples = std::max(1, config.samples_per_period);
  const double T = model.drive.period();
  std::vector<double> grid;
  for (int k = 0; k <= config.periods * samples; ++k) grid.push_back(k * T / samples);
  const std::vector<StateVector> states = evolve(config, model, psi0, grid, stroboscopic, report);
  const int stride = stroboscopic ? 1 : samples;

  if (wants(config, "populations")) {
    std::vector<std::string> keys;
    for (const auto& t : config.targets) keys.push_back("P_" + t.name);
    ObservableSeries s(keys);
    for (const auto& psi : states) s.append(psi.t, populations(psi, targets));
    result.series.emplace_back("populations", std::move(s));
  }
  if (wants(config, "pr") || wants(config, "config_count")) {
    ObservableSeries s({"PR", "config_count"});
    for (const auto& psi : states) {
      s.append(psi.t, {participation_ratio(model, psi),
                       static_cast<double>(configuration_count(model, psi, config.count_threshold))});
    }
    result.series.emplace_back("localization", std::move(s));
  }
  if (wants(config, "entropy")) {
    ObservableSeries s({"S_vN_cut" + std::to_string(config.cut)});
    for (const auto& psi : states) s.append(psi.t, {von_neumann_entropy(model, psi, config.cut)});
    result.series.emplace_back("entropy", std::move(s));
  }
  if (wants(config, "echo")) {
    ObservableSeries s({"echo"});
    for (const auto& psi : states) s.append(psi.t, {loschmidt_echo(psi0, psi)});
    result.series.emplace_back("echo", std::move(s));
  }
  if (wants(config, "autocorrelation")) {
    std::vector<std::string> keys;
    for (int j = 1; j <= config.sites; ++j) keys.push_back("Cj_" + std::to_string(j));
    ObservableSeries s(keys);
    for (const auto& psi : states) s.append(psi.t, autocorrelations(psi0, psi, model));
    result.series.emplace_back("autocorrelation", std::move(s));
  }
  if (wants(config, "heating")) {
    std::vector<StateVector> strobe;
    for (std::size_t k = 0; k < states.size(); k += static_cast<std::size_t>(stride)) strobe.push_back(states[k]);
    result.series.emplace_back("heating", heating_rate_series(strobe, model));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<DriveResult> run(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  std::vector<DriveResult> results(config.drives.size());
  parallel_for(config.drives.size(),
               [&](std::size_t i) { results[i] = simulate(config, config.drives[i], config.delta_omega_rel); });

  std::filesystem::create_directories(out_dir);
  std::vector<DriveReport> reports;
  for (const auto& r : results) {
    const std::filesystem::path dir =
        config.drives.size() > 1 ? out_dir / to_string(r.report.resonance) : out_dir;
    std::filesystem::create_directories(dir);
    for (const auto& [name, series] : r.series) series.write_csv(dir / (name + ".csv"), r.report.period);
    reports.push_back(r.report);
  }
  write_manifest(config, reports, out_dir / "manifest.json");
  return results;
}

OmegaGrid OmegaGrid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("grid", "expected lo:hi:steps, got '" + text + "'");
  OmegaGrid g;
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    g.steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw ConfigError("grid", "malformed grid '" + text + "'");
  }
  if (!(g.lo > 0.0) || !(g.hi >= g.lo) || g.hi > 2.0 || g.steps < 1) {
    throw ConfigError("grid", "grid must satisfy 0 < lo <= hi <= 2 (units of U) with at least one point");
  }
  return g;
}

std::vector<double> OmegaGrid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {lo};
  for (int k = 0; k < steps; ++k) out.push_back(lo + (hi - lo) * k / (steps - 1));
  return out;
}

ObservableSeries sweep_omega(const ExperimentConfig& config, const OmegaGrid& grid, const std::filesystem::path& out_dir) {
  const double U = config.interaction();
  const std::vector<double> x = grid.points();
  std::vector<std::vector<double>> rows(x.size());
  parallel_for(x.size(), [&](std::size_t i) {
    const double omega = x[i] * U;
    const cplx f = resonance_weight(omega, U, config.m_j, config.m_k, config.sweep_branch);
    const FractionalWeights w = fractional_weight(omega, U, config.m_j, config.m_k, config.m_l);
    rows[i] = {f.real(), f.imag(), w.f1.real(), w.f1.imag(), std::abs(w.f1), w.f2.real(), w.f2.imag()};
  });
  ObservableSeries series({"ReF", "ImF", "ReF1", "ImF1", "absF1", "ReF2", "ImF2"});
  for (std::size_t i = 0; i < x.size(); ++i) series.append(x[i], rows[i]);
  std::filesystem::create_directories(out_dir);
  series.write_csv(out_dir / "sweep.csv", 1.0, "Omega_over_U");
  return series;
}

std::vector<StabilityRow> stability_scan(const ExperimentConfig& config, std::vector<double> deltas,
                                         const std::filesystem::path& out_dir) {
  deltas.push_back(0.0);
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  const int samples = std::max(1, config.samples_per_period);
  const double horizon = std::max(static_cast<double>(config.periods), config.probe_periods);
  const int points = static_cast<int>(std::ceil(horizon * samples));

  std::vector<std::vector<double>> curves(deltas.size());
  std::vector<double> probe(deltas.size());
  std::vector<DriveReport> reports(deltas.size());
  std::vector<double> t_over_T;
  for (int k = 0; k <= points; ++k) t_over_T.push_back(static_cast<double>(k) / samples);
  if (std::find(t_over_T.begin(), t_over_T.end(), config.probe_periods) == t_over_T.end()) {
    t_over_T.insert(std::upper_bound(t_over_T.begin(), t_over_T.end(), config.probe_periods), config.probe_periods);
  }
  const std::size_t probe_index =
      static_cast<std::size_t>(std::find(t_over_T.begin(), t_over_T.end(), config.probe_periods) - t_over_T.begin());

  parallel_for(deltas.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const DrivenModel model = build_model(config, Resonance::fractional, deltas[i]);
    const StateVector psi0 = configured_state(model, config.initial, "evolution.initial");
    std::vector<double> grid;
    for (const double x : t_over_T) grid.push_back(x * model.drive.period());
    DriveReport& report = reports[i];
    report.resonance = Resonance::fractional;
    report.omega = model.drive.omega;
    report.period = model.drive.period();
    report.delta_omega_rel = deltas[i];
    report.dim = model.dim();
    report.sector_dim = model.basis.dim();
    const std::vector<StateVector> states = evolve(config, model, psi0, grid, false, report);
    for (const auto& psi : states) curves[i].push_back(von_neumann_entropy(model, psi, config.cut));
    probe[i] = curves[i][probe_index];
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  std::vector<std::string> keys;
  for (const double d : deltas) keys.push_back("S_vN_cut" + std::to_string(config.cut) + "_d" + format_number(d));
  ObservableSeries curves_series(keys);
  for (std::size_t k = 0; k < t_over_T.size(); ++k) {
    std::vector<double> row;
    for (const auto& c : curves) row.push_back(c[k]);
    curves_series.append(t_over_T[k], row);
  }

  const std::size_t base = static_cast<std::size_t>(std::find(deltas.begin(), deltas.end(), 0.0) - deltas.begin());
  std::vector<StabilityRow> rows;
  ObservableSeries summary({"S_probe", "ratio_to_baseline"});
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double ratio = probe[base] > 0.0 ? probe[i] / probe[base] : 0.0;
    rows.push_back({deltas[i], probe[i], ratio});
    summary.append(deltas[i], {probe[i], ratio});
  }

  std::filesystem::create_directories(out_dir);
  curves_series.write_csv(out_dir / "stability.csv", 1.0);
  summary.write_csv(out_dir / "stability_summary.csv", 1.0, "delta_omega_rel");
  write_manifest(config, reports, out_dir / "manifest.json",
                 json{{"task", "stability"}, {"probe_periods", config.probe_periods}});
  return rows;
}

}  // namespace floqsim

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

#include "floqsim/observables.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "floqsim/errors.hpp"

namespace floqsim {

namespace {

void require_same_space(const StateVector& a, const StateVector& b) {
  if (a.space_id != b.space_id || a.dim() != b.dim()) throw BasisMismatch("states live in different working spaces");
}

void require_model_space(const DrivenModel& model, const StateVector& psi) {
  if (psi.space_id != model.space_id() || psi.dim() != model.dim()) {
    throw BasisMismatch("state does not belong to the model's working space");
  }
}

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t out = 1;
  for (int k = 0; k < exponent; ++k) {
    out *= static_cast<std::uint64_t>(base);
    if (out > kMaxProductDim) throw SizeLimit("product space exceeds the embedding size guard");
  }
  return out;
}

// Base-d index of sites [from, to) with the first site most significant.
std::uint64_t pack_range(const SectorBasis& basis, const Configuration& c, int from, int to) {
  const int d = basis.local().dim();
  std::uint64_t idx = 0;
  for (int j = from; j < to; ++j) idx = idx * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(basis.local().slot(c[static_cast<std::size_t>(j)]));
  return idx;
}

}  // namespace

ObservableSeries::ObservableSeries(std::vector<std::string> keys) : keys_(std::move(keys)) {}

void ObservableSeries::append(double t, std::vector<double> values) {
  if (values.size() != keys_.size()) throw std::invalid_argument("record does not match the series keys");
  if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("series times must be strictly increasing");
  times_.push_back(t);
  rows_.push_back(std::move(values));
}

std::vector<double> ObservableSeries::column(const std::string& key) const {
  const auto it = std::find(keys_.begin(), keys_.end(), key);
  if (it == keys_.end()) throw std::out_of_range("unknown series key: " + key);
  const auto k = static_cast<std::size_t>(it - keys_.begin());
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[k]);
  return out;
}

void ObservableSeries::write_csv(std::ostream& out, double period, const std::string& index_label) const {
  out << index_label;
  for (const auto& k : keys_) out << ',' << k;
  out << '\n' << std::setprecision(12);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    out << times_[r] / period;
    for (const double v : rows_[r]) out << ',' << v;
    out << '\n';
  }
}

void ObservableSeries::write_csv(const std::filesystem::path& path, double period,
                                const std::string& index_label) const {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(file, period, index_label);
}

std::vector<double> populations(const StateVector& psi, const std::vector<StateVector>& targets) {
  std::vector<double> out;
  out.reserve(targets.size());
  for (const auto& target : targets) {
    require_same_space(psi, target);
    out.push_back(std::norm(target.amps.dot(psi.amps)));
  }
  return out;
}

Eigen::VectorXcd configuration_amplitudes(const DrivenModel& model, const StateVector& psi) {
  require_model_space(model, psi);
  return model.to_sector(psi.amps);
}

double participation_ratio(const DrivenModel& model, const StateVector& psi) {
  return participation_ratio(configuration_amplitudes(model, psi));
}

int configuration_count(const DrivenModel& model, const StateVector& psi, double threshold) {
  const Eigen::VectorXcd amps = configuration_amplitudes(model, psi);
  return static_cast<int>((amps.cwiseAbs2().array() > threshold).count());
}

Eigen::VectorXcd embed_product_space(const SectorBasis& basis, const Eigen::VectorXcd& sector_amps) {
  if (sector_amps.size() != basis.dim()) throw BasisMismatch("amplitudes do not match the sector");
  const std::uint64_t full = checked_power(basis.local().dim(), basis.sites());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full));
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    out(static_cast<Eigen::Index>(pack_range(basis, basis.config(i), 0, basis.sites()))) = sector_amps(i);
  }
  return out;
}

Eigen::VectorXcd restrict_product_space(const SectorBasis& basis, const Eigen::VectorXcd& product_amps) {
  const std::uint64_t full = checked_power(basis.local().dim(), basis.sites());
  if (static_cast<std::uint64_t>(product_amps.size()) != full) throw BasisMismatch("product-space vector has the wrong size");
  Eigen::VectorXcd out(basis.dim());
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    out(i) = product_amps(static_cast<Eigen::Index>(pack_range(basis, basis.config(i), 0, basis.sites())));
  }
  return out;
}

double von_neumann_entropy(const SectorBasis& basis, const Eigen::VectorXcd& sector_amps, int cut) {
  const int sites = basis.sites();
  if (cut < 1 || cut >= sites) throw CutOutOfRange("cut must satisfy 1 <= cut < L, got " + std::to_string(cut));
  if (sector_amps.size() != basis.dim()) throw BasisMismatch("amplitudes do not match the sector");
  const int d = basis.local().dim();
  checked_power(d, sites);
  const auto rows = static_cast<Eigen::Index>(checked_power(d, cut));
  const auto cols = static_cast<Eigen::Index>(checked_power(d, sites - cut));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    const Configuration& c = basis.config(i);
    m(static_cast<Eigen::Index>(pack_range(basis, c, 0, cut)), static_cast<Eigen::Index>(pack_range(basis, c, cut, sites))) =
        sector_amps(i);
  }
  const Eigen::MatrixXcd rho = rows <= cols ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.adjoint() * m);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DrivenModel& model, const StateVector& psi, int cut) {
  return von_neumann_entropy(model.basis, configuration_amplitudes(model, psi), cut);
}

double loschmidt_echo(const StateVector& psi0, const StateVector& psi_t) {
  require_same_space(psi0, psi_t);
  return std::norm(psi0.amps.dot(psi_t.amps));
}

std::vector<double> site_occupations(const DrivenModel& model, const StateVector& psi) {
  const Eigen::VectorXcd amps = configuration_amplitudes(model, psi);
  const int sites = model.basis.sites();
  std::vector<double> out(static_cast<std::size_t>(sites), 0.0);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps(i));
    if (w == 0.0) continue;
    const Configuration& c = model.basis.config(i);
    for (int j = 0; j < sites; ++j) {
      out[static_cast<std::size_t>(j)] += w * model.local.occupation(model.local.space.slot(c[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

std::vector<double> autocorrelations(const StateVector& psi0, const StateVector& psi_t, const DrivenModel& model) {
  require_same_space(psi0, psi_t);
  const std::vector<double> n0 = site_occupations(model, psi0);
  const std::vector<double> nt = site_occupations(model, psi_t);
  std::vector<double> out(n0.size());
  for (std::size_t j = 0; j < n0.size(); ++j) out[j] = (2.0 * nt[j] - 1.0) * (2.0 * n0[j] - 1.0);
  return out;
}

double static_energy(const DrivenModel& model, const StateVector& psi) {
  require_model_space(model, psi);
  return psi.amps.dot(model.h0.cast<std::complex<double>>() * psi.amps).real();
}

ObservableSeries heating_rate_series(const std::vector<StateVector>& states, const DrivenModel& model) {
  ObservableSeries series({"eps_n", "heating_rate"});
  const double T = model.drive.period();
  std::vector<double> eps;
  eps.reserve(states.size());
  for (const auto& s : states) eps.push_back(static_energy(model, s));
  for (std::size_t n = 0; n + 1 < states.size(); ++n) {
    series.append(states[n].t, {eps[n], (eps[n + 1] - eps[n]) / T});
  }
  return series;
}

}  // namespace floqsim

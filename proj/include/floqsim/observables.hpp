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

#ifndef FLOQSIM_OBSERVABLES_HPP
#define FLOQSIM_OBSERVABLES_HPP

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "floqsim/models.hpp"
#include "floqsim/propagate.hpp"

namespace floqsim {

/// Time-stamped rows of named real values; every row carries every key.
class ObservableSeries {
 public:
  explicit ObservableSeries(std::vector<std::string> keys);

  void append(double t, std::vector<double> values);

  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return times_.size(); }
  std::vector<double> column(const std::string& key) const;

  /// CSV with a leading index column (time / period by default), 12 significant digits.
  void write_csv(std::ostream& out, double period, const std::string& index_label = "t_over_T") const;
  void write_csv(const std::filesystem::path& path, double period, const std::string& index_label = "t_over_T") const;

 private:
  std::vector<std::string> keys_;
  std::vector<double> times_;
  std::vector<std::vector<double>> rows_;
};

/// |<target_j|psi>|^2 per target.
std::vector<double> populations(const StateVector& psi, const std::vector<StateVector>& targets);

/// 1 / sum |c|^4 of a normalized amplitude vector.
template <typename Derived>
double participation_ratio(const Eigen::MatrixBase<Derived>& amps) {
  const double s = amps.cwiseAbs2().cwiseAbs2().sum();
  return s > 0.0 ? 1.0 / s : 0.0;
}

/// Amplitudes over sector configurations (parity members expanded).
Eigen::VectorXcd configuration_amplitudes(const DrivenModel& model, const StateVector& psi);

/// Participation ratio over sector configurations.
double participation_ratio(const DrivenModel& model, const StateVector& psi);

/// Number of configurations whose population exceeds the threshold.
int configuration_count(const DrivenModel& model, const StateVector& psi, double threshold = 1e-3);

/// Largest product-space dimension the entropy and embedding routines allocate.
inline constexpr std::uint64_t kMaxProductDim = std::uint64_t{1} << 22;

/// Sector amplitudes written into the full product space (site 0 most significant).
Eigen::VectorXcd embed_product_space(const SectorBasis& basis, const Eigen::VectorXcd& sector_amps);
/// Inverse of embed_product_space; weight outside the sector is discarded.
Eigen::VectorXcd restrict_product_space(const SectorBasis& basis, const Eigen::VectorXcd& product_amps);

/// Entanglement entropy of sites [0, cut) against [cut, L).
double von_neumann_entropy(const DrivenModel& model, const StateVector& psi, int cut);
double von_neumann_entropy(const SectorBasis& basis, const Eigen::VectorXcd& sector_amps, int cut);

double loschmidt_echo(const StateVector& psi0, const StateVector& psi_t);

/// <n_j> per site using the model's local occupation.
std::vector<double> site_occupations(const DrivenModel& model, const StateVector& psi);

/// (2 <n_j(t)> - 1)(2 <n_j(0)> - 1) per site.
std::vector<double> autocorrelations(const StateVector& psi0, const StateVector& psi_t, const DrivenModel& model);

/// <psi| H0 |psi>.
double static_energy(const DrivenModel& model, const StateVector& psi);

/// Rows n = 0..N-1 of eps_n and (eps_{n+1} - eps_n) / T from states at 0, T, ..., N T.
ObservableSeries heating_rate_series(const std::vector<StateVector>& states, const DrivenModel& model);

}  // namespace floqsim

#endif  // FLOQSIM_OBSERVABLES_HPP

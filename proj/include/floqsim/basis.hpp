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

#ifndef FLOQSIM_BASIS_HPP
#define FLOQSIM_BASIS_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace floqsim {

/// Local state labels of a lattice configuration, one entry per site
/// (occupation n_j, spin projection m_j, rung code, ...).
using Configuration = std::vector<int>;

/// Describes the local Hilbert space of one site: the allowed label values
/// and the conserved charge each of them carries.
struct LocalSpace {
  std::vector<int> labels;      // ascending
  std::vector<int> charge;      // same length as labels
  std::vector<int> leg_charge;  // optional second U(1) charge, empty if unused

  int dim() const { return static_cast<int>(labels.size()); }
  /// Position of a label value inside `labels`, or -1.
  int slot(int label) const;

  static LocalSpace bosons(int n_max);
  static LocalSpace spin_one();
  /// Two spin-1/2 legs per rung, label = 2*m_a + m_b with m in {0 (down), 1 (up)}.
  static LocalSpace ladder_rung();
  /// Labels 0..d-1 with the given per-label charge.
  static LocalSpace indexed(std::vector<int> charges);
};

/// Default bosonic cutoff: n_max = N for short chains, n_max = 2 beyond six sites.
int default_n_max(int sites, int particles);

/// Binomial count (N+L-1)!/(N!(L-1)!) of unconstrained bosonic configurations.
std::uint64_t bosonic_dimension(int sites, int particles);

constexpr std::size_t kMaxSectorDim = 10'000'000;

/// All configurations with a fixed total charge (and optional leg charge),
/// lexicographically ordered, with O(1) configuration -> index lookup.
class SectorBasis {
 public:
  SectorBasis(int sites, LocalSpace local, int charge, std::optional<int> leg_charge,
              std::vector<Configuration> configs);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(configs_.size()); }
  int sites() const { return sites_; }
  int charge() const { return charge_; }
  std::optional<int> leg_charge() const { return leg_charge_; }
  const LocalSpace& local() const { return local_; }

  const std::vector<Configuration>& configs() const { return configs_; }
  const Configuration& config(Eigen::Index i) const { return configs_[static_cast<std::size_t>(i)]; }

  /// Throws NotInSector.
  Eigen::Index index_of(const Configuration& c) const;
  std::optional<Eigen::Index> find(const Configuration& c) const;

  /// Base-(local dim) packing of the label slots; injective on valid configs.
  std::uint64_t pack(const Configuration& c) const;
  /// Content hash identifying the sector; used to detect basis mismatches.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  int sites_;
  LocalSpace local_;
  int charge_;
  std::optional<int> leg_charge_;
  std::vector<Configuration> configs_;
  std::unordered_map<std::uint64_t, Eigen::Index> lookup_;
  std::uint64_t fingerprint_ = 0;
};

/// Throws EmptySector when no configuration carries the charge and SizeLimit
/// when the sector would exceed kMaxSectorDim states.
SectorBasis enumerate_sector(int sites, int charge, const LocalSpace& local,
                             std::optional<int> leg_charge = std::nullopt);

/// Lattice reflection |m1 ... mL> -> |mL ... m1>.
Configuration reflect(const Configuration& c);

/// Permutation matrix of the reflection acting inside the sector.
Eigen::SparseMatrix<double> reflection_matrix(const SectorBasis& basis);

struct ParityMember {
  Eigen::Index rep;      // lexicographically smaller of {c, reflect(c)}
  Eigen::Index partner;  // index of reflect(rep), equal to rep when self-symmetric
  double norm;           // 1 for self-symmetric members, 1/sqrt(2) otherwise
};

/// Reflection-symmetrized basis (|c> + sign |Pc>) / sqrt(2) of one parity block.
class ParityBasis {
 public:
  ParityBasis(int sign, std::vector<ParityMember> members, Eigen::Index sector_dim);

  int sign() const { return sign_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(members_.size()); }
  Eigen::Index sector_dim() const { return isometry_.rows(); }
  const std::vector<ParityMember>& members() const { return members_; }

  /// Column-orthonormal map from parity amplitudes to sector amplitudes.
  const Eigen::SparseMatrix<double>& isometry() const { return isometry_; }

  /// Index of the member whose expansion contains the configuration.
  std::optional<Eigen::Index> member_of(Eigen::Index config_index) const;

 private:
  int sign_;
  std::vector<ParityMember> members_;
  std::vector<Eigen::Index> member_of_config_;
  Eigen::SparseMatrix<double> isometry_;
};

ParityBasis parity_project(const SectorBasis& basis, int sign);

}  // namespace floqsim

#endif  // FLOQSIM_BASIS_HPP

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

#include "floqsim/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "floqsim/errors.hpp"

namespace floqsim {

int LocalSpace::slot(int label) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return -1;
  return static_cast<int>(it - labels.begin());
}

LocalSpace LocalSpace::bosons(int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  LocalSpace s;
  for (int n = 0; n <= n_max; ++n) {
    s.labels.push_back(n);
    s.charge.push_back(n);
  }
  return s;
}

LocalSpace LocalSpace::spin_one() { return {{-1, 0, 1}, {-1, 0, 1}, {}}; }

LocalSpace LocalSpace::ladder_rung() {
  // label = 2*m_a + m_b; charge counts up spins on both legs, leg_charge on leg b.
  return {{0, 1, 2, 3}, {0, 1, 1, 2}, {0, 1, 0, 1}};
}

LocalSpace LocalSpace::indexed(std::vector<int> charges) {
  LocalSpace s;
  s.labels.resize(charges.size());
  std::iota(s.labels.begin(), s.labels.end(), 0);
  s.charge = std::move(charges);
  return s;
}

int default_n_max(int sites, int particles) { return sites <= 6 ? particles : 2; }

std::uint64_t bosonic_dimension(int sites, int particles) {
  // C(N+L-1, N) computed incrementally; exact while it fits in 64 bits.
  std::uint64_t result = 1;
  for (int k = 1; k <= particles; ++k) {
    result = result * static_cast<std::uint64_t>(sites - 1 + k) / static_cast<std::uint64_t>(k);
  }
  return result;
}

SectorBasis::SectorBasis(int sites, LocalSpace local, int charge, std::optional<int> leg_charge,
                         std::vector<Configuration> configs)
    : sites_(sites),
      local_(std::move(local)),
      charge_(charge),
      leg_charge_(leg_charge),
      configs_(std::move(configs)) {
  const double digits = sites_ * std::log2(static_cast<double>(local_.dim()));
  if (digits >= 63.0) throw SizeLimit("configuration packing exceeds 64 bits");
  lookup_.reserve(configs_.size());
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  const auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(sites_));
  mix(static_cast<std::uint64_t>(charge_ + 1024));
  for (const int l : local_.labels) mix(static_cast<std::uint64_t>(l + 1024));
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    const std::uint64_t key = pack(configs_[i]);
    lookup_.emplace(key, static_cast<Eigen::Index>(i));
    mix(key);
  }
  fingerprint_ = h;
}

std::uint64_t SectorBasis::pack(const Configuration& c) const {
  std::uint64_t key = 0;
  const auto d = static_cast<std::uint64_t>(local_.dim());
  for (const int label : c) {
    const int s = local_.slot(label);
    if (s < 0) throw NotInSector("label " + std::to_string(label) + " outside the local space");
    key = key * d + static_cast<std::uint64_t>(s);
  }
  return key;
}

std::optional<Eigen::Index> SectorBasis::find(const Configuration& c) const {
  if (static_cast<int>(c.size()) != sites_) return std::nullopt;
  for (const int label : c) {
    if (local_.slot(label) < 0) return std::nullopt;
  }
  const auto it = lookup_.find(pack(c));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::Index SectorBasis::index_of(const Configuration& c) const {
  if (auto i = find(c)) return *i;
  std::string text;
  for (const int l : c) text += std::to_string(l) + ' ';
  throw NotInSector("configuration [ " + text + "] is not in the sector");
}

namespace {

struct Enumerator {
  int sites;
  const LocalSpace& local;
  int charge;
  std::optional<int> leg;
  int min_charge, max_charge, min_leg, max_leg;
  std::vector<Configuration> out;
  Configuration current;

  void run(int site, int q, int leg_q) {
    const int left = sites - site;
    if (q + left * min_charge > charge || q + left * max_charge < charge) return;
    if (leg && (leg_q + left * min_leg > *leg || leg_q + left * max_leg < *leg)) return;
    if (site == sites) {
      if (out.size() >= kMaxSectorDim) {
        throw SizeLimit("sector dimension exceeds " + std::to_string(kMaxSectorDim));
      }
      out.push_back(current);
      return;
    }
    for (int s = 0; s < local.dim(); ++s) {
      current[static_cast<std::size_t>(site)] = local.labels[static_cast<std::size_t>(s)];
      const int dl = leg ? local.leg_charge[static_cast<std::size_t>(s)] : 0;
      run(site + 1, q + local.charge[static_cast<std::size_t>(s)], leg_q + dl);
    }
  }
};

}  // namespace

SectorBasis enumerate_sector(int sites, int charge, const LocalSpace& local,
                             std::optional<int> leg_charge) {
  if (sites < 2) throw std::invalid_argument("lattice needs at least two sites");
  if (local.dim() == 0 || local.charge.size() != local.labels.size()) {
    throw std::invalid_argument("malformed local space");
  }
  if (!std::is_sorted(local.labels.begin(), local.labels.end())) {
    throw std::invalid_argument("local labels must be ascending");
  }
  if (leg_charge && local.leg_charge.size() != local.labels.size()) {
    throw std::invalid_argument("local space carries no leg charge");
  }
  const auto [qmin, qmax] = std::minmax_element(local.charge.begin(), local.charge.end());
  int lmin = 0, lmax = 0;
  if (leg_charge) {
    const auto [a, b] = std::minmax_element(local.leg_charge.begin(), local.leg_charge.end());
    lmin = *a;
    lmax = *b;
  }
  Enumerator e{sites, local, charge, leg_charge, *qmin, *qmax, lmin, lmax, {}, Configuration(static_cast<std::size_t>(sites))};
  e.run(0, 0, 0);
  if (e.out.empty()) {
    throw EmptySector("no configuration of " + std::to_string(sites) + " sites carries charge " +
                      std::to_string(charge));
  }
  return SectorBasis(sites, local, charge, leg_charge, std::move(e.out));
}

Configuration reflect(const Configuration& c) { return Configuration(c.rbegin(), c.rend()); }

Eigen::SparseMatrix<double> reflection_matrix(const SectorBasis& basis) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(basis.dim()));
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    entries.emplace_back(basis.index_of(reflect(basis.config(i))), i, 1.0);
  }
  Eigen::SparseMatrix<double> p(basis.dim(), basis.dim());
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

ParityBasis::ParityBasis(int sign, std::vector<ParityMember> members, Eigen::Index sector_dim)
    : sign_(sign), members_(std::move(members)), member_of_config_(static_cast<std::size_t>(sector_dim), -1) {
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const auto& m = members_[k];
    const auto col = static_cast<Eigen::Index>(k);
    member_of_config_[static_cast<std::size_t>(m.rep)] = col;
    member_of_config_[static_cast<std::size_t>(m.partner)] = col;
    if (m.rep == m.partner) {
      entries.emplace_back(m.rep, col, 1.0);
    } else {
      entries.emplace_back(m.rep, col, m.norm);
      entries.emplace_back(m.partner, col, sign_ * m.norm);
    }
  }
  isometry_.resize(sector_dim, static_cast<Eigen::Index>(members_.size()));
  isometry_.setFromTriplets(entries.begin(), entries.end());
}

std::optional<Eigen::Index> ParityBasis::member_of(Eigen::Index config_index) const {
  const Eigen::Index k = member_of_config_.at(static_cast<std::size_t>(config_index));
  if (k < 0) return std::nullopt;
  return k;
}

ParityBasis parity_project(const SectorBasis& basis, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("parity sign must be +1 or -1");
  std::vector<ParityMember> members;
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    const auto partner = basis.find(reflect(basis.config(i)));
    if (!partner) throw std::invalid_argument("sector is not closed under reflection");
    if (*partner < i) continue;  // already recorded through its representative
    if (*partner == i) {
      if (sign == 1) members.push_back({i, i, 1.0});
    } else {
      members.push_back({i, *partner, 1.0 / std::sqrt(2.0)});
    }
  }
  return ParityBasis(sign, std::move(members), basis.dim());
}

}  // namespace floqsim

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

#include "floqsim/models.hpp"

#include <iostream>
#include <stdexcept>

#include "floqsim/errors.hpp"

namespace floqsim {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::bose_hubbard: return "bose_hubbard";
    case ModelKind::spin1_xxz: return "spin1_xxz";
    case ModelKind::jch: return "jch";
    case ModelKind::spin_ladder: return "spin_ladder";
  }
  return "unknown";
}

std::uint64_t DrivenModel::space_id() const {
  std::uint64_t id = basis.fingerprint();
  if (parity) id ^= parity->sign() > 0 ? 0x9e3779b97f4a7c15ull : 0xc2b2ae3d27d4eb4full;
  if (polariton_frame) id = id * 31 + 7;
  return id;
}

Eigen::VectorXcd DrivenModel::to_sector(const Eigen::VectorXcd& amps) const {
  if (amps.size() != dim()) throw BasisMismatch("state dimension does not match the model");
  if (!parity) return amps;
  return parity->isometry().cast<std::complex<double>>() * amps;
}

Eigen::VectorXcd DrivenModel::from_sector(const Eigen::VectorXcd& amps) const {
  if (amps.size() != basis.dim()) throw BasisMismatch("sector dimension does not match the model");
  if (!parity) return amps;
  return parity->isometry().transpose().cast<std::complex<double>>() * amps;
}

LocalOperators bose_hubbard_site(int n_max, double U, double omega_local) {
  LocalOperators op;
  op.space = LocalSpace::bosons(n_max);
  const int d = n_max + 1;
  op.h_local = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  op.occupation.resize(d);
  for (int n = 0; n < d; ++n) {
    op.h_local(n, n) = omega_local * n + 0.5 * U * n * (n - 1);
    if (n > 0) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    op.occupation(n) = n;
  }
  op.lowering.push_back(std::move(a));
  return op;
}

LocalOperators spin1_site(double U) {
  LocalOperators op;
  op.space = LocalSpace::spin_one();
  // slots 0,1,2 <-> m = -1,0,1; S^- |m> = sqrt(2 - m(m-1)) |m-1>
  op.h_local = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd s_minus = Eigen::MatrixXd::Zero(3, 3);
  for (int slot = 0; slot < 3; ++slot) {
    const int m = slot - 1;
    op.h_local(slot, slot) = 0.5 * U * m * m;
    if (slot > 0) s_minus(slot - 1, slot) = std::sqrt(2.0 - m * (m - 1));
  }
  op.lowering.push_back(std::move(s_minus));
  op.occupation = Eigen::Vector3d(0.0, 1.0, 2.0);  // S^z + 1
  return op;
}

LocalOperators jch_site(int n_max_photons, double g, double omega, double omega0) {
  if (n_max_photons < 1) throw std::invalid_argument("JCH needs at least one photon per site");
  const int d = 2 * (n_max_photons + 1);
  const auto label = [](int n, int up) { return 2 * n + up; };
  std::vector<int> charges(static_cast<std::size_t>(d));
  LocalOperators op;
  op.h_local = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  op.occupation.resize(d);
  for (int n = 0; n <= n_max_photons; ++n) {
    for (int up = 0; up <= 1; ++up) {
      const int k = label(n, up);
      charges[static_cast<std::size_t>(k)] = n + up;
      op.occupation(k) = n + up;
      op.h_local(k, k) = omega * n + omega0 * up;
      if (n > 0) a(label(n - 1, up), k) = std::sqrt(static_cast<double>(n));
    }
    if (n > 0) {
      // g (sigma^+ a + sigma^- a^dag) couples |down,n> and |up,n-1>
      const double c = g * std::sqrt(static_cast<double>(n));
      op.h_local(label(n, 0), label(n - 1, 1)) = c;
      op.h_local(label(n - 1, 1), label(n, 0)) = c;
    }
  }
  op.space = LocalSpace::indexed(std::move(charges));
  op.lowering.push_back(std::move(a));
  return op;
}

LocalOperators ladder_site(double rung_coupling) {
  LocalOperators op;
  op.space = LocalSpace::ladder_rung();
  op.h_local = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd lower_a = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd lower_b = Eigen::MatrixXd::Zero(4, 4);
  op.occupation.resize(4);
  for (int k = 0; k < 4; ++k) {
    const int ma = k / 2, mb = k % 2;
    op.h_local(k, k) = rung_coupling * (2 * ma - 1) * (2 * mb - 1);
    op.occupation(k) = ma + mb;
    if (ma == 1) lower_a(k - 2, k) = 1.0;
    if (mb == 1) lower_b(k - 1, k) = 1.0;
  }
  op.lowering.push_back(std::move(lower_a));
  op.lowering.push_back(std::move(lower_b));
  return op;
}

namespace {

constexpr double kDropTolerance = 1e-14;

void check_charge_conserving(const LocalOperators& local) {
  const int d = local.space.dim();
  if (local.h_local.rows() != d || local.h_local.cols() != d) {
    throw std::invalid_argument("local Hamiltonian has the wrong shape");
  }
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (std::abs(local.h_local(r, c)) > kDropTolerance &&
          local.space.charge[static_cast<std::size_t>(r)] != local.space.charge[static_cast<std::size_t>(c)]) {
        throw std::invalid_argument("local Hamiltonian mixes charge sectors");
      }
    }
  }
}

}  // namespace

DrivenModel assemble_model(ModelKind kind, const SectorBasis& basis, LocalOperators local,
                           DriveSpec drive, ModelParams params) {
  if (drive.omega <= 0.0) throw std::invalid_argument("drive frequency must be positive");
  if (drive.j0 < 0.0) throw std::invalid_argument("hopping amplitude must be non-negative");
  check_charge_conserving(local);
  const Eigen::Index dim = basis.dim();
  const int sites = basis.sites();
  const int d = local.space.dim();
  const auto& labels = local.space.labels;

  std::vector<Eigen::Triplet<double>> static_entries;
  std::vector<Eigen::Triplet<double>> hop_entries;
  Configuration next;
  bool diagonal = true;

  for (Eigen::Index col = 0; col < dim; ++col) {
    const Configuration& c = basis.config(col);
    std::vector<int> slot(static_cast<std::size_t>(sites));
    for (int j = 0; j < sites; ++j) slot[static_cast<std::size_t>(j)] = local.space.slot(c[static_cast<std::size_t>(j)]);

    double diag = 0.0;
    for (int j = 0; j < sites; ++j) {
      const int s = slot[static_cast<std::size_t>(j)];
      diag += local.h_local(s, s);
      for (int s2 = 0; s2 < d; ++s2) {
        const double v = local.h_local(s2, s);
        if (s2 == s || std::abs(v) <= kDropTolerance) continue;
        next = c;
        next[static_cast<std::size_t>(j)] = labels[static_cast<std::size_t>(s2)];
        if (const auto row = basis.find(next)) {
          static_entries.emplace_back(*row, col, v);
          diagonal = false;
        }
      }
    }
    static_entries.emplace_back(col, col, diag);

    // A_x^dag A_y for every ordered nearest-neighbour pair (x, y).
    for (int j = 0; j + 1 < sites; ++j) {
      for (const auto& [x, y] : {std::pair{j, j + 1}, std::pair{j + 1, j}}) {
        const int sx = slot[static_cast<std::size_t>(x)];
        const int sy = slot[static_cast<std::size_t>(y)];
        for (const auto& a : local.lowering) {
          for (int ty = 0; ty < d; ++ty) {
            const double ay = a(ty, sy);
            if (std::abs(ay) <= kDropTolerance) continue;
            for (int tx = 0; tx < d; ++tx) {
              const double ax = a(sx, tx);  // <tx| A^dag |sx> = <sx| A |tx>
              if (std::abs(ax) <= kDropTolerance) continue;
              next = c;
              next[static_cast<std::size_t>(x)] = labels[static_cast<std::size_t>(tx)];
              next[static_cast<std::size_t>(y)] = labels[static_cast<std::size_t>(ty)];
              if (const auto row = basis.find(next)) hop_entries.emplace_back(*row, col, ax * ay);
            }
          }
        }
      }
    }
  }

  Eigen::SparseMatrix<double> h0(dim, dim), h_hop(dim, dim);
  h0.setFromTriplets(static_entries.begin(), static_entries.end());
  h_hop.setFromTriplets(hop_entries.begin(), hop_entries.end());
  h0.makeCompressed();
  h_hop.makeCompressed();

  std::optional<Eigen::VectorXd> h0_diag;
  if (diagonal) h0_diag = Eigen::VectorXd(h0.diagonal());

  return DrivenModel{kind,     basis,  std::move(local), std::move(h0), std::move(h0_diag),
                     std::move(h_hop), drive, params,    std::nullopt,  false};
}

namespace {

void warn_if_weakly_interacting(double interaction, double j0) {
  if (j0 > 0.0 && interaction / j0 < 10.0) {
    std::clog << "floqsim: warning: interaction/J0 = " << interaction / j0
              << " is below 10; resonance analysis assumes the strongly interacting regime\n";
  }
}

}  // namespace

DrivenModel build_bose_hubbard(int sites, int particles, int n_max, double U, double omega_local,
                               DriveSpec drive) {
  warn_if_weakly_interacting(U, drive.j0);
  drive.hop_sign = -1;
  LocalOperators local = bose_hubbard_site(n_max, U, omega_local);
  const SectorBasis basis = enumerate_sector(sites, particles, local.space);
  ModelParams params;
  params.U = U;
  params.omega_local = omega_local;
  return assemble_model(ModelKind::bose_hubbard, basis, std::move(local), drive, params);
}

DrivenModel build_spin1_xxz(int sites, double U, DriveSpec drive) {
  warn_if_weakly_interacting(U, drive.j0);
  drive.hop_sign = +1;
  LocalOperators local = spin1_site(U);
  const SectorBasis basis = enumerate_sector(sites, 0, local.space);
  ModelParams params;
  params.U = U;
  params.omega_local = 0.0;
  return assemble_model(ModelKind::spin1_xxz, basis, std::move(local), drive, params);
}

DrivenModel build_jch(int sites, int excitations, int n_max_photons, double g, double omega,
                      double omega0, DriveSpec drive) {
  warn_if_weakly_interacting(g, drive.j0);
  drive.hop_sign = -1;
  LocalOperators local = jch_site(n_max_photons, g, omega, omega0);
  const SectorBasis basis = enumerate_sector(sites, excitations, local.space);
  ModelParams params;
  params.U = 0.0;
  params.g = g;
  params.omega_local = omega;
  params.omega0 = omega0;
  return assemble_model(ModelKind::jch, basis, std::move(local), drive, params);
}

DrivenModel build_spin_ladder(int sites, double U, DriveSpec drive, std::optional<double> rung_coupling,
                              std::optional<int> up_a, std::optional<int> up_b) {
  warn_if_weakly_interacting(U, drive.j0);
  drive.hop_sign = -1;
  const double kappa = rung_coupling.value_or(0.5 * U);
  LocalOperators local = ladder_site(kappa);
  const int na = up_a.value_or(sites / 2);
  const int nb = up_b.value_or(sites / 2);
  const SectorBasis basis = enumerate_sector(sites, na + nb, local.space, nb);
  ModelParams params;
  params.U = U;
  params.omega_local = 0.0;
  params.rung_coupling = kappa;
  return assemble_model(ModelKind::spin_ladder, basis, std::move(local), drive, params);
}

Eigen::SparseMatrix<double> hamiltonian_at(const DrivenModel& model, double t) {
  return model.h0 + model.drive.amplitude(t) * model.h_hop;
}

DrivenModel restrict_to_parity(const DrivenModel& model, int sign) {
  if (model.parity) throw std::invalid_argument("model is already restricted to a parity block");
  ParityBasis parity = parity_project(model.basis, sign);
  const Eigen::SparseMatrix<double>& s = parity.isometry();
  const Eigen::SparseMatrix<double> st = s.transpose();
  DrivenModel out = model;
  out.h0 = (st * model.h0 * s).pruned(1.0, kDropTolerance);
  out.h_hop = (st * model.h_hop * s).pruned(1.0, kDropTolerance);
  out.h0.makeCompressed();
  out.h_hop.makeCompressed();
  out.h0_diag.reset();
  if (model.h0_diag) {
    // Reflection partners share their static energy, so the block stays diagonal.
    Eigen::VectorXd diag(parity.dim());
    for (Eigen::Index k = 0; k < parity.dim(); ++k) diag(k) = (*model.h0_diag)(parity.members()[static_cast<std::size_t>(k)].rep);
    out.h0_diag = diag;
  }
  out.parity = std::move(parity);
  return out;
}

double polariton_chi(int n, double g, double detuning) {
  return std::sqrt(0.25 * detuning * detuning + g * g * n);
}

PolaritonCoefficients polariton_coefficients(int n, double g, double omega, double omega0) {
  PolaritonCoefficients p;
  const double detuning = omega0 - omega;
  if (n == 0) {
    // |0,-> = |down,0>; |0,+> is unphysical
    p.gamma_minus = 1.0;
    return p;
  }
  const double theta = std::atan2(2.0 * g * std::sqrt(static_cast<double>(n)), detuning);
  p.rho_plus = std::cos(0.5 * theta);
  p.gamma_plus = std::sin(0.5 * theta);
  p.rho_minus = -p.gamma_plus;
  p.gamma_minus = p.rho_plus;
  const double chi = polariton_chi(n, g, detuning);
  p.energy_plus = n * omega + 0.5 * detuning + chi;
  p.energy_minus = n * omega + 0.5 * detuning - chi;
  return p;
}

double polariton_hopping(int n, int alpha, int alpha_prime, double g, double omega, double omega0) {
  if (n < 1) return 0.0;
  const auto lower = polariton_coefficients(n - 1, g, omega, omega0);
  const auto upper = polariton_coefficients(n, g, omega, omega0);
  const double gamma_lo = alpha > 0 ? lower.gamma_plus : lower.gamma_minus;
  const double rho_lo = alpha > 0 ? lower.rho_plus : lower.rho_minus;
  const double gamma_up = alpha_prime > 0 ? upper.gamma_plus : upper.gamma_minus;
  const double rho_up = alpha_prime > 0 ? upper.rho_plus : upper.rho_minus;
  return std::sqrt(static_cast<double>(n)) * gamma_lo * gamma_up +
         std::sqrt(static_cast<double>(n - 1)) * rho_lo * rho_up;
}

int polariton_label(int n, int branch) {
  if (n == 0) return 0;
  return branch < 0 ? 2 * n - 1 : 2 * n;
}

double jch_integer_resonance(double g, double detuning) {
  return std::abs(2.0 * polariton_chi(1, g, detuning) - polariton_chi(2, g, detuning) - 0.5 * detuning);
}

DrivenModel to_polariton_frame(const DrivenModel& model) {
  if (model.kind != ModelKind::jch) throw std::invalid_argument("polariton frame requires a JCH model");
  if (model.polariton_frame) return model;
  const int d = model.local.space.dim();
  const int n_max = d / 2 - 1;
  const double g = model.params.g, omega = model.params.omega_local, omega0 = model.params.omega0;

  // Columns of w are the dressed states in the bare (2n + up) labelling.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  std::vector<int> charges(static_cast<std::size_t>(d));
  w(0, 0) = 1.0;
  charges[0] = 0;
  for (int n = 1; n <= n_max; ++n) {
    const auto p = polariton_coefficients(n, g, omega, omega0);
    const int down_n = 2 * n, up_nm1 = 2 * (n - 1) + 1;
    const int minus = polariton_label(n, -1), plus = polariton_label(n, +1);
    w(down_n, minus) = p.gamma_minus;
    w(up_nm1, minus) = p.rho_minus;
    w(down_n, plus) = p.gamma_plus;
    w(up_nm1, plus) = p.rho_plus;
    charges[static_cast<std::size_t>(minus)] = n;
    charges[static_cast<std::size_t>(plus)] = n;
  }
  // |up, n_max> has no partner inside the photon cutoff and stays bare.
  w(d - 1, d - 1) = 1.0;
  charges[static_cast<std::size_t>(d - 1)] = n_max + 1;

  LocalOperators dressed;
  dressed.space = LocalSpace::indexed(charges);
  dressed.h_local = w.transpose() * model.local.h_local * w;
  const double off = (dressed.h_local - Eigen::MatrixXd(dressed.h_local.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (off > 1e-12 * std::max(1.0, model.local.h_local.cwiseAbs().maxCoeff())) {
    throw NonDiagonalStatic("polariton transformation failed to diagonalize the local block");
  }
  dressed.h_local = Eigen::MatrixXd(dressed.h_local.diagonal().asDiagonal());
  for (const auto& a : model.local.lowering) dressed.lowering.push_back(w.transpose() * a * w);
  dressed.occupation = Eigen::VectorXd(d);
  for (int k = 0; k < d; ++k) dressed.occupation(k) = charges[static_cast<std::size_t>(k)];

  const SectorBasis basis = enumerate_sector(model.basis.sites(), model.basis.charge(), dressed.space);
  DrivenModel out = assemble_model(ModelKind::jch, basis, std::move(dressed), model.drive, model.params);
  out.polariton_frame = true;
  if (model.parity) out = restrict_to_parity(out, model.parity->sign());
  out.polariton_frame = true;
  return out;
}

}  // namespace floqsim

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

#ifndef FLOQSIM_MODELS_HPP
#define FLOQSIM_MODELS_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "floqsim/basis.hpp"

namespace floqsim {

enum class ModelKind { bose_hubbard, spin1_xxz, jch, spin_ladder };

std::string to_string(ModelKind kind);

/// Modulated hopping J(t) = hop_sign * j0 * cos((omega + delta_omega) t).
/// Frequencies are in units of the local scale omega_local (hbar = 1).
struct DriveSpec {
  double j0 = 0.01;
  double omega = 0.4;
  int hop_sign = -1;
  double delta_omega_rel = 0.0;

  double period() const { return 2.0 * std::numbers::pi / omega; }
  double detuned_frequency() const { return omega * (1.0 + delta_omega_rel); }
  double amplitude(double t) const { return hop_sign * j0 * std::cos(detuned_frequency() * t); }
};

struct ModelParams {
  double U = 0.4;
  double omega_local = 1.0;
  double g = 0.0;
  double omega0 = 1.0;
  double rung_coupling = 0.2;
};

/// Single-site operator content shared by every site of the chain.
struct LocalOperators {
  LocalSpace space;
  Eigen::MatrixXd h_local;                // static on-site Hamiltonian, charge conserving
  std::vector<Eigen::MatrixXd> lowering;  // one annihilation-type operator per hopping flavour
  Eigen::VectorXd occupation;             // <n> of each local state, used by autocorrelations
};

/// Static part, undriven hopping operator and drive of a lattice model,
/// expressed in a working space: the full sector, or one parity block of it.
struct DrivenModel {
  ModelKind kind;
  SectorBasis basis;
  LocalOperators local;
  Eigen::SparseMatrix<double> h0;
  std::optional<Eigen::VectorXd> h0_diag;  // set iff h0 is diagonal in the working space
  Eigen::SparseMatrix<double> h_hop;
  DriveSpec drive;
  ModelParams params;
  std::optional<ParityBasis> parity;
  bool polariton_frame = false;

  Eigen::Index dim() const { return h_hop.rows(); }
  /// Identifies the working space (sector content, parity block, local frame).
  std::uint64_t space_id() const;
  /// Amplitudes over the working space mapped back onto sector configurations.
  Eigen::VectorXcd to_sector(const Eigen::VectorXcd& amps) const;
  /// Sector amplitudes projected onto the working space.
  Eigen::VectorXcd from_sector(const Eigen::VectorXcd& amps) const;
};

LocalOperators bose_hubbard_site(int n_max, double U, double omega_local);
LocalOperators spin1_site(double U);
LocalOperators jch_site(int n_max_photons, double g, double omega, double omega0);
LocalOperators ladder_site(double rung_coupling);

/// Builds h0 and h_hop = sum_j sum_flavour (A_j^dag A_{j+1} + h.c.) over a sector.
DrivenModel assemble_model(ModelKind kind, const SectorBasis& basis, LocalOperators local,
                           DriveSpec drive, ModelParams params);

DrivenModel build_bose_hubbard(int sites, int particles, int n_max, double U, double omega_local,
                               DriveSpec drive);

/// Sector S_z = 0.
DrivenModel build_spin1_xxz(int sites, double U, DriveSpec drive);

/// Excitation-number sector of the Jaynes-Cummings-Hubbard chain in the bare
/// (photon, two-level) basis; the static part is block-local, not diagonal.
DrivenModel build_jch(int sites, int excitations, int n_max_photons, double g, double omega,
                      double omega0, DriveSpec drive);

/// Two-leg spin-1/2 ladder, rung coupling (coefficient) * sigma^z_a sigma^z_b,
/// XX hopping along each leg. Up-spin counts per leg default to floor(L/2).
DrivenModel build_spin_ladder(int sites, double U, DriveSpec drive,
                              std::optional<double> rung_coupling = std::nullopt,
                              std::optional<int> up_a = std::nullopt,
                              std::optional<int> up_b = std::nullopt);

/// hbar H0 + hop_sign hbar J0 cos((Omega + dOmega) t) h_hop.
Eigen::SparseMatrix<double> hamiltonian_at(const DrivenModel& model, double t);

/// Restricts a reflection-symmetric model to one parity block.
DrivenModel restrict_to_parity(const DrivenModel& model, int sign);

// Polariton (dressed) states of the local Jaynes-Cummings block:
// |n,+-> = gamma_{n+-} |down,n> + rho_{n+-} |up,n-1>, E_n^+- = n omega + Delta/2 +- chi(n).
struct PolaritonCoefficients {
  double gamma_plus = 0.0;
  double rho_plus = 0.0;
  double gamma_minus = 1.0;
  double rho_minus = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
};

double polariton_chi(int n, double g, double detuning);
PolaritonCoefficients polariton_coefficients(int n, double g, double omega, double omega0);
/// Hopping element t_n^{alpha alpha'} between polaritonic branches (alpha = +1/-1).
double polariton_hopping(int n, int alpha, int alpha_prime, double g, double omega, double omega0);
/// Local label of |n, branch> in the polariton frame; branch is +1 or -1.
int polariton_label(int n, int branch);
/// Omega at which |1-,1-> -> |2-,0-> is resonant: 2 chi(1) - chi(2) - Delta/2.
double jch_integer_resonance(double g, double detuning);

/// Conjugates a JCH model into the per-site polariton eigenbasis, making the
/// static part diagonal. Upper-branch states are retained.
DrivenModel to_polariton_frame(const DrivenModel& model);

}  // namespace floqsim

#endif  // FLOQSIM_MODELS_HPP

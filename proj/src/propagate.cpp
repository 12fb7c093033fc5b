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

#include "floqsim/propagate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <cmath>
#include <stdexcept>
#include <string>

#include "floqsim/errors.hpp"

namespace floqsim {

namespace {

using cplx = std::complex<double>;

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

void require_same_space(std::uint64_t expected, Eigen::Index dim, const StateVector& psi) {
  if (psi.space_id != expected || psi.dim() != dim) {
    throw BasisMismatch("state does not live in the working space of the propagator");
  }
}

void check_grid(const std::vector<double>& t_grid, double t0) {
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (t_grid[k] < t0 - 1e-12 * std::max(1.0, std::abs(t0))) throw std::invalid_argument("time grid starts before the state");
    if (k > 0 && t_grid[k] < t_grid[k - 1]) throw std::invalid_argument("time grid must be ascending");
  }
}

// Walks the union of the lattice {k h} and the grid, calling step(a, b) per
// sub-interval and land(t) on every grid point.
template <typename Step, typename Land>
void walk_lattice(double t0, const std::vector<double>& t_grid, double h, Step&& step, Land&& land) {
  double current = t0;
  for (const double target : t_grid) {
    while (target - current > 1e-12 * h) {
      double next = (std::floor(current / h + 1e-9) + 1.0) * h;
      if (next - current < 1e-9 * h) next += h;
      next = std::min(next, target);
      step(current, next);
      current = next;
    }
    current = std::max(current, target);
    land(target);
  }
}

}  // namespace

StateVector make_state(const DrivenModel& model, Eigen::VectorXcd amps, double t) {
  if (amps.size() != model.dim()) throw BasisMismatch("amplitude count does not match the working space");
  if (std::abs(amps.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
  return StateVector{std::move(amps), t, model.space_id()};
}

StateVector superposition_state(const DrivenModel& model, const std::vector<Configuration>& configs) {
  if (configs.empty()) throw std::invalid_argument("superposition needs at least one configuration");
  Eigen::VectorXcd sector = Eigen::VectorXcd::Zero(model.basis.dim());
  for (const auto& c : configs) sector(model.basis.index_of(c)) += 1.0;
  sector.normalize();
  Eigen::VectorXcd working = model.from_sector(sector);
  if (std::abs(working.norm() - 1.0) > 1e-12) {
    throw BasisMismatch("superposition has weight outside the working parity block");
  }
  working.normalize();
  return make_state(model, std::move(working));
}

Eigen::MatrixXcd unitary_step(const Eigen::MatrixXd& h, double dt) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
  const Eigen::VectorXcd phase = (es.eigenvalues() * (-dt)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return v * phase.asDiagonal() * v.transpose();
}

Eigen::MatrixXcd midpoint_period_product(const DrivenModel& model, int steps) {
  if (steps < 1) throw std::invalid_argument("step count must be positive");
  const double T = model.drive.period();
  const double h = T / steps;
  const Eigen::Index dim = model.dim();
  const auto factor = [&](int k) { return unitary_step(Eigen::MatrixXd(hamiltonian_at(model, (k + 0.5) * h)), h); };

  Eigen::MatrixXcd first = Eigen::MatrixXcd::Identity(dim, dim);
  if (model.drive.delta_omega_rel == 0.0 && steps % 2 == 0) {
    // Factor k equals factor steps-1-k: U = (F_0 ... F_{m-1}) (F_{m-1} ... F_0).
    Eigen::MatrixXcd second = Eigen::MatrixXcd::Identity(dim, dim);
    for (int k = 0; k < steps / 2; ++k) {
      const Eigen::MatrixXcd f = factor(k);
      first = f * first;
      second = second * f;
    }
    return second * first;
  }
  for (int k = 0; k < steps; ++k) first = factor(k) * first;
  return first;
}

PeriodPropagator period_propagator(const DrivenModel& model, const PropagatorOptions& options) {
  if (options.steps < 1 || options.max_steps < options.steps) throw std::invalid_argument("invalid step options");
  int steps = options.steps;
  Eigen::MatrixXcd previous = midpoint_period_product(model, steps);
  double defect = 0.0;
  while (2 * steps <= options.max_steps) {
    steps *= 2;
    Eigen::MatrixXcd current = midpoint_period_product(model, steps);
    defect = operator_norm(current - previous);
    if (defect < options.tolerance) {
      // Polar factor: the nearest unitary to the accepted product.
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(current, Eigen::ComputeFullU | Eigen::ComputeFullV);
      current = svd.matrixU() * svd.matrixV().adjoint();
      return PeriodPropagator{std::move(current), model.drive.period(), steps, defect, model.space_id()};
    }
    previous = std::move(current);
  }
  throw NotConverged("period propagator not converged at " + std::to_string(steps) +
                     " steps; step-doubling defect " + std::to_string(defect));
}

std::vector<StateVector> stroboscopic_evolve(const PeriodPropagator& prop, const StateVector& psi0, int n_periods) {
  if (n_periods < 0) throw std::invalid_argument("period count must be non-negative");
  require_same_space(prop.space_id, prop.u.rows(), psi0);
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(n_periods) + 1);
  out.push_back(psi0);
  Eigen::VectorXcd v = psi0.amps;
  for (int n = 1; n <= n_periods; ++n) {
    v = prop.u * v;
    out.push_back(StateVector{v, psi0.t + n * prop.period, psi0.space_id});
  }
  return out;
}

std::vector<StateVector> continuous_evolve(const DrivenModel& model, const StateVector& psi0,
                                           const std::vector<double>& t_grid, int steps_per_period) {
  require_same_space(model.space_id(), model.dim(), psi0);
  check_grid(t_grid, psi0.t);
  if (steps_per_period < 1) throw std::invalid_argument("step count must be positive");
  std::vector<StateVector> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd v = psi0.amps;
  walk_lattice(
      psi0.t, t_grid, model.drive.period() / steps_per_period,
      [&](double a, double b) {
        v = unitary_step(Eigen::MatrixXd(hamiltonian_at(model, 0.5 * (a + b))), b - a) * v;
      },
      [&](double t) { out.push_back(StateVector{v, t, psi0.space_id}); });
  return out;
}

namespace {

// One Lanczos attempt; returns false when the subspace limit is hit before the
// error estimate drops below tolerance.
bool lanczos_step(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXcd& v, double dt,
                  const KrylovOptions& options, Eigen::VectorXcd& result, double& residual) {
  const double beta0 = v.norm();
  if (beta0 == 0.0) {
    result = v;
    residual = 0.0;
    return true;
  }
  const Eigen::Index n = v.size();
  const int max_dim = static_cast<int>(std::min<Eigen::Index>(options.max_dim, n));
  Eigen::MatrixXcd basis(n, max_dim);
  std::vector<double> alpha, beta;
  basis.col(0) = v / beta0;
  for (int j = 0; j < max_dim; ++j) {
    Eigen::VectorXcd w = h * basis.col(j);
    alpha.push_back(basis.col(j).dot(w).real());
    for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
    for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
    const double b = w.norm();

    const int m = j + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      t(k, k) = alpha[static_cast<std::size_t>(k)];
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[static_cast<std::size_t>(k)];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::MatrixXcd ev = es.eigenvectors().cast<cplx>();
    const Eigen::VectorXcd phase = (es.eigenvalues() * (-dt)).unaryExpr([](double x) { return std::polar(1.0, x); });
    const Eigen::VectorXcd y = ev * phase.asDiagonal() * ev.row(0).transpose();
    residual = beta0 * b * std::abs(y(m - 1));
    const bool invariant = b <= 1e-13 * std::max(1.0, std::abs(alpha.back()));
    if (invariant || residual < options.tolerance || m == n) {
      result = beta0 * (basis.leftCols(m) * y);
      return true;
    }
    if (m == max_dim) return false;
    beta.push_back(b);
    basis.col(m) = w / b;
  }
  return false;
}

void krylov_apply_split(const Eigen::SparseMatrix<double>& h, Eigen::VectorXcd& v, double dt,
                        const KrylovOptions& options, int depth) {
  Eigen::VectorXcd result;
  double residual = 0.0;
  if (lanczos_step(h, v, dt, options, result, residual)) {
    v = std::move(result);
    return;
  }
  if (depth >= options.max_halvings) {
    throw KrylovBreakdown("Krylov exponential did not reach tolerance after " + std::to_string(depth) + " halvings",
                          residual);
  }
  krylov_apply_split(h, v, 0.5 * dt, options, depth + 1);
  krylov_apply_split(h, v, 0.5 * dt, options, depth + 1);
}

}  // namespace

Eigen::VectorXcd krylov_expm_apply(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXcd& v, double dt,
                                   const KrylovOptions& options) {
  if (options.max_dim < 2) throw std::invalid_argument("Krylov dimension must be at least 2");
  Eigen::VectorXcd out = v;
  krylov_apply_split(h, out, dt, options, 0);
  return out;
}

std::vector<StateVector> sparse_evolve(const DrivenModel& model, const StateVector& psi0,
                                       const std::vector<double>& t_grid, const KrylovOptions& options) {
  require_same_space(model.space_id(), model.dim(), psi0);
  check_grid(t_grid, psi0.t);
  if (options.steps_per_period < 1) throw std::invalid_argument("step count must be positive");
  std::vector<StateVector> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd v = psi0.amps;
  walk_lattice(
      psi0.t, t_grid, model.drive.period() / options.steps_per_period,
      [&](double a, double b) { v = krylov_expm_apply(hamiltonian_at(model, 0.5 * (a + b)), v, b - a, options); },
      [&](double t) { out.push_back(StateVector{v, t, psi0.space_id}); });
  return out;
}

}  // namespace floqsim

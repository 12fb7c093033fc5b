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

#ifndef FLOQSIM_PROPAGATE_HPP
#define FLOQSIM_PROPAGATE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "floqsim/models.hpp"

namespace floqsim {

/// Unit-norm amplitudes over a model's working space at time t.
struct StateVector {
  Eigen::VectorXcd amps;
  double t = 0.0;
  std::uint64_t space_id = 0;

  Eigen::Index dim() const { return amps.size(); }
};

/// Wraps amplitudes of the working space; throws if the norm differs from 1 by more than 1e-10.
StateVector make_state(const DrivenModel& model, Eigen::VectorXcd amps, double t = 0.0);

/// Equal-weight normalized superposition of sector configurations, expressed
/// in the working space. Throws BasisMismatch if it leaves the working space.
StateVector superposition_state(const DrivenModel& model, const std::vector<Configuration>& configs);

struct PropagatorOptions {
  int steps = 256;           // initial midpoint steps per period
  double tolerance = 1e-8;   // operator-norm change accepted between step doublings
  int max_steps = 1 << 14;
};

/// U(T, 0) over one nominal drive period.
struct PeriodPropagator {
  Eigen::MatrixXcd u;
  double period = 0.0;
  int steps = 0;
  double defect = 0.0;  // ||U_steps - U_{steps/2}||_2
  std::uint64_t space_id = 0;
};

/// exp(-i H dt) of a real symmetric generator.
Eigen::MatrixXcd unitary_step(const Eigen::MatrixXd& h, double dt);

/// Product of midpoint factors over one period at a fixed step count.
Eigen::MatrixXcd midpoint_period_product(const DrivenModel& model, int steps);

/// Doubles the step count until the propagator changes by less than the tolerance.
PeriodPropagator period_propagator(const DrivenModel& model, const PropagatorOptions& options = {});

/// States at t = 0, T, ..., n T.
std::vector<StateVector> stroboscopic_evolve(const PeriodPropagator& prop, const StateVector& psi0, int n_periods);

/// Piecewise-constant midpoint evolution landing on every grid time; the step
/// never exceeds T / steps_per_period.
std::vector<StateVector> continuous_evolve(const DrivenModel& model, const StateVector& psi0,
                                           const std::vector<double>& t_grid, int steps_per_period = 256);

struct KrylovOptions {
  int steps_per_period = 256;
  int max_dim = 40;
  double tolerance = 1e-12;  // per-step error estimate of the Lanczos exponential
  int max_halvings = 12;
};

/// Lanczos exponential of a Hermitian sparse generator applied to v.
Eigen::VectorXcd krylov_expm_apply(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXcd& v, double dt,
                                   const KrylovOptions& options = {});

/// Same stepping lattice as continuous_evolve with Krylov exponentials.
std::vector<StateVector> sparse_evolve(const DrivenModel& model, const StateVector& psi0,
                                       const std::vector<double>& t_grid, const KrylovOptions& options = {});

}  // namespace floqsim

#endif  // FLOQSIM_PROPAGATE_HPP

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

#ifndef FLOQSIM_FLOQUET_HPP
#define FLOQSIM_FLOQUET_HPP

#include <Eigen/Core>
#include <array>
#include <complex>
#include <vector>

#include "floqsim/models.hpp"

namespace floqsim {

using cplx = std::complex<double>;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` equal panels.
template <typename F>
auto integrate(F&& f, double a, double b, int panels, int order = 8) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  decltype(f(a)) sum{};
  bool first = true;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      auto term = f(mid + 0.5 * h * rule.nodes[k]) * (0.5 * h * rule.weights[k]);
      if (first) {
        sum = term;
        first = false;
      } else {
        sum += term;
      }
    }
  }
  return sum;
}

struct QuadratureReport {
  int nodes = 0;        // nodes per integration dimension of the accepted rule
  double error = 0.0;   // max-abs change against the half-resolution rule
};

struct MagnusResult {
  Eigen::MatrixXcd hf0;
  Eigen::MatrixXcd hf1;
  double period = 0.0;
  QuadratureReport report0;
  QuadratureReport report1;
};

/// e^{i H0 t} H1(t) e^{-i H0 t} for a model whose static part is diagonal.
Eigen::MatrixXcd rotating_frame_hamiltonian(const DrivenModel& model, double t);

/// (1/T) int_0^T cos(Omega t) e^{i a t} dt with T = 2 pi / Omega, in closed form.
cplx drive_average(double omega, double a);

/// Drive average for a hop with phase rate U [branch (m_k - m_j) + 1].
cplx resonance_weight(double omega, double U, int m_j, int m_k, int branch = +1);

struct FractionalWeights {
  cplx f1;
  cplx f2;
  double error = 0.0;
  int panels = 0;
};

/// Nested second-order weights of a next-nearest-neighbour process l -> j via k,
/// with unit drive amplitude cos(Omega t).
FractionalWeights fractional_weight(double omega, double U, int m_j, int m_k, int m_l);

Eigen::MatrixXcd magnus_h0(const DrivenModel& model, QuadratureReport* report = nullptr);
Eigen::MatrixXcd magnus_h1(const DrivenModel& model, QuadratureReport* report = nullptr);
MagnusResult magnus(const DrivenModel& model);

/// Closed-form two-level description of the Bose-Hubbard trimer at the
/// fractional resonance, H = [[a, b], [b, c]] on {psi0, psi3}.
struct TrimerOracle {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double lambda = 0.0;

  static TrimerOracle at(double j0, double U);
  /// Amplitudes on psi0 and psi3 starting from psi0.
  std::array<cplx, 2> amplitudes(double t) const;
  /// (P0, P3)
  std::array<double, 2> populations(double t) const;
  /// Time of maximal transfer to psi3.
  double peak_time() const;
  double peak_population() const { return b * b / (lambda * lambda); }
};

/// (P0, P1, P2) at the integer resonance.
std::array<double, 3> trimer_populations_integer(double t, double j0);
/// (P0, P3) at the fractional resonance.
std::array<double, 2> trimer_populations_fractional(double t, double j0, double U);

}  // namespace floqsim

#endif  // FLOQSIM_FLOQUET_HPP

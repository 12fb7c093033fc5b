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

// Independent reference computations used as test oracles. Nothing here calls
// into the library's enumeration, assembly or quadrature code.

#ifndef FLOQSIM_TESTS_ORACLES_HPP
#define FLOQSIM_TESTS_ORACLES_HPP

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// All label vectors over `values`^L whose weights sum to `charge`, in lexicographic order.
inline std::vector<std::vector<int>> brute_force_sector(int sites, const std::vector<int>& values,
                                                        const std::function<int(int)>& weight, int charge) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(sites), 0);
  const int d = static_cast<int>(values.size());
  for (;;) {
    std::vector<int> c(static_cast<std::size_t>(sites));
    int total = 0;
    for (int j = 0; j < sites; ++j) {
      c[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      total += weight(c[static_cast<std::size_t>(j)]);
    }
    if (total == charge) out.push_back(c);
    int j = sites - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == d) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  return out;
}

/// (N+L-1)! / (N! (L-1)!) by direct factorial ratio in floating point.
inline double stars_and_bars(int sites, int particles) {
  return std::round(std::tgamma(particles + sites) / (std::tgamma(particles + 1) * std::tgamma(sites)));
}

/// Kronecker product of dense matrices.
inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// op placed on site j of an L-site chain with local dimension d (site 0 leftmost factor).
inline Eigen::MatrixXd site_operator(const Eigen::MatrixXd& op, int j, int sites) {
  const auto d = op.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int s = 0; s < sites; ++s) out = kron(out, s == j ? op : Eigen::MatrixXd(Eigen::MatrixXd::Identity(d, d)));
  return out;
}

/// Product-space index of a configuration of local slots, site 0 most significant.
inline Eigen::Index product_index(const std::vector<int>& slots, int d) {
  Eigen::Index idx = 0;
  for (const int s : slots) idx = idx * d + s;
  return idx;
}

/// int_0^T e^{i g t} dt
inline cplx exp_integral(double g, double T) {
  if (std::abs(g) * T < 1e-12) return T;
  return (std::polar(1.0, g * T) - 1.0) / cplx{0.0, g};
}

/// int_0^T dt1 e^{i a t1} int_0^{t1} dt2 e^{i b t2}
inline cplx nested_exp_integral(double a, double b, double T) {
  const cplx i{0.0, 1.0};
  if (std::abs(b) * T < 1e-12) {
    // int_0^T t e^{i a t} dt
    if (std::abs(a) * T < 1e-12) return 0.5 * T * T;
    return T * std::polar(1.0, a * T) / (i * a) + (std::polar(1.0, a * T) - 1.0) / (a * a);
  }
  return (exp_integral(a + b, T) - exp_integral(a, T)) / (i * b);
}

/// Closed form of (1/(2 T i)) int int_{t2<t1} cos(W t1) cos(W t2) e^{i p t1} e^{i q t2}.
inline cplx nested_weight_exact(double omega, double p, double q) {
  const double T = 2.0 * std::numbers::pi / omega;
  cplx sum{};
  for (const int s1 : {-1, 1})
    for (const int s2 : {-1, 1}) sum += 0.25 * nested_exp_integral(p + s1 * omega, q + s2 * omega, T);
  return sum / (2.0 * T * cplx{0.0, 1.0});
}

/// Nested Riemann sum with n outer midpoints and a cumulative midpoint inner
/// sum, Richardson-extrapolated from n and 2n points.
inline cplx nested_weight_riemann(double omega, double p, double q, long n) {
  const double T = 2.0 * std::numbers::pi / omega;
  const auto riemann = [&](long m) {
    const double h = T / static_cast<double>(m);
    cplx inner{}, total{};
    for (long k = 0; k < m; ++k) {
      const double t1 = (static_cast<double>(k) + 0.5) * h;
      // inner integral up to k h, plus the half cell [k h, t1] by its midpoint
      const double tq = (static_cast<double>(k) + 0.25) * h;
      const cplx partial = inner + 0.5 * h * std::cos(omega * tq) * std::polar(1.0, q * tq);
      total += h * std::cos(omega * t1) * std::polar(1.0, p * t1) * partial;
      inner += h * std::cos(omega * t1) * std::polar(1.0, q * t1);
    }
    return total / (2.0 * T * cplx{0.0, 1.0});
  };
  return (4.0 * riemann(2 * n) - riemann(n)) / 3.0;
}

}  // namespace oracle

#endif  // FLOQSIM_TESTS_ORACLES_HPP

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

#include "floqsim/floquet.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "floqsim/errors.hpp"

namespace floqsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRuleOrder = 32;

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Hopping pattern with one phase rate per stored entry, shared by all Magnus terms.
struct RotatingPattern {
  Eigen::SparseMatrix<cplx> matrix;  // pattern of h_hop; values overwritten per time
  std::vector<double> hop_value;     // h_hop entry, in storage order
  std::vector<int> rate_index;       // index into rates, in storage order
  std::vector<double> rates;         // distinct E_r - E_c

  explicit RotatingPattern(const DrivenModel& model) {
    if (!model.h0_diag) throw NonDiagonalStatic("rotating frame requires a diagonal static part");
    const Eigen::VectorXd& e = *model.h0_diag;
    matrix = model.h_hop.cast<cplx>();
    matrix.makeCompressed();
    std::vector<double> raw;
    for (int col = 0; col < model.h_hop.outerSize(); ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(model.h_hop, col); it; ++it) {
        hop_value.push_back(it.value());
        raw.push_back(e(it.row()) - e(it.col()));
      }
    }
    rates = raw;
    std::sort(rates.begin(), rates.end());
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
    rates.erase(std::unique(rates.begin(), rates.end(),
                            [scale](double x, double y) { return std::abs(x - y) <= 1e-13 * scale; }),
                rates.end());
    rate_index.reserve(raw.size());
    for (double r : raw) {
      const auto it = std::lower_bound(rates.begin(), rates.end(), r - 1e-13 * scale);
      rate_index.push_back(static_cast<int>(it - rates.begin()));
    }
  }

  // Fills the pattern with value * coeff[rate] for every stored entry.
  const Eigen::SparseMatrix<cplx>& fill(const std::vector<cplx>& coeff) {
    cplx* values = matrix.valuePtr();
    for (std::size_t k = 0; k < hop_value.size(); ++k) values[k] = hop_value[k] * coeff[static_cast<std::size_t>(rate_index[k])];
    return matrix;
  }

  Eigen::MatrixXcd dense(const std::vector<cplx>& coeff) { return Eigen::MatrixXcd(fill(coeff)); }
};

void check_periodicity(const DrivenModel& model, const RotatingPattern& pattern) {
  const double T = model.drive.period();
  const double a0 = model.drive.amplitude(0.0);
  const double aT = model.drive.amplitude(T);
  double diff = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < pattern.hop_value.size(); ++k) {
    const double rate = pattern.rates[static_cast<std::size_t>(pattern.rate_index[k])];
    const cplx h0 = a0 * pattern.hop_value[k];
    const cplx hT = aT * pattern.hop_value[k] * std::polar(1.0, rate * T);
    diff += std::norm(h0 - hT);
    norm += std::norm(h0);
  }
  if (std::sqrt(diff) > 1e-8 * std::sqrt(norm)) {
    throw PeriodicityViolation("rotating-frame Hamiltonian is not periodic with the drive period; relative defect " +
                               std::to_string(std::sqrt(diff / std::max(norm, 1e-300))));
  }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> r;
    for (int k = 0; k <= kMaxRuleOrder; ++k) r.push_back(k == 0 ? GaussRule{} : build_rule(k));
    return r;
  }();
  if (n < 1 || n > kMaxRuleOrder) throw std::invalid_argument("Gauss-Legendre order out of range");
  return rules[static_cast<std::size_t>(n)];
}

Eigen::MatrixXcd rotating_frame_hamiltonian(const DrivenModel& model, double t) {
  RotatingPattern pattern(model);
  const double amp = model.drive.amplitude(t);
  std::vector<cplx> coeff;
  coeff.reserve(pattern.rates.size());
  for (double r : pattern.rates) coeff.push_back(amp * std::polar(1.0, r * t));
  return pattern.dense(coeff);
}

cplx drive_average(double omega, double a) {
  if (omega <= 0.0) throw std::invalid_argument("drive frequency must be positive");
  const double tol = 1e-12 * omega;
  if (std::abs(a - omega) < tol || std::abs(a + omega) < tol) return {0.5, 0.0};
  const double T = 2.0 * kPi / omega;
  const cplx i{0.0, 1.0};
  return i * a * omega * (1.0 - std::polar(1.0, a * T)) / (2.0 * kPi * (a * a - omega * omega));
}

cplx resonance_weight(double omega, double U, int m_j, int m_k, int branch) {
  if (U <= 0.0) throw std::invalid_argument("interaction must be positive");
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  return drive_average(omega, U * (branch * (m_k - m_j) + 1));
}

FractionalWeights fractional_weight(double omega, double U, int m_j, int m_k, int m_l) {
  if (omega <= 0.0 || U <= 0.0) throw std::invalid_argument("frequencies must be positive");
  const double T = 2.0 * kPi / omega;
  const double p = U * (m_j - m_k);
  const double q1 = U * (1 + m_k - m_l);
  const double q2 = U * (m_k - m_l);
  const cplx prefactor = 1.0 / (2.0 * T * cplx{0.0, 1.0});
  const GaussRule& rule = gauss_legendre(8);

  // Outer integral on panels; the inner integral is accumulated panel by panel
  // and completed inside the current panel with the same rule.
  const auto evaluate = [&](int panels) {
    const double h = T / panels;
    cplx cum1{}, cum2{}, f1{}, f2{};
    const auto inner = [&](double a, double b, cplx& s1, cplx& s2) {
      s1 = s2 = {};
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t2 = mid + half * rule.nodes[k];
        const double w = half * rule.weights[k] * std::cos(omega * t2);
        s1 += w * std::polar(1.0, q1 * t2);
        s2 += w * std::polar(1.0, q2 * t2);
      }
    };
    for (int panel = 0; panel < panels; ++panel) {
      const double start = panel * h;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t1 = start + 0.5 * h * (1.0 + rule.nodes[k]);
        cplx g1, g2;
        inner(start, t1, g1, g2);
        const cplx outer = 0.5 * h * rule.weights[k] * std::cos(omega * t1) * std::polar(1.0, p * t1);
        f1 += outer * (cum1 + g1);
        f2 += outer * (cum2 + g2);
      }
      cplx g1, g2;
      inner(start, start + h, g1, g2);
      cum1 += g1;
      cum2 += g2;
    }
    return std::pair{prefactor * f1, prefactor * f2};
  };

  const double oscillations = (std::abs(p) + std::abs(q1) + std::abs(q2) + 2.0 * omega) * T / (2.0 * kPi);
  int panels = std::max(6, static_cast<int>(std::ceil(2.0 * oscillations)));
  constexpr int kPanelCap = 1 << 20;
  auto coarse = evaluate(panels);
  FractionalWeights out;
  for (;;) {
    const auto fine = evaluate(2 * panels);
    panels *= 2;
    out.f1 = fine.first;
    out.f2 = fine.second;
    out.error = std::max(std::abs(fine.first - coarse.first), std::abs(fine.second - coarse.second));
    out.panels = panels;
    if (out.error <= 1e-13 * std::max(1.0, std::abs(out.f1)) || 2 * panels > kPanelCap) break;
    coarse = fine;
  }
  if (out.error > 1e-8 * std::max(1.0, std::abs(out.f1))) {
    throw QuadratureNotConverged("fractional weight quadrature error " + std::to_string(out.error));
  }
  return out;
}

// Acceptance: estimated error <= 1e-8 max(|result|, scale), where scale is the
// natural unit of the term (J0 for the average, J0^2 / Omega for the commutator).
Eigen::MatrixXcd magnus_h0(const DrivenModel& model, QuadratureReport* report) {
  RotatingPattern pattern(model);
  check_periodicity(model, pattern);
  const double T = model.drive.period();
  const auto averages = [&](int panels) {
    std::vector<cplx> coeff;
    coeff.reserve(pattern.rates.size());
    for (double r : pattern.rates) {
      coeff.push_back(integrate([&](double t) { return model.drive.amplitude(t) * std::polar(1.0, r * t); }, 0.0, T,
                                panels) /
                      T);
    }
    return coeff;
  };
  const Eigen::MatrixXcd coarse = pattern.dense(averages(32));
  const Eigen::MatrixXcd fine = pattern.dense(averages(64));
  const double error = max_abs(fine - coarse);
  if (report) *report = {64 * 8, error};
  if (error > 1e-8 * std::max(max_abs(fine), model.drive.j0)) {
    throw QuadratureNotConverged("zeroth-order Magnus quadrature error " + std::to_string(error));
  }
  return fine;
}

Eigen::MatrixXcd magnus_h1(const DrivenModel& model, QuadratureReport* report) {
  RotatingPattern pattern(model);
  check_periodicity(model, pattern);
  const double T = model.drive.period();
  const Eigen::Index dim = model.dim();
  const GaussRule& rule = gauss_legendre(8);

  // hf1 = 1/(2 T i) int_0^T dt1 [H(t1), G(t1)], G(t1) = t1 int_0^1 H(u t1) du.
  const auto evaluate = [&](int panels) {
    std::vector<double> u_nodes, u_weights;
    const double hu = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        u_nodes.push_back((p + 0.5 * (1.0 + rule.nodes[k])) * hu);
        u_weights.push_back(0.5 * hu * rule.weights[k]);
      }
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<cplx> h_coeff(pattern.rates.size()), g_coeff(pattern.rates.size());
    const double ht = T / panels;
    for (int p = 0; p < panels; ++p) {
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t1 = (p + 0.5 * (1.0 + rule.nodes[k])) * ht;
        const double w1 = 0.5 * ht * rule.weights[k];
        const double amp1 = model.drive.amplitude(t1);
        for (std::size_t r = 0; r < pattern.rates.size(); ++r) {
          const double rate = pattern.rates[r];
          h_coeff[r] = amp1 * std::polar(1.0, rate * t1);
          cplx g{};
          for (std::size_t m = 0; m < u_nodes.size(); ++m) {
            const double t2 = u_nodes[m] * t1;
            g += u_weights[m] * model.drive.amplitude(t2) * std::polar(1.0, rate * t2);
          }
          g_coeff[r] = t1 * g;
        }
        const Eigen::SparseMatrix<cplx> h = pattern.fill(h_coeff);
        const Eigen::SparseMatrix<cplx> gm = pattern.fill(g_coeff);
        const Eigen::SparseMatrix<cplx> comm = h * gm - gm * h;
        for (int col = 0; col < comm.outerSize(); ++col) {
          for (Eigen::SparseMatrix<cplx>::InnerIterator it(comm, col); it; ++it) acc(it.row(), it.col()) += w1 * it.value();
        }
      }
    }
    return Eigen::MatrixXcd(acc / (2.0 * T * cplx{0.0, 1.0}));
  };

  const Eigen::MatrixXcd coarse = evaluate(6);
  const Eigen::MatrixXcd fine = evaluate(12);
  const double error = max_abs(fine - coarse);
  if (report) *report = {12 * 8, error};
  const double scale = model.drive.j0 * model.drive.j0 / model.drive.omega;
  if (error > 1e-8 * std::max(max_abs(fine), scale)) {
    throw QuadratureNotConverged("first-order Magnus quadrature error " + std::to_string(error));
  }
  return fine;
}

MagnusResult magnus(const DrivenModel& model) {
  MagnusResult out;
  out.period = model.drive.period();
  out.hf0 = magnus_h0(model, &out.report0);
  out.hf1 = magnus_h1(model, &out.report1);
  return out;
}

TrimerOracle TrimerOracle::at(double j0, double U) {
  if (j0 <= 0.0 || U <= 0.0) throw std::invalid_argument("trimer oracle needs positive J0 and U");
  TrimerOracle o;
  o.a = 16.0 * j0 * j0 / (3.0 * U);
  o.b = 3.0 * j0 * j0 / U;
  o.c = 4.0 * j0 * j0 / (5.0 * U);
  o.lambda = 0.5 * std::sqrt((o.a - o.c) * (o.a - o.c) + 4.0 * o.b * o.b);
  return o;
}

std::array<cplx, 2> TrimerOracle::amplitudes(double t) const {
  const cplx i{0.0, 1.0};
  const cplx c0 = ((2.0 * lambda + a - c) * std::exp(-0.5 * i * t * (2.0 * lambda + a + c)) +
                   (2.0 * lambda - a + c) * std::exp(0.5 * i * t * (2.0 * lambda - a - c))) /
                  (4.0 * lambda);
  const cplx c1 = -i * b * std::exp(-0.5 * i * t * (a + c)) * std::sin(lambda * t) / lambda;
  return {c0, c1};
}

std::array<double, 2> TrimerOracle::populations(double t) const {
  const double l2 = lambda * lambda;
  const double p0 = (2.0 * b * b * std::cos(2.0 * lambda * t) + (a - c) * (a - c) + 2.0 * b * b) / (4.0 * l2);
  const double p3 = b * b * (1.0 - std::cos(2.0 * lambda * t)) / (2.0 * l2);
  return {p0, p3};
}

double TrimerOracle::peak_time() const { return 0.5 * kPi / lambda; }

std::array<double, 3> trimer_populations_integer(double t, double j0) {
  const double s = std::sin(std::numbers::sqrt2 * j0 * t);
  const double c = std::cos(std::numbers::sqrt2 * j0 * t);
  return {c * c, 0.5 * s * s, 0.5 * s * s};
}

std::array<double, 2> trimer_populations_fractional(double t, double j0, double U) {
  return TrimerOracle::at(j0, U).populations(t);
}

}  // namespace floqsim

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

#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <numbers>

#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/propagate.hpp"
#include "oracles.hpp"

using namespace floqsim;

namespace {

constexpr double kJ0 = 0.01;
constexpr double kU = 0.4;

DrivenModel trimer(double omega, int parity = +1) {
  DriveSpec d;
  d.j0 = kJ0;
  d.omega = omega;
  const auto m = build_bose_hubbard(3, 3, 3, kU, 1.0, d);
  return parity == 0 ? m : restrict_to_parity(m, parity);
}

Eigen::Index member(const DrivenModel& m, const Configuration& c) { return *m.parity->member_of(m.basis.index_of(c)); }

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (const int n : {1, 2, 5, 8, 16}) {
    const auto& rule = gauss_legendre(n);
    double w = 0.0, top = 0.0;
    for (int k = 0; k < n; ++k) {
      w += rule.weights[static_cast<std::size_t>(k)];
      top += rule.weights[static_cast<std::size_t>(k)] * std::pow(rule.nodes[static_cast<std::size_t>(k)], 2 * n - 2);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(top == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("rotating-frame Hamiltonian") {
  const auto m = trimer(kU);
  const Eigen::MatrixXcd h0 = rotating_frame_hamiltonian(m, 0.0);
  CHECK((h0 - Eigen::MatrixXcd((-kJ0 * m.h_hop).cast<cplx>())).norm() < 1e-15);

  const Eigen::Index p0 = member(m, {1, 1, 1}), p1 = member(m, {0, 2, 1});
  for (const double t : {0.3, 4.0, 11.0}) {
    const Eigen::MatrixXcd h = rotating_frame_hamiltonian(m, t);
    const cplx expected = -2.0 * kJ0 * std::cos(kU * t) * std::polar(1.0, kU * t);
    CHECK(std::abs(h(p1, p0) - expected) < 1e-14);
    CHECK((h - h.adjoint()).norm() < 1e-15);
    // e^{i H0 t} H1(t) e^{-i H0 t}
    const Eigen::MatrixXcd u = (cplx{0.0, 1.0} * t * Eigen::MatrixXd(m.h0).cast<cplx>()).exp();
    const Eigen::MatrixXcd direct = u * (m.drive.amplitude(t) * Eigen::MatrixXd(m.h_hop)).cast<cplx>() * u.adjoint();
    CHECK((h - direct).norm() < 1e-12);
  }

  const auto frac = trimer(0.5 * kU);
  const double T = 4.0 * std::numbers::pi / kU;
  for (const double t : {0.0, 2.5, 17.0}) {
    CHECK((rotating_frame_hamiltonian(frac, t) - rotating_frame_hamiltonian(frac, t + T)).norm() < 1e-13);
  }
  DriveSpec d;
  CHECK_THROWS_AS(rotating_frame_hamiltonian(build_jch(2, 2, 2, 0.4, 1.0, 1.0, d), 0.0), NonDiagonalStatic);
}

TEST_CASE("resonance weight closed form") {
  CHECK(std::abs(resonance_weight(kU, kU, 1, 1, +1) - 0.5) < 1e-15);
  CHECK(std::abs(resonance_weight(0.5 * kU, kU, 1, 1)) < 1e-15);
  CHECK(std::abs(resonance_weight(kU / 3.0, kU, 0, 0)) < 1e-15);
  CHECK(std::abs(resonance_weight(kU / 4.0, kU, 2, 2)) < 1e-15);
  CHECK(std::abs(resonance_weight(kU, kU, 2, 0, +1) - 0.5) < 1e-15);  // a = -U
  CHECK(std::abs(resonance_weight(kU, kU, 0, 2, -1) - 0.5) < 1e-15);
  for (const double x : {0.13, 0.5, 0.77, 1.0, 1.21, 1.5}) {
    for (const int mk : {0, 1, 2, 3}) {
      for (const int branch : {-1, 1}) {
        const double omega = x * kU;
        const double a = kU * (branch * (mk - 1) + 1);
        const double T = 2.0 * std::numbers::pi / omega;
        const cplx expected = (oracle::exp_integral(a + omega, T) + oracle::exp_integral(a - omega, T)) / (2.0 * T);
        CHECK(std::abs(resonance_weight(omega, kU, 1, mk, branch) - expected) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(resonance_weight(0.0, kU, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(resonance_weight(kU, kU, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("fractional weights against independent oracles") {
  const std::vector<std::array<int, 3>> labels{{0, 1, 2}, {1, 1, 1}, {2, 1, 0}, {1, 2, 1}, {0, 2, 1}};
  for (const double x : {0.31, 0.4825, 0.5, 0.73, 1.0, 1.4}) {
    for (const auto& [mj, mk, ml] : labels) {
      const double omega = x * kU;
      const auto w = fractional_weight(omega, kU, mj, mk, ml);
      const double p = kU * (mj - mk);
      const cplx f1 = oracle::nested_weight_exact(omega, p, kU * (1 + mk - ml));
      const cplx f2 = oracle::nested_weight_exact(omega, p, kU * (mk - ml));
      CHECK(std::abs(w.f1 - f1) < 1e-11);
      CHECK(std::abs(w.f2 - f2) < 1e-11);
      CHECK(w.error <= 1e-8 * std::max(1.0, std::abs(w.f1)));
    }
  }
  // dense Riemann oracle with 10^6 outer points
  for (const auto& [mj, mk, ml] : labels) {
    const double omega = 0.47 * kU;
    const auto w = fractional_weight(omega, kU, mj, mk, ml);
    const cplx r = oracle::nested_weight_riemann(omega, kU * (mj - mk), kU * (1 + mk - ml), 1'000'000);
    CHECK(std::abs(w.f1 - r) < 1e-6);
  }
}

TEST_CASE("second fractional weight vanishes at half the interaction for trimer labels") {
  for (const auto& [mj, mk, ml] : std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 1, 1}, {2, 1, 0}}) {
    CHECK(std::abs(fractional_weight(0.5 * kU, kU, mj, mk, ml).f2) < 1e-12);
  }
}

TEST_CASE("zeroth-order Magnus term") {
  SUBCASE("integer drive couples psi0 to psi1 and psi2") {
    const auto m = trimer(kU);
    QuadratureReport report;
    const Eigen::MatrixXcd hf0 = magnus_h0(m, &report);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(m.dim(), m.dim());
    const Eigen::Index p0 = member(m, {1, 1, 1}), p1 = member(m, {0, 2, 1}), p2 = member(m, {1, 0, 2});
    expected(p0, p1) = expected(p1, p0) = expected(p0, p2) = expected(p2, p0) = -kJ0;
    CHECK((hf0 - expected).cwiseAbs().maxCoeff() < 1e-8 * kJ0);
    CHECK(report.nodes == 512);
    CHECK(report.error < 1e-14);
  }
  SUBCASE("fractional drive gives zero") {
    CHECK(magnus_h0(trimer(0.5 * kU)).cwiseAbs().maxCoeff() < 1e-8 * kJ0);
    DriveSpec d;
    d.omega = 0.5 * kU;
    const auto five = restrict_to_parity(build_bose_hubbard(5, 5, 5, kU, 1.0, d), +1);
    CHECK(magnus_h0(five).cwiseAbs().maxCoeff() < 1e-8 * kJ0);
  }
  SUBCASE("elementwise equal to the closed-form drive average") {
    for (const double x : {0.25, 1.0 / 3.0, 0.5, 1.0}) {
      const auto m = trimer(x * kU, 0);
      const Eigen::MatrixXcd hf0 = magnus_h0(m);
      const Eigen::MatrixXd hop = Eigen::MatrixXd(m.h_hop);
      const Eigen::VectorXd& e = *m.h0_diag;
      for (Eigen::Index r = 0; r < m.dim(); ++r)
        for (Eigen::Index c = 0; c < m.dim(); ++c) {
          const cplx expected = m.drive.hop_sign * kJ0 * hop(r, c) * drive_average(x * kU, e(r) - e(c));
          CHECK(std::abs(hf0(r, c) - expected) < 1e-12 * kJ0);
        }
    }
  }
  SUBCASE("detuned drive is not periodic") {
    DriveSpec d;
    d.omega = 0.5 * kU;
    d.delta_omega_rel = 0.05;
    CHECK_THROWS_AS(magnus_h0(build_bose_hubbard(3, 3, 3, kU, 1.0, d)), PeriodicityViolation);
  }
}

TEST_CASE("first-order Magnus term") {
  const double unit = kJ0 * kJ0 / kU;
  SUBCASE("fractional trimer two-level block") {
    const auto m = trimer(0.5 * kU);
    QuadratureReport report;
    const Eigen::MatrixXcd hf1 = magnus_h1(m, &report);
    CHECK((hf1 - hf1.adjoint()).norm() < 1e-10 * unit);
    const Eigen::Index p0 = member(m, {1, 1, 1}), p3 = member(m, {0, 1, 2});
    // Block entries are negative; the exact one-period propagator has the same sign.
    CHECK(hf1(p0, p0).real() / unit == doctest::Approx(-16.0 / 3.0).epsilon(1e-6));
    CHECK(hf1(p3, p3).real() / unit == doctest::Approx(-4.0 / 5.0).epsilon(1e-6));
    CHECK(hf1(p0, p3).real() / unit == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(std::abs(hf1(p0, p3).imag()) < 1e-9 * unit);

    const PeriodPropagator prop = period_propagator(m);
    const Eigen::MatrixXcd log_u = prop.u.log();
    const Eigen::MatrixXcd h_eff = cplx{0.0, 1.0} * log_u / prop.period;
    // remove the global phase of the omega N term
    const cplx shift = h_eff(p0, p0) - hf1(p0, p0);
    const Eigen::MatrixXcd diff = h_eff - shift * Eigen::MatrixXcd::Identity(m.dim(), m.dim());
    CHECK(std::abs(diff(p0, p3) - hf1(p0, p3)) < 0.05 * std::abs(hf1(p0, p3)));
    CHECK(std::abs(diff(p3, p3) - hf1(p3, p3)) < 0.05 * std::abs(hf1(p0, p0)));
  }
  SUBCASE("integer trimer entries are of order J0^2/U") {
    const Eigen::MatrixXcd hf1 = magnus_h1(trimer(kU));
    CHECK(hf1.cwiseAbs().maxCoeff() <= 10.0 * unit);
    CHECK((hf1 - hf1.adjoint()).norm() < 1e-10 * unit);
  }
  SUBCASE("both orders are parity block diagonal") {
    const auto m = trimer(0.5 * kU, 0);
    const MagnusResult r = magnus(m);
    const Eigen::MatrixXcd sp = Eigen::MatrixXd(parity_project(m.basis, +1).isometry()).cast<cplx>();
    const Eigen::MatrixXcd sm = Eigen::MatrixXd(parity_project(m.basis, -1).isometry()).cast<cplx>();
    CHECK((sp.adjoint() * r.hf0 * sm).norm() < 1e-8 * kJ0);
    CHECK((sp.adjoint() * r.hf1 * sm).norm() < 1e-8 * unit);
    CHECK(r.period == doctest::Approx(4.0 * std::numbers::pi / kU));
  }
}

TEST_CASE("trimer closed forms") {
  const auto p = trimer_populations_integer(0.0, kJ0);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  const double quarter = std::numbers::pi / (2.0 * std::sqrt(2.0) * kJ0);
  const auto q = trimer_populations_integer(quarter, kJ0);
  CHECK(q[0] == doctest::Approx(0.0));
  CHECK(q[1] == doctest::Approx(0.5));
  CHECK(q[2] == doctest::Approx(0.5));
  CHECK(quarter / (2.0 * std::numbers::pi / kU) == doctest::Approx(10.0 / std::sqrt(2.0)));

  const auto o = TrimerOracle::at(kJ0, kU);
  CHECK(o.lambda / (kJ0 * kJ0 / kU) == doctest::Approx(3.7600).epsilon(1e-4));
  CHECK(o.peak_population() == doctest::Approx(0.6366).epsilon(1e-4));
  CHECK(o.peak_time() / (4.0 * std::numbers::pi / kU) == doctest::Approx(53.19).epsilon(1e-3));
  const auto f0 = trimer_populations_fractional(0.0, kJ0, kU);
  CHECK(f0[0] == doctest::Approx(1.0));
  CHECK(f0[1] == doctest::Approx(0.0));

  Eigen::Matrix2cd h;
  h << o.a, o.b, o.b, o.c;
  for (const double t : {0.0, 1e3, 3.3e4, 1e5}) {
    const auto ip = trimer_populations_integer(t, kJ0);
    CHECK(ip[0] + ip[1] + ip[2] == doctest::Approx(1.0));
    const auto fp = o.populations(t);
    const auto c = o.amplitudes(t);
    CHECK(std::norm(c[0]) == doctest::Approx(fp[0]));
    CHECK(std::norm(c[1]) == doctest::Approx(fp[1]));
    CHECK(fp[0] + fp[1] == doctest::Approx(1.0));
    // i dc/dt = H c
    const double dt = 1.0;
    const auto cp = o.amplitudes(t + dt), cm = o.amplitudes(t - dt);
    Eigen::Vector2cd v(c[0], c[1]), deriv((cp[0] - cm[0]) / (2 * dt), (cp[1] - cm[1]) / (2 * dt));
    CHECK((cplx{0.0, 1.0} * deriv - h * v).norm() < 1e-9);
  }
}

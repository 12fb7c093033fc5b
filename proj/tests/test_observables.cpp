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
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "floqsim/errors.hpp"
#include "floqsim/observables.hpp"
#include "oracles.hpp"

using namespace floqsim;

namespace {

using cplx = std::complex<double>;
constexpr double kJ0 = 0.01;
constexpr double kU = 0.4;

DrivenModel chain(int sites, int particles, int n_max, double omega = kU, double j0 = kJ0) {
  DriveSpec d;
  d.j0 = j0;
  d.omega = omega;
  return build_bose_hubbard(sites, particles, n_max, kU, 1.0, d);
}

StateVector random_state(const DrivenModel& m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(m.dim());
  for (auto& x : v) x = {g(rng), g(rng)};
  return make_state(m, v.normalized());
}

// Entropy from a direct SVD of the (left x right) product-space matrix.
double svd_entropy(const DrivenModel& m, const Eigen::VectorXcd& sector_amps, int cut) {
  const int d = m.basis.local().dim();
  const int left = static_cast<int>(std::pow(d, cut));
  const int right = static_cast<int>(std::pow(d, m.basis.sites() - cut));
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(left, right);
  for (Eigen::Index k = 0; k < m.basis.dim(); ++k) {
    std::vector<int> slots;
    for (const int v : m.basis.config(k)) slots.push_back(m.basis.local().slot(v));
    const Eigen::Index full = oracle::product_index(slots, d);
    psi(full / right, full % right) = sector_amps(k);
  }
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(psi).singularValues();
  double out = 0.0;
  for (const double x : s) {
    if (x * x > 1e-300) out -= x * x * std::log(x * x);
  }
  return out;
}

}  // namespace

TEST_CASE("participation ratio") {
  const auto m = chain(3, 3, 3);
  CHECK(participation_ratio(m, superposition_state(m, {{1, 1, 1}})) == doctest::Approx(1.0));
  CHECK(participation_ratio(m, superposition_state(m, {{1, 1, 1}, {0, 1, 2}})) == doctest::Approx(2.0));
  Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(m.dim(), 1.0 / std::sqrt(double(m.dim())));
  CHECK(participation_ratio(m, make_state(m, uniform)) == doctest::Approx(double(m.dim())));
  CHECK(configuration_count(m, make_state(m, uniform)) == m.dim());

  // parity-symmetric states are scored on configurations, not on the symmetrized basis
  const auto plus = restrict_to_parity(m, +1);
  const auto sym = superposition_state(plus, {{0, 1, 2}, {2, 1, 0}});
  CHECK(participation_ratio(plus, sym) == doctest::Approx(2.0));
  CHECK(configuration_count(plus, sym) == 2);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const double pr = participation_ratio(plus, random_state(plus, seed));
    CHECK(pr >= 1.0);
    CHECK(pr <= double(m.dim()));
  }
}

TEST_CASE("von Neumann entropy") {
  const auto trimer = chain(3, 3, 3);
  CHECK(std::abs(von_neumann_entropy(trimer, superposition_state(trimer, {{1, 1, 1}}), 1)) < 1e-12);

  const auto pair = chain(2, 1, 1);
  const auto bell = superposition_state(pair, {{0, 1}, {1, 0}});
  CHECK(von_neumann_entropy(pair, bell, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const auto four = chain(4, 4, 4);
  for (unsigned seed = 1; seed <= 3; ++seed) {
    const auto psi = random_state(four, seed);
    for (int cut = 1; cut < 4; ++cut) {
      const double s = von_neumann_entropy(four, psi, cut);
      CHECK(s == doctest::Approx(svd_entropy(four, psi.amps, cut)).epsilon(1e-10));
      CHECK(s >= 0.0);
      CHECK(s <= std::log(std::pow(5.0, std::min(cut, 4 - cut))) + 1e-12);
    }
  }

  // reflection symmetric states: cut k and cut L-k agree
  const auto five = restrict_to_parity(chain(5, 5, 5), +1);
  const auto psi = random_state(five, 9);
  CHECK(von_neumann_entropy(five, psi, 1) == doctest::Approx(von_neumann_entropy(five, psi, 4)).epsilon(1e-10));
  CHECK(von_neumann_entropy(five, psi, 2) == doctest::Approx(von_neumann_entropy(five, psi, 3)).epsilon(1e-10));

  CHECK_THROWS_AS(von_neumann_entropy(trimer, superposition_state(trimer, {{1, 1, 1}}), 0), CutOutOfRange);
  CHECK_THROWS_AS(von_neumann_entropy(trimer, superposition_state(trimer, {{1, 1, 1}}), 3), CutOutOfRange);
}

TEST_CASE("product-space embedding round trip") {
  for (const auto& m : {chain(4, 4, 2), chain(3, 3, 3), build_spin1_xxz(3, kU, DriveSpec{})}) {
    const auto psi = random_state(m, 4);
    const Eigen::VectorXcd full = embed_product_space(m.basis, psi.amps);
    CHECK(full.size() == static_cast<Eigen::Index>(std::pow(m.basis.local().dim(), m.basis.sites())));
    CHECK(full.norm() == doctest::Approx(1.0));
    CHECK((restrict_product_space(m.basis, full) - psi.amps).norm() < 1e-14);
  }
}

TEST_CASE("echo and populations") {
  const auto m = chain(3, 3, 3);
  const auto a = superposition_state(m, {{1, 1, 1}});
  const auto b = superposition_state(m, {{0, 1, 2}});
  CHECK(loschmidt_echo(a, a) == doctest::Approx(1.0));
  CHECK(loschmidt_echo(a, b) == 0.0);

  const auto psi = random_state(m, 3);
  StateVector rotated = psi;
  rotated.amps *= std::polar(1.0, 0.7);
  CHECK(loschmidt_echo(a, psi) == doctest::Approx(loschmidt_echo(a, rotated)));
  const auto p1 = populations(psi, {a, b});
  const auto p2 = populations(rotated, {a, b});
  CHECK(p1[0] == doctest::Approx(p2[0]));
  CHECK(p1[1] == doctest::Approx(p2[1]));

  std::vector<StateVector> complete;
  for (Eigen::Index k = 0; k < m.dim(); ++k) complete.push_back(superposition_state(m, {m.basis.config(k)}));
  const auto all = populations(psi, complete);
  CHECK(std::accumulate(all.begin(), all.end(), 0.0) == doctest::Approx(1.0));

  // integer trimer at sqrt(2) J0 t = pi/2
  const auto plus = restrict_to_parity(m, +1);
  const double t = std::numbers::pi / (2.0 * std::sqrt(2.0) * kJ0);
  const auto psi1 = superposition_state(plus, {{0, 2, 1}, {1, 2, 0}});
  const auto psi2 = superposition_state(plus, {{2, 0, 1}, {1, 0, 2}});
  const auto evolved = continuous_evolve(plus, superposition_state(plus, {{1, 1, 1}}), {t}, 1024);
  const auto p = populations(evolved.back(), {psi1, psi2});
  CHECK(std::abs(p[0] - 0.5) < 0.05);
  CHECK(std::abs(p[1] - 0.5) < 0.05);

  CHECK_THROWS_AS(populations(psi, {psi1}), BasisMismatch);
  CHECK_THROWS_AS(loschmidt_echo(psi, psi1), BasisMismatch);
}

TEST_CASE("autocorrelations") {
  const auto m = chain(3, 3, 3);
  const auto unit = superposition_state(m, {{1, 1, 1}});
  for (const double c : autocorrelations(unit, unit, m)) CHECK(c == doctest::Approx(1.0));

  const auto pair = chain(2, 1, 1);
  const auto left = superposition_state(pair, {{1, 0}});
  const auto bell = superposition_state(pair, {{0, 1}, {1, 0}});
  for (const double c : autocorrelations(left, bell, pair)) CHECK(std::abs(c) < 1e-12);
  const auto c0 = autocorrelations(left, left, pair);
  CHECK(c0[0] == doctest::Approx(1.0));
  CHECK(c0[1] == doctest::Approx(1.0));

  // spin-1 occupation is m + 1
  const auto spin = build_spin1_xxz(3, kU, DriveSpec{});
  const auto s = superposition_state(spin, {{1, -1, 0}});
  const auto occ = site_occupations(spin, s);
  CHECK(occ[0] == doctest::Approx(2.0));
  CHECK(occ[1] == doctest::Approx(0.0));
  CHECK(occ[2] == doctest::Approx(1.0));
}

TEST_CASE("heating series") {
  const auto m = chain(3, 3, 3);
  const auto unit = superposition_state(m, {{1, 1, 1}});
  CHECK(static_energy(m, unit) == doctest::Approx(3.0));

  const auto idle = restrict_to_parity(chain(3, 3, 3, kU, 0.0), +1);
  const auto psi0 = superposition_state(idle, {{1, 1, 1}, {0, 1, 2}, {2, 1, 0}});
  const auto states = stroboscopic_evolve(period_propagator(idle), psi0, 10);
  const auto series = heating_rate_series(states, idle);
  CHECK(series.size() == 10);
  for (const double r : series.column("heating_rate")) CHECK(std::abs(r) < 1e-12);
  CHECK(series.column("eps_n")[0] == doctest::Approx(static_energy(idle, psi0)));
}

TEST_CASE("integer drive entangles faster and loses the echo sooner") {
  const auto run = [](double omega) {
    const auto m = restrict_to_parity(chain(3, 3, 3, omega), +1);
    const auto psi0 = superposition_state(m, {{1, 1, 1}});
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(k * 2.0 * std::numbers::pi / kU);
    const auto states = continuous_evolve(m, psi0, grid, 1024);
    std::vector<std::pair<double, double>> out;
    for (const auto& s : states) out.emplace_back(von_neumann_entropy(m, s, 1), loschmidt_echo(psi0, s));
    return out;
  };
  const auto integer = run(kU), fractional = run(0.5 * kU);
  for (std::size_t k = 3; k < integer.size(); ++k) {
    CHECK(integer[k].first >= fractional[k].first);
    CHECK(fractional[k].second >= integer[k].second);
  }
}

TEST_CASE("series invariants and CSV layout") {
  ObservableSeries s({"a", "b"});
  s.append(0.0, {1.0, 2.0});
  s.append(2.0, {1.0 / 3.0, -4.0});
  CHECK_THROWS_AS(s.append(2.0, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(s.append(3.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(s.column("c"), std::out_of_range);
  std::ostringstream out;
  s.write_csv(out, 2.0);
  CHECK(out.str() == "t_over_T,a,b\n0,1,2\n1,0.333333333333,-4\n");
}

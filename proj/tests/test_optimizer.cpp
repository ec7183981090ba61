// Copyright 2026 The fhvqe Authors.
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

#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "fhvqe/adapt.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/jordan_wigner.hpp"
#include "fhvqe/optimizer.hpp"
#include "fhvqe/statevector.hpp"

using namespace fhvqe;

TEST_CASE("quadratic bowl", "[optimizer]") {
  auto f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g.resize(1);
    g[0] = 2.0 * (x[0] - 3.0);
    return (x[0] - 3.0) * (x[0] - 3.0);
  };
  OptimizeResult res = minimize(f, Eigen::VectorXd::Zero(1));
  REQUIRE(res.converged);
  REQUIRE(res.x_star[0] == Approx(3.0).margin(1e-8));
  REQUIRE(res.f_star == Approx(0.0).margin(1e-8));
}

TEST_CASE("Rosenbrock valley", "[optimizer]") {
  auto f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
    g.resize(2);
    g[0] = -2.0 * a - 400.0 * x[0] * b;
    g[1] = 200.0 * b;
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  OptimizeConfig config;
  config.grad_tol = 1e-9;
  config.f_tol = 1e-14;
  OptimizeResult res = minimize(f, x0, config);
  REQUIRE(res.converged);
  REQUIRE(res.x_star[0] == Approx(1.0).margin(1e-5));
  REQUIRE(res.x_star[1] == Approx(1.0).margin(1e-5));
}

TEST_CASE("one-parameter VQE matches a fine grid scan", "[optimizer]") {
  // Spin-summed bond rotation on the U=0 dimer from a doubly occupied
  // site reaches the sector ground energy with a single parameter.
  const GridSpec grid{2, 1};
  FermionOperator kappa(4);
  kappa.add_term(Complex{0.0, 1.0}, {{0, true}, {2, false}});
  kappa.add_term(Complex{0.0, -1.0}, {{2, true}, {0, false}});
  kappa.add_term(Complex{0.0, 1.0}, {{1, true}, {3, false}});
  kappa.add_term(Complex{0.0, -1.0}, {{3, true}, {1, false}});
  SparseMatrixC a = operator_matrix(jordan_wigner(kappa), 4);
  SparseMatrixC h =
      operator_matrix(jordan_wigner(build_hamiltonian(grid, {1.0, 0.0, 0.0})), 4);
  const StateVector start = basis_state({0, 1}, 4);

  auto energy_at = [&](double theta) {
    Eigen::VectorXcd psi = detail::exp_action(a, theta, start.amplitudes());
    return psi.dot(h * psi).real();
  };
  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    Eigen::VectorXcd psi = detail::exp_action(a, x[0], start.amplitudes());
    Eigen::VectorXcd h_psi = h * psi;
    g.resize(1);
    g[0] = -2.0 * h_psi.dot(a * psi).imag();
    return psi.dot(h_psi).real();
  };

  double scan_best = 1e30;
  for (int k = -3000; k <= 3000; ++k)
    scan_best = std::min(scan_best, energy_at(k * 1e-3 * std::numbers::pi / 3.0));

  OptimizeConfig config;
  config.grad_tol = 1e-10;
  OptimizeResult res = minimize(objective, Eigen::VectorXd::Zero(1), config);
  REQUIRE(res.converged);
  REQUIRE(res.f_star <= scan_best + 1e-8);
  REQUIRE(res.f_star == Approx(scan_best).margin(1e-6));
  const double e0 = lowest_k(build_hamiltonian(grid, {1.0, 0.0, 0.0}), Sector{1, 1}, 1)
                        .energies[0];
  REQUIRE(res.f_star == Approx(e0).margin(1e-8));
}

TEST_CASE("empty parameter vector returns immediately", "[optimizer]") {
  auto f = [](const Eigen::VectorXd&, Eigen::VectorXd&) { return 4.25; };
  OptimizeResult res = minimize(f, Eigen::VectorXd(0));
  REQUIRE(res.converged);
  REQUIRE(res.f_star == 4.25);
  REQUIRE(res.x_star.size() == 0);
}

TEST_CASE("non-finite objectives raise a numerical error", "[optimizer]") {
  auto f = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g.resize(1);
    g[0] = 1.0;
    return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : -x[0];
  };
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  REQUIRE_THROWS_AS(minimize(f, x0), NumericalError);
}

TEST_CASE("accepted steps never increase f and runs are deterministic",
          "[optimizer]") {
  // A wavy, non-convex objective; track every accepted iterate through the
  // monotonicity of reported f values across two identical runs.
  auto make = [](std::vector<double>* trace) {
    return [trace](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
      const double f =
          std::sin(3.0 * x[0]) + 0.1 * x[0] * x[0] + std::cos(2.0 * x[1]) +
          0.05 * x[1] * x[1];
      g.resize(2);
      g[0] = 3.0 * std::cos(3.0 * x[0]) + 0.2 * x[0];
      g[1] = -2.0 * std::sin(2.0 * x[1]) + 0.1 * x[1];
      if (trace) trace->push_back(f);
      return f;
    };
  };
  Eigen::VectorXd x0(2);
  x0 << 2.0, -1.0;
  std::vector<double> trace_a, trace_b;
  OptimizeResult ra = minimize(make(&trace_a), x0);
  OptimizeResult rb = minimize(make(&trace_b), x0);
  Eigen::VectorXd g_scratch(2);
  REQUIRE(ra.f_star <= make(nullptr)(x0, g_scratch) + 1e-15);
  REQUIRE(trace_a == trace_b);
  REQUIRE(ra.x_star == rb.x_star);
  REQUIRE(ra.f_star == rb.f_star);
}

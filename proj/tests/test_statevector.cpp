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
#include <random>

#include "fhvqe/exact_diag.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/jordan_wigner.hpp"
#include "fhvqe/statevector.hpp"
#include "test_util.hpp"

using namespace fhvqe;

namespace {

SparseMatrixC full_matrix(const FermionOperator& op, int n_qubits) {
  return operator_matrix(jordan_wigner(op), n_qubits);
}

QubitOperator random_hermitian(int n_qubits, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  const char paulis[3] = {'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> which(0, 2);
  QubitOperator op(n_qubits);
  for (int t = 0; t < 4; ++t) {
    PauliString::Factors f;
    const int q1 = qubit(rng), q2 = qubit(rng);
    f.emplace_back(q1, paulis[which(rng)]);
    if (q2 != q1) f.emplace_back(q2, paulis[which(rng)]);
    op.add_term(coeff(rng), PauliString(n_qubits, f));
  }
  return op;
}

}  // namespace

TEST_CASE("basis_state places ones at the occupied modes", "[statevector]") {
  StateVector vac = basis_state({}, 2);
  REQUIRE(vac.amplitudes()[0] == Complex{1.0, 0.0});
  REQUIRE(vac.amplitudes().tail(3).norm() == 0.0);

  StateVector s = basis_state({0, 3}, 4);
  REQUIRE(s.amplitudes()[9] == Complex{1.0, 0.0});

  FermionOperator n_total(4);
  for (int m = 0; m < 4; ++m) n_total.add_term(1.0, {{m, true}, {m, false}});
  REQUIRE(expectation_real(full_matrix(n_total, 4), s) == Approx(2.0).margin(1e-12));

  REQUIRE_THROWS_AS(basis_state({4}, 4), ValidationError);
}

TEST_CASE("slater_state on the dimer has quarter weights", "[statevector]") {
  StateVector s = slater_state(one_body_matrix({2, 1}, {1.0, 0.0, 0.0}), 1, 1);
  int supported = 0;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    const double m = std::abs(s.amplitudes()[k]);
    if (m > 1e-14) {
      REQUIRE(m == Approx(0.5).margin(1e-12));
      ++supported;
    }
  }
  REQUIRE(supported == 4);
}

TEST_CASE("slater_state energy equals the filled one-body sum", "[statevector]") {
  const GridSpec grid{4, 1};
  const HubbardParams params{1.0, 0.0, 0.0};
  StateVector s = slater_state(one_body_matrix(grid, params), 2, 2);
  const double e = expectation_real(full_matrix(build_hamiltonian(grid, params), 8), s);
  const double expect =
      -2.0 * (std::cos(std::numbers::pi / 5) + std::cos(2 * std::numbers::pi / 5)) * 2.0;
  REQUIRE(e == Approx(expect).margin(1e-10));
  REQUIRE(e == Approx(-4.472).margin(5e-4));

  StateVector vac = slater_state(one_body_matrix(grid, params), 0, 0);
  REQUIRE(vac.amplitudes()[0] == Complex{1.0, 0.0});
}

TEST_CASE("slater_state rejects a degenerate Fermi level", "[statevector]") {
  // Open 2x2 one-body levels are {-2, 0, 0, 2}: two fermions per spin hit
  // the degenerate pair.
  REQUIRE_THROWS_AS(slater_state(one_body_matrix({2, 2}, {1.0, 0.0, 0.0}), 2, 2),
                    DegeneracyError);
}

TEST_CASE("apply_exp basics", "[statevector]") {
  FermionOperator hop(2);
  hop.add_term(1.0, {{0, true}, {1, false}});
  hop.add_term(1.0, {{1, true}, {0, false}});
  SparseMatrixC a = full_matrix(hop, 2);
  StateVector start = basis_state({0}, 2);

  StateVector same = apply_exp(a, 0.0, start);
  REQUIRE((same.amplitudes() - start.amplitudes()).norm() == 0.0);

  const double theta = 0.7321;
  StateVector rotated = apply_exp(a, theta, start);
  REQUIRE(std::abs(rotated.amplitudes()[1] - Complex{std::cos(theta), 0.0}) < 1e-12);
  REQUIRE(std::abs(rotated.amplitudes()[2] - Complex{0.0, std::sin(theta)}) < 1e-12);

  StateVector back = apply_exp(a, -theta, rotated);
  REQUIRE((back.amplitudes() - start.amplitudes()).norm() < 1e-11);
}

TEST_CASE("apply_exp rejects non-Hermitian generators", "[statevector]") {
  FermionOperator lop(2);
  lop.add_term(1.0, {{0, true}, {1, false}});  // no h.c.
  REQUIRE_THROWS_AS(apply_exp(full_matrix(lop, 2), 0.3, basis_state({0}, 2)),
                    ValidationError);
}

TEST_CASE("apply_exp preserves the norm on random draws", "[statevector]") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> qubits(2, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = qubits(rng);
    SparseMatrixC a = operator_matrix(random_hermitian(n, rng), n);
    Eigen::VectorXcd v = fhvqe_test::random_state(1 << n, rng);
    Eigen::VectorXcd w = detail::exp_action(a, angle(rng), v);
    REQUIRE(std::abs(w.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("apply_exp keeps pool rotations inside the sector", "[statevector]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  const auto pool = build_pool(3);
  const SectorSpace space(6, {1, 1});
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
  StateVector psi = basis_state({0, 3}, 6);
  for (int step = 0; step < 25; ++step) {
    SparseMatrixC a = full_matrix(pool[pick(rng)].generator, 6);
    psi = apply_exp(a, angle(rng), psi);
    REQUIRE(space.leakage(psi.amplitudes()) < 1e-12);
  }
}

TEST_CASE("apply_exp split-step consistency", "[statevector]") {
  std::mt19937_64 rng(9);
  SparseMatrixC a = operator_matrix(random_hermitian(5, rng), 5);
  StateVector psi(5, fhvqe_test::random_state(32, rng));
  const double theta = 1.234;
  StateVector whole = apply_exp(a, theta, psi);
  for (int k : {2, 7, 16}) {
    StateVector stepped = psi;
    for (int s = 0; s < k; ++s) stepped = apply_exp(a, theta / k, stepped);
    REQUIRE((stepped.amplitudes() - whole.amplitudes()).norm() < 1e-9);
  }
}

TEST_CASE("expectation values", "[statevector]") {
  const GridSpec grid{2, 1};
  FermionOperator u_term(4);
  u_term.add_term(3.0, {{0, true}, {0, false}, {1, true}, {1, false}});
  StateVector doubly = basis_state({0, 1}, 4);
  REQUIRE(expectation_real(full_matrix(u_term, 4), doubly) == Approx(3.0).margin(1e-12));

  FermionOperator hop(4);
  hop.add_term(1.0, {{0, true}, {2, false}});
  hop.add_term(1.0, {{2, true}, {0, false}});
  REQUIRE(std::abs(expectation(full_matrix(hop, 4), doubly)) < 1e-14);

  StateVector slater = slater_state(one_body_matrix(grid, {1.0, 0.0, 0.0}), 1, 1);
  const double e =
      expectation_real(full_matrix(build_hamiltonian(grid, {1.0, 0.0, 0.0}), 4), slater);
  REQUIRE(e == Approx(-2.0).margin(1e-12));
}

TEST_CASE("fidelity properties", "[statevector]") {
  std::mt19937_64 rng(31);
  StateVector a(3, fhvqe_test::random_state(8, rng));
  REQUIRE(fidelity(a, a) == Approx(1.0).margin(1e-12));

  StateVector ket0 = basis_state({0}, 3);
  StateVector ket1 = basis_state({1}, 3);
  REQUIRE(fidelity(ket0, ket1) == 0.0);

  const Complex phase = std::polar(1.0, 0.9);
  StateVector rotated(3, (phase * a.amplitudes()).eval());
  REQUIRE(fidelity(a, rotated) == Approx(1.0).margin(1e-12));
}

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

#include <algorithm>
#include <cmath>
#include <random>

#include "fhvqe/exact_diag.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/jordan_wigner.hpp"
#include "test_util.hpp"

using namespace fhvqe;

namespace {

double dimer_ground(double u) { return (u - std::sqrt(u * u + 16.0)) / 2.0; }

}  // namespace

TEST_CASE("sector_basis enumerates the right dimensions", "[exact-diag]") {
  REQUIRE(sector_basis(4, {1, 1}).size() == 4);
  REQUIRE(sector_basis(12, {3, 3}).size() == 400);
  auto vac = sector_basis(6, {0, 0});
  REQUIRE(vac.size() == 1);
  REQUIRE(vac[0] == 0);
  auto basis = sector_basis(6, {1, 1});
  REQUIRE(std::is_sorted(basis.begin(), basis.end()));
  REQUIRE_THROWS_AS(sector_basis(4, {3, 0}), ValidationError);
}

TEST_CASE("dimer ground energies match the analytic formula", "[exact-diag]") {
  for (double u : {0.0, 1.0, 3.0, 6.0}) {
    FermionOperator h = build_hamiltonian({2, 1}, {1.0, u, 0.0});
    EigenResult res = lowest_k(h, Sector{1, 1}, 1);
    REQUIRE(res.energies[0] == Approx(dimer_ground(u)).margin(1e-10));
  }
}

TEST_CASE("half-filling shift reproduces the dimer reference energies",
          "[exact-diag]") {
  FermionOperator h3 = build_hamiltonian({2, 1}, {1.0, 3.0, 1.5});
  REQUIRE(lowest_k(h3, Sector{1, 1}, 1).energies[0] == Approx(-4.00).margin(1e-10));
  FermionOperator h6 = build_hamiltonian({2, 1}, {1.0, 6.0, 3.0});
  REQUIRE(lowest_k(h6, Sector{1, 1}, 1).energies[0] == Approx(-6.61).margin(5e-3));
  FermionOperator h1 = build_hamiltonian({3, 1}, {1.0, 1.0, 0.5});
  GroundState gs = ground_state(h1, Sector{1, 1});
  REQUIRE(gs.energy == Approx(-3.51).margin(5e-3));
  REQUIRE_FALSE(gs.degenerate);
}

TEST_CASE("eigenpairs satisfy the residual and orthonormality bounds",
          "[exact-diag]") {
  const GridSpec grid{3, 1};
  FermionOperator h = build_hamiltonian(grid, {1.0, 3.0, 1.5});
  const SectorSpace space(6, {1, 1});
  EigenResult res = lowest_k(h, space, space.dim());
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    const Eigen::VectorXcd& v = res.states[i].amplitudes();
    Eigen::VectorXcd hv = apply_fermion_operator(h, v, 6);
    REQUIRE((hv - res.energies[i] * v).norm() < 1e-8);
    for (Eigen::Index j = 0; j < space.dim(); ++j) {
      const Complex o = res.states[i].amplitudes().dot(res.states[j].amplitudes());
      REQUIRE(std::abs(o - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
  REQUIRE(std::is_sorted(res.energies.begin(), res.energies.end()));
  REQUIRE_THROWS_AS(lowest_k(h, space, space.dim() + 1), ValidationError);
}

TEST_CASE("sector spectra embed in the full spectrum", "[exact-diag]") {
  for (const GridSpec& grid : {GridSpec{2, 1}, GridSpec{3, 1}}) {
    FermionOperator h = build_hamiltonian(grid, {1.0, 3.0, 1.5});
    const int n = grid.n_modes();
    Eigen::MatrixXcd full(operator_matrix(jordan_wigner(h), n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(full);
    const Eigen::VectorXd& spectrum = es.eigenvalues();
    EigenResult res = lowest_k(h, Sector{1, 1}, 3);
    for (Eigen::Index i = 0; i < res.energies.size(); ++i) {
      double closest = 1e9;
      for (Eigen::Index j = 0; j < spectrum.size(); ++j)
        closest = std::min(closest, std::abs(spectrum[j] - res.energies[i]));
      REQUIRE(closest < 1e-10);
    }
  }
}

TEST_CASE("sector ground energy is a variational lower bound", "[exact-diag]") {
  std::mt19937_64 rng(17);
  const GridSpec grid{3, 1};
  FermionOperator h = build_hamiltonian(grid, {1.0, 6.0, 3.0});
  const SectorSpace space(6, {1, 1});
  SparseMatrixC hs = sector_sparse_matrix(h, space);
  const double e0 = lowest_k(h, space, 1).energies[0];
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXcd v = fhvqe_test::random_state(static_cast<int>(space.dim()), rng);
    REQUIRE(v.dot(hs * v).real() >= e0 - 1e-10);
  }
}

TEST_CASE("degenerate subspaces are orthonormalized deterministically",
          "[exact-diag]") {
  // U=0 single-electron sector of the open 2x2 grid: one-body levels
  // {-2, 0, 0, 2} give a doubly degenerate middle pair.
  FermionOperator h = build_hamiltonian({2, 2}, {1.0, 0.0, 0.0});
  const SectorSpace space(8, {1, 0});
  EigenResult a = lowest_k(h, space, 4);
  EigenResult b = lowest_k(h, space, 4);
  REQUIRE(a.energies[1] == Approx(a.energies[2]).margin(1e-12));
  for (int i = 0; i < 4; ++i) {
    REQUIRE((a.states[i].amplitudes() - b.states[i].amplitudes()).norm() == 0.0);
    for (int j = 0; j < 4; ++j) {
      const Complex o = a.states[i].amplitudes().dot(a.states[j].amplitudes());
      REQUIRE(std::abs(o - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("ground_state flags degeneracy", "[exact-diag]") {
  // Dimer triplet sector (2, 0): a single state, gap undefined -> not
  // degenerate; half-filling U=3 ground is unique as well.
  FermionOperator h = build_hamiltonian({2, 1}, {1.0, 3.0, 1.5});
  REQUIRE_FALSE(ground_state(h, Sector{1, 1}).degenerate);
  // U=0 2x2 at (1,1): both spins can occupy the degenerate one-body pair
  // only above the ground level, but (2,2) hits it head on.
  FermionOperator h22 = build_hamiltonian({2, 2}, {1.0, 0.0, 0.0});
  REQUIRE(ground_state(h22, Sector{2, 2}).degenerate);
}

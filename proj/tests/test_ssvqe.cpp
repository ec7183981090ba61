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

#include "fhvqe/ssvqe.hpp"

using namespace fhvqe;

namespace {

AdaptConfig tight_config(int max_depth) {
  AdaptConfig config;
  config.epsilon = 0.0;
  config.delta = 1e-7;
  config.grad_stop = 1e-9;
  config.max_depth = max_depth;
  config.optimizer.grad_tol = 1e-10;
  config.optimizer.f_tol = 1e-14;
  config.track_fidelity = false;
  return config;
}

}  // namespace

TEST_CASE("subspace spec validation", "[ssvqe]") {
  AdaptContext ctx({2, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 2);
  REQUIRE_NOTHROW(spec.validate(4));

  SubspaceSpec flat = spec;
  flat.weights << 1.0, 1.0;
  REQUIRE_THROWS_AS(flat.validate(4), ValidationError);

  SubspaceSpec negative = spec;
  negative.weights << 1.0, -0.5;
  REQUIRE_THROWS_AS(negative.validate(4), ValidationError);

  SubspaceSpec overlapping = spec;
  overlapping.inputs[1] = overlapping.inputs[0];
  REQUIRE_THROWS_AS(overlapping.validate(4), ValidationError);

  REQUIRE_THROWS_AS(default_subspace_spec(ctx, 5), ValidationError);
}

TEST_CASE("default inputs are the lowest-diagonal basis states", "[ssvqe]") {
  // Dimer at U=3, mu=U/2: singly occupied configurations sit at -3, doubly
  // occupied at 0, so the first two inputs are the spread-out states.
  AdaptContext ctx({2, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 3);
  const SparseMatrixC& h = ctx.hamiltonian();
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXcd v = ctx.space().compress(spec.inputs[j].amplitudes());
    REQUIRE(v.dot(h * v).real() == Approx(-3.0).margin(1e-12));
  }
  REQUIRE(spec.weights[0] == 4.0);
  REQUIRE(spec.weights[1] == 2.0);
  REQUIRE(spec.weights[2] == 1.0);
}

TEST_CASE("depth-zero weighted cost is the weighted input energy", "[ssvqe]") {
  AdaptContext ctx({2, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 3);
  SparseMatrixC h_full = operator_matrix(jordan_wigner(ctx.hamiltonian_op()), 4);
  Ansatz identity;
  auto [cost, energies] = weighted_cost(identity, h_full, spec);
  double expect = 0.0;
  for (int j = 0; j < 3; ++j)
    expect += spec.weights[j] * expectation_real(h_full, spec.inputs[j]);
  REQUIRE(cost == Approx(expect).margin(1e-12));
  REQUIRE(energies.size() == 3);
}

TEST_CASE("K=1 weighted cost reduces to the VQE energy", "[ssvqe]") {
  AdaptContext ctx({2, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec;
  spec.sector = {1, 1};
  spec.k = 1;
  spec.weights = Eigen::VectorXd::Ones(1);
  spec.inputs = {basis_state({0, 3}, 4)};

  Ansatz ansatz;
  ansatz.init.occupied = {0, 3};
  ansatz.steps = {{{PoolOpDescriptor::Kind::TwoBody, {0, 1, 2, 3}}, 0.37},
                  {{PoolOpDescriptor::Kind::OneBody, {0, 2, 0, 0}}, -0.52}};
  SparseMatrixC h_full = operator_matrix(jordan_wigner(ctx.hamiltonian_op()), 4);
  auto [cost, energies] = weighted_cost(ansatz, h_full, spec);
  EnergyGradient eg =
      energy_and_gradient(ansatz, h_full, ctx.initial_state(ansatz.init));
  REQUIRE(cost == eg.energy);
  REQUIRE(energies[0] == cost);
}

TEST_CASE("K=1 adaptive run reproduces ADAPT-VQE bit-compatibly", "[ssvqe]") {
  AdaptContext ctx({2, 1}, {1.0, 6.0, 3.0}, {1, 1});
  AdaptConfig config = tight_config(6);

  InitSpec init;
  init.occupied = {0, 3};
  AdaptResult vqe = run_adapt(ctx, init, config);

  SubspaceSpec spec;
  spec.sector = {1, 1};
  spec.k = 1;
  spec.weights = Eigen::VectorXd::Ones(1);
  spec.inputs = {basis_state({0, 3}, 4)};
  SsvqeResult ssvqe = run_adapt_ssvqe(ctx, spec, config);

  REQUIRE(ssvqe.ansatz.steps.size() == vqe.ansatz.steps.size());
  for (std::size_t k = 0; k < ssvqe.ansatz.steps.size(); ++k) {
    REQUIRE(ssvqe.ansatz.steps[k].op == vqe.ansatz.steps[k].op);
    REQUIRE(ssvqe.ansatz.steps[k].theta == vqe.ansatz.steps[k].theta);
  }
  REQUIRE(ssvqe.energies[0] == vqe.final_energy);
}

TEST_CASE("dimer excited states converge to ED with few parameters", "[ssvqe]") {
  AdaptContext ctx({2, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 3);
  spec.weights << 4.0, 2.0, 1.0;
  SsvqeResult run = run_adapt_ssvqe(ctx, spec, tight_config(8));
  REQUIRE(run.ansatz.steps.size() <= 8);

  EigenResult ed = lowest_k(ctx.hamiltonian_op(), ctx.space(), 3);
  for (int j = 0; j < 3; ++j)
    REQUIRE(run.energies[static_cast<std::size_t>(j)] ==
            Approx(ed.energies[j]).margin(1e-6));
  REQUIRE_FALSE(run.order_violation);

  // Unitarity: outputs stay pairwise orthonormal.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex o = overlap(run.states[i], run.states[j]);
      REQUIRE(std::abs(o - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("weighted cost is monotone and bounded by the ED optimum", "[ssvqe]") {
  AdaptContext ctx({3, 1}, {1.0, 3.0, 1.5}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 3);
  SsvqeResult run = run_adapt_ssvqe(ctx, spec, tight_config(60));

  EigenResult ed = lowest_k(ctx.hamiltonian_op(), ctx.space(), 3);
  double bound = 0.0;
  for (int j = 0; j < 3; ++j) bound += spec.weights[j] * ed.energies[j];

  for (std::size_t k = 0; k < run.records.size(); ++k) {
    if (k > 0) REQUIRE(run.records[k].energy <= run.records[k - 1].energy + 1e-9);
    REQUIRE(run.records[k].energy >= bound - 1e-9);
    REQUIRE(run.records[k].state_energies.size() == 3);
  }
  REQUIRE(run.records.back().energy == Approx(bound).margin(1e-6));
}

TEST_CASE("near-degenerate returned levels are flagged", "[ssvqe]") {
  // U=0 dimer sector (1,1): levels {-2, 0, 0, 2}; the middle pair must
  // carry the degeneracy warning.
  AdaptContext ctx({2, 1}, {1.0, 0.0, 0.0}, {1, 1});
  SubspaceSpec spec = default_subspace_spec(ctx, 4);
  SsvqeResult run = run_adapt_ssvqe(ctx, spec, tight_config(12));
  REQUIRE(run.energies[1] == Approx(run.energies[2]).margin(1e-7));
  REQUIRE(run.degenerate_warning[1]);
  REQUIRE(run.degenerate_warning[2]);
  REQUIRE_FALSE(run.degenerate_warning[0]);
}

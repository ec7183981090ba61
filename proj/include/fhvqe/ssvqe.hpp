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

#ifndef FHVQE_SSVQE_HPP
#define FHVQE_SSVQE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fhvqe/adapt.hpp"

namespace fhvqe {

/// Subspace-search setup: one unitary is optimized so that K orthonormal
/// inputs map to the K lowest eigenstates, ordered by strictly descending
/// positive weights.
struct SubspaceSpec {
  Sector sector;
  int k = 1;
  Eigen::VectorXd weights;
  std::vector<StateVector> inputs;  // full space, orthonormal

  void validate(int n_modes) const {
    sector.validate(n_modes);
    if (k < 1) throw ValidationError("SubspaceSpec: K must be at least 1");
    if (weights.size() != k || static_cast<int>(inputs.size()) != k)
      throw ValidationError("SubspaceSpec: need K weights and K inputs");
    for (int j = 0; j < k; ++j) {
      if (weights[j] <= 0.0)
        throw ValidationError("SubspaceSpec: weights must be positive");
      if (j > 0 && weights[j] >= weights[j - 1])
        throw ValidationError("SubspaceSpec: weights must be strictly descending");
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const Complex o = overlap(inputs[i], inputs[j]);
        if (std::abs(o - (i == j ? 1.0 : 0.0)) > 1e-12)
          throw ValidationError("SubspaceSpec: inputs are not orthonormal");
      }
  }
};

/// Default weights 2^(K-1-j) and inputs the K lowest-diagonal computational
/// basis states of the sector (ties broken by basis index).
inline SubspaceSpec default_subspace_spec(const AdaptContext& ctx, int k) {
  const SectorSpace& space = ctx.space();
  if (k < 1 || k > space.dim())
    throw ValidationError("default_subspace_spec: K outside [1, sector dim]");
  Eigen::VectorXd diag(space.dim());
  const SparseMatrixC& h = ctx.hamiltonian();
  for (Eigen::Index c = 0; c < space.dim(); ++c) {
    Complex d{0.0, 0.0};
    for (SparseMatrixC::InnerIterator it(h, c); it; ++it)
      if (it.row() == c) d = it.value();
    diag[c] = d.real();
  }
  std::vector<Eigen::Index> order(space.dim());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (diag[a] != diag[b]) return diag[a] < diag[b];
    return space.basis()[a] < space.basis()[b];
  });

  SubspaceSpec spec;
  spec.sector = space.sector();
  spec.k = k;
  spec.weights.resize(k);
  for (int j = 0; j < k; ++j) spec.weights[j] = std::pow(2.0, k - 1 - j);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    v[order[static_cast<std::size_t>(j)]] = 1.0;
    spec.inputs.push_back(ctx.expand(v));
  }
  return spec;
}

namespace detail {

struct SsvqeEval {
  double cost = 0.0;
  Eigen::VectorXd grad;               // d cost / d theta
  Eigen::VectorXd state_energies;     // per input, weight order
  std::vector<Eigen::VectorXcd> outputs;
};

inline SsvqeEval ssvqe_cost_and_gradient(const std::vector<GateOp>& gates,
                                         const Eigen::VectorXd& thetas,
                                         const SparseMatrixC& h,
                                         const std::vector<Eigen::VectorXcd>& inputs,
                                         const Eigen::VectorXd& weights,
                                         bool want_outputs = false) {
  const auto depth = static_cast<Eigen::Index>(gates.size());
  SsvqeEval out;
  out.grad = Eigen::VectorXd::Zero(depth);
  out.state_energies.resize(static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    Eigen::VectorXcd psi = inputs[j];
    for (Eigen::Index k = 0; k < depth; ++k) apply_gate(gates[k], thetas[k], psi);
    if (want_outputs) out.outputs.push_back(psi);
    Eigen::VectorXcd lambda = h * psi;
    const double energy = psi.dot(lambda).real();
    out.state_energies[static_cast<Eigen::Index>(j)] = energy;
    out.cost += weights[static_cast<Eigen::Index>(j)] * energy;
    for (Eigen::Index k = depth - 1; k >= 0; --k) {
      out.grad[k] += weights[static_cast<Eigen::Index>(j)] * -2.0 *
                     (lambda.dot(gates[k].mat * psi)).imag();
      apply_gate(gates[k], -thetas[k], psi);
      apply_gate(gates[k], -thetas[k], lambda);
    }
  }
  return out;
}

}  // namespace detail

/// Weighted subspace cost of an ansatz on full-space statevectors, with the
/// per-state energies for diagnostics.
inline std::pair<double, Eigen::VectorXd> weighted_cost(const Ansatz& ansatz,
                                                        const SparseMatrixC& h_full,
                                                        const SubspaceSpec& spec) {
  const int n_qubits = spec.inputs.empty() ? 0 : spec.inputs[0].n_qubits();
  spec.validate(n_qubits);
  std::vector<GateOp> gates;
  Eigen::VectorXd thetas(static_cast<Eigen::Index>(ansatz.steps.size()));
  for (std::size_t k = 0; k < ansatz.steps.size(); ++k) {
    gates.push_back(
        {operator_matrix(
             jordan_wigner(descriptor_generator(ansatz.steps[k].op, n_qubits)),
             n_qubits),
         true});
    thetas[static_cast<Eigen::Index>(k)] = ansatz.steps[k].theta;
  }
  std::vector<Eigen::VectorXcd> inputs;
  for (const auto& s : spec.inputs) inputs.push_back(s.amplitudes());
  detail::SsvqeEval eval =
      detail::ssvqe_cost_and_gradient(gates, thetas, h_full, inputs, spec.weights);
  return {eval.cost, eval.state_energies};
}

struct SsvqeResult {
  Ansatz ansatz;
  std::vector<StepRecord> records;
  std::vector<double> energies;      // ascending
  std::vector<StateVector> states;   // full space, energy order
  StopReason stop_reason = StopReason::MaxDepth;
  std::vector<bool> degenerate_warning;  // per returned state
  bool order_violation = false;  // raw weight-ordered energies not ascending
};

/// ADAPT loop over the weighted subspace cost: screening and re-optimization
/// run on all K inputs through one shared circuit.
inline SsvqeResult run_adapt_ssvqe(const AdaptContext& ctx, const SubspaceSpec& spec,
                                   const AdaptConfig& config = {},
                                   const StepCallback& callback = {}) {
  config.validate();
  spec.validate(ctx.grid().n_modes());
  if (spec.k > ctx.space().dim())
    throw ValidationError("run_adapt_ssvqe: K exceeds the sector dimension");

  std::vector<Eigen::VectorXcd> inputs;
  for (const auto& s : spec.inputs) {
    if (ctx.space().leakage(s.amplitudes()) > 1e-12)
      throw ValidationError("run_adapt_ssvqe: input outside the target sector");
    inputs.push_back(ctx.space().compress(s.amplitudes()));
  }
  const SparseMatrixC& h = ctx.hamiltonian();

  SsvqeResult result;
  result.ansatz.init.kind = InitSpec::Kind::Product;  // inputs carry the state
  std::vector<GateOp> gates;
  Eigen::VectorXd thetas(0);
  detail::SsvqeEval eval =
      detail::ssvqe_cost_and_gradient(gates, thetas, h, inputs, spec.weights, true);

  auto make_record = [&](int depth, std::optional<PoolOpDescriptor> sel,
                         double pool_grad) {
    StepRecord rec;
    rec.depth = depth;
    rec.selected = sel;
    rec.pool_gradient = pool_grad;
    rec.energy = eval.cost;
    rec.params.assign(thetas.data(), thetas.data() + thetas.size());
    rec.state_energies.assign(eval.state_energies.data(),
                              eval.state_energies.data() + eval.state_energies.size());
    return rec;
  };
  result.records.push_back(make_record(0, std::nullopt, 0.0));

  auto screening = [&]() {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(ctx.pool_matrices().size()));
    for (std::size_t j = 0; j < inputs.size(); ++j)
      g += spec.weights[static_cast<Eigen::Index>(j)] *
           pool_gradients(eval.outputs[j], h, ctx.pool_matrices());
    return g;
  };

  bool stop = callback && callback(result.records.back());
  if (stop) result.stop_reason = StopReason::Callback;
  while (!stop) {
    const Eigen::VectorXd g = screening();
    if (g.norm() < config.grad_stop) {
      result.stop_reason = StopReason::PoolExhausted;
      break;
    }
    const std::size_t pick = detail::select_max_gradient(g);
    if (std::abs(g[static_cast<Eigen::Index>(pick)]) < config.delta) {
      result.stop_reason = StopReason::GradientBelowDelta;
      break;
    }
    if (static_cast<int>(gates.size()) >= config.max_depth) {
      result.stop_reason = StopReason::MaxDepth;
      break;
    }

    gates.push_back({ctx.pool_matrices()[pick], true});
    result.ansatz.steps.push_back({ctx.pool()[pick].desc, 0.0});
    Eigen::VectorXd x0(thetas.size() + 1);
    x0.head(thetas.size()) = thetas;
    x0[thetas.size()] = 0.0;
    auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad_out) {
      detail::SsvqeEval e =
          detail::ssvqe_cost_and_gradient(gates, x, h, inputs, spec.weights);
      grad_out = e.grad;
      return e.cost;
    };
    OptimizeResult opt = minimize(objective, x0, config.optimizer);

    const double prev_cost = eval.cost;
    thetas = opt.x_star;
    for (Eigen::Index k = 0; k < thetas.size(); ++k)
      result.ansatz.steps[static_cast<std::size_t>(k)].theta = thetas[k];
    eval = detail::ssvqe_cost_and_gradient(gates, thetas, h, inputs, spec.weights,
                                           true);
    result.records.push_back(make_record(static_cast<int>(gates.size()),
                                         ctx.pool()[pick].desc,
                                         g[static_cast<Eigen::Index>(pick)]));
    if (callback && callback(result.records.back())) {
      result.stop_reason = StopReason::Callback;
      break;
    }
    if (prev_cost - eval.cost < config.epsilon) {
      result.stop_reason = StopReason::EnergyPlateau;
      break;
    }
  }

  // Outputs sorted by energy; the weighted cost, not each energy, is the
  // variational quantity, so flag raw ordering violations untouched.
  std::vector<int> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return eval.state_energies[a] < eval.state_energies[b];
  });
  for (std::size_t j = 0; j + 1 < inputs.size(); ++j)
    if (eval.state_energies[static_cast<Eigen::Index>(j)] >
        eval.state_energies[static_cast<Eigen::Index>(j + 1)] + 1e-12)
      result.order_violation = true;
  for (int idx : order) {
    result.energies.push_back(eval.state_energies[idx]);
    Eigen::VectorXcd full = ctx.space().expand(eval.outputs[static_cast<std::size_t>(idx)]);
    result.states.emplace_back(ctx.grid().n_modes(), std::move(full));
  }
  result.degenerate_warning.assign(inputs.size(), false);
  for (std::size_t j = 0; j + 1 < inputs.size(); ++j)
    if (result.energies[j + 1] - result.energies[j] < 1e-8) {
      result.degenerate_warning[j] = true;
      result.degenerate_warning[j + 1] = true;
    }
  return result;
}

}  // namespace fhvqe

#endif  // FHVQE_SSVQE_HPP

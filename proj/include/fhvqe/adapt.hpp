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

#ifndef FHVQE_ADAPT_HPP
#define FHVQE_ADAPT_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fhvqe/ansatz.hpp"
#include "fhvqe/errors.hpp"
#include "fhvqe/exact_diag.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/jordan_wigner.hpp"
#include "fhvqe/optimizer.hpp"
#include "fhvqe/statevector.hpp"

namespace fhvqe {

struct AdaptConfig {
  double epsilon = 1e-3;    // stop when a step improves the energy by less
  double delta = 1e-4;      // stop when every candidate gradient is smaller
  double grad_stop = 1e-6;  // stop when the pool gradient norm vanishes
  int max_depth = 100;
  std::optional<double> target_fidelity;
  bool track_fidelity = true;
  OptimizeConfig optimizer;

  void validate() const {
    if (epsilon < 0 || delta < 0 || grad_stop < 0)
      throw ValidationError("AdaptConfig: thresholds must be non-negative");
    if (max_depth < 0) throw ValidationError("AdaptConfig: negative max_depth");
    if (target_fidelity && (*target_fidelity <= 0.0 || *target_fidelity > 1.0))
      throw ValidationError("AdaptConfig: target_fidelity outside (0, 1]");
    optimizer.validate();
  }
};

struct StepRecord {
  int depth = 0;  // ansatz depth after this step; depth 0 is the initial state
  std::optional<PoolOpDescriptor> selected;
  double pool_gradient = 0.0;  // gradient of the selected candidate at theta=0
  double energy = 0.0;
  std::optional<double> fidelity;
  std::vector<double> params;
  std::vector<double> state_energies;  // SSVQE runs only
};

enum class StopReason {
  EnergyPlateau,      // per-step improvement below epsilon
  GradientBelowDelta, // best candidate gradient below delta
  PoolExhausted,      // pool gradient norm below grad_stop
  MaxDepth,
  TargetFidelity,
  Callback,
};

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::EnergyPlateau: return "energy_plateau";
    case StopReason::GradientBelowDelta: return "gradient_below_delta";
    case StopReason::PoolExhausted: return "pool_exhausted";
    case StopReason::MaxDepth: return "max_depth";
    case StopReason::TargetFidelity: return "target_fidelity";
    case StopReason::Callback: return "callback";
  }
  return "unknown";
}

/// Gate generator with a fast path: pool generators satisfy A^3 = A on
/// their support (each basis state couples to at most one partner with a
/// +-1 matrix element), so exp(i theta A) = 1 + i sin(theta) A
/// + (cos(theta) - 1) A^2 exactly.
struct GateOp {
  SparseMatrixC mat;
  bool unit_triple = true;
};

namespace detail {

inline void apply_gate(const GateOp& gate, double theta, Eigen::VectorXcd& v) {
  if (theta == 0.0) return;
  if (gate.unit_triple) {
    const Eigen::VectorXcd u = gate.mat * v;
    const Eigen::VectorXcd w = gate.mat * u;
    v += Complex{0.0, std::sin(theta)} * u + (std::cos(theta) - 1.0) * w;
  } else {
    v = exp_action(gate.mat, theta, v);
  }
}

}  // namespace detail

/// E and dE/dtheta_k for |psi> = prod_k exp(i theta_k A_k) |init>
/// (first gate innermost), by one forward and one adjoint sweep.
struct EnergyGradient {
  double energy = 0.0;
  Eigen::VectorXd grad;
};

inline EnergyGradient energy_and_gradient(const std::vector<GateOp>& gates,
                                          const Eigen::VectorXd& thetas,
                                          const SparseMatrixC& h,
                                          const Eigen::VectorXcd& init) {
  const auto depth = static_cast<Eigen::Index>(gates.size());
  if (thetas.size() != depth)
    throw ValidationError("energy_and_gradient: theta count != gate count");
  Eigen::VectorXcd psi = init;
  for (Eigen::Index k = 0; k < depth; ++k)
    detail::apply_gate(gates[k], thetas[k], psi);

  EnergyGradient out;
  Eigen::VectorXcd lambda = h * psi;
  out.energy = psi.dot(lambda).real();
  out.grad.resize(depth);
  for (Eigen::Index k = depth - 1; k >= 0; --k) {
    // grad_k = 2 Re <lambda_k| i A_k |chi_k> with chi_k the state after
    // gate k and lambda_k the H-image pulled back through later gates.
    out.grad[k] = -2.0 * (lambda.dot(gates[k].mat * psi)).imag();
    detail::apply_gate(gates[k], -thetas[k], psi);
    detail::apply_gate(gates[k], -thetas[k], lambda);
  }
  return out;
}

/// dE/dtheta_m at theta_m = 0 for every pool candidate: i<psi|[H, A_m]|psi>,
/// evaluated as -2 Im <H psi | A_m psi>.
inline Eigen::VectorXd pool_gradients(const Eigen::VectorXcd& psi,
                                      const SparseMatrixC& h,
                                      const std::vector<SparseMatrixC>& pool_mats) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(pool_mats.size()));
  const Eigen::VectorXcd h_psi = h * psi;
  for (std::size_t m = 0; m < pool_mats.size(); ++m)
    out[static_cast<Eigen::Index>(m)] =
        -2.0 * (h_psi.dot(pool_mats[m] * psi)).imag();
  return out;
}

/// Model context shared by ADAPT runs: the sector-restricted Hamiltonian,
/// the operator pool and its sector matrices, and the lazily built ED
/// reference used for fidelity tracking.
class AdaptContext {
 public:
  AdaptContext(const GridSpec& grid, const HubbardParams& params, Sector sector)
      : grid_(grid),
        params_(params),
        space_(grid.n_modes(), sector),
        h_op_(build_hamiltonian(grid, params)),
        h_mat_(sector_sparse_matrix(h_op_, space_)),
        pool_(build_pool(grid.n_sites())) {
    pool_mats_.reserve(pool_.size());
    for (const auto& p : pool_)
      pool_mats_.push_back(sector_sparse_matrix(p.generator, space_));
  }

  const GridSpec& grid() const { return grid_; }
  const HubbardParams& params() const { return params_; }
  const SectorSpace& space() const { return space_; }
  const FermionOperator& hamiltonian_op() const { return h_op_; }
  const SparseMatrixC& hamiltonian() const { return h_mat_; }
  const std::vector<PoolOperator>& pool() const { return pool_; }
  const std::vector<SparseMatrixC>& pool_matrices() const { return pool_mats_; }

  const GroundState& exact_ground() const {
    if (!exact_) exact_ = ground_state(h_op_, space_);
    return *exact_;
  }

  /// ED ground state in sector coordinates; rejects degenerate grounds,
  /// for which fidelity would be ill-defined.
  const Eigen::VectorXcd& fidelity_reference() const {
    if (!exact_sector_) {
      const GroundState& gs = exact_ground();
      if (gs.degenerate)
        throw DegeneracyError(
            "fidelity tracking: sector ground state is degenerate; choose a "
            "filling with a non-degenerate ground state or disable tracking");
      exact_sector_ = space_.compress(gs.state.amplitudes());
    }
    return *exact_sector_;
  }

  /// Initial sector-coordinate vector for an InitSpec; validates that the
  /// state lies entirely in this context's sector.
  Eigen::VectorXcd initial_vector(const InitSpec& init) const {
    StateVector full = initial_state(init);
    if (space_.leakage(full.amplitudes()) > 1e-12)
      throw ValidationError("initial state lies outside the requested sector");
    return space_.compress(full.amplitudes());
  }

  StateVector initial_state(const InitSpec& init) const {
    if (init.kind == InitSpec::Kind::Product) {
      return basis_state({init.occupied.begin(), init.occupied.end()},
                         grid_.n_modes());
    }
    return slater_state(one_body_matrix(grid_, params_), init.filling.n_up,
                        init.filling.n_down);
  }

  std::vector<GateOp> gates_for(const Ansatz& ansatz) const {
    std::vector<GateOp> gates;
    gates.reserve(ansatz.steps.size());
    for (const auto& step : ansatz.steps)
      gates.push_back({sector_sparse_matrix(
                           descriptor_generator(step.op, grid_.n_modes()),
                           space_),
                       true});
    return gates;
  }

  StateVector expand(const Eigen::VectorXcd& sector_vec) const {
    Eigen::VectorXcd full = space_.expand(sector_vec);
    return StateVector(grid_.n_modes(), std::move(full));
  }

 private:
  GridSpec grid_;
  HubbardParams params_;
  SectorSpace space_;
  FermionOperator h_op_;
  SparseMatrixC h_mat_;
  std::vector<PoolOperator> pool_;
  std::vector<SparseMatrixC> pool_mats_;
  mutable std::optional<GroundState> exact_;
  mutable std::optional<Eigen::VectorXcd> exact_sector_;
};

namespace detail {

inline Eigen::VectorXcd forward_state(const std::vector<GateOp>& gates,
                                      const Eigen::VectorXd& thetas,
                                      const Eigen::VectorXcd& init) {
  Eigen::VectorXcd psi = init;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(gates.size()); ++k)
    apply_gate(gates[k], thetas[k], psi);
  return psi;
}

/// argmax |g| with exact ties resolved to the lowest pool index, which is
/// the lowest canonical descriptor.
inline std::size_t select_max_gradient(const Eigen::VectorXd& g) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (Eigen::Index m = 0; m < g.size(); ++m) {
    const double mag = std::abs(g[m]);
    if (mag > best_mag) {
      best_mag = mag;
      best = static_cast<std::size_t>(m);
    }
  }
  return best;
}

}  // namespace detail

struct AdaptResult {
  Ansatz ansatz;
  std::vector<StepRecord> records;  // records[0] is the initial state
  StateVector final_state;          // full space
  double final_energy = 0.0;
  StopReason stop_reason = StopReason::MaxDepth;
  std::optional<double> exact_energy;
};

/// Optional per-step observer; return true to request termination.
using StepCallback = std::function<bool(const StepRecord&)>;

/// Screens the pool at the current (optimized) ansatz state, appends the
/// best candidate and re-optimizes the accumulated parameter set. Returns
/// nothing when every candidate gradient is below config.grad_stop, which
/// is natural termination, not an error.
inline std::optional<std::pair<Ansatz, StepRecord>> adapt_step(
    const AdaptContext& ctx, const Ansatz& current, const AdaptConfig& config = {}) {
  config.validate();
  std::vector<GateOp> gates = ctx.gates_for(current);
  Eigen::VectorXd thetas = Eigen::Map<const Eigen::VectorXd>(
      current.thetas().data(), static_cast<Eigen::Index>(current.steps.size()));
  const Eigen::VectorXcd init = ctx.initial_vector(current.init);
  Eigen::VectorXcd psi = detail::forward_state(gates, thetas, init);

  const Eigen::VectorXd g = pool_gradients(psi, ctx.hamiltonian(), ctx.pool_matrices());
  if (g.norm() < config.grad_stop) return std::nullopt;
  const std::size_t pick = detail::select_max_gradient(g);

  Ansatz next = current;
  next.steps.push_back({ctx.pool()[pick].desc, 0.0});
  gates.push_back({ctx.pool_matrices()[pick], true});
  Eigen::VectorXd x0(thetas.size() + 1);
  x0.head(thetas.size()) = thetas;
  x0[thetas.size()] = 0.0;

  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad_out) {
    EnergyGradient eg = energy_and_gradient(gates, x, ctx.hamiltonian(), init);
    grad_out = eg.grad;
    return eg.energy;
  };
  OptimizeResult opt = minimize(objective, x0, config.optimizer);
  for (Eigen::Index k = 0; k < opt.x_star.size(); ++k)
    next.steps[static_cast<std::size_t>(k)].theta = opt.x_star[k];

  StepRecord rec;
  rec.depth = static_cast<int>(next.steps.size());
  rec.selected = ctx.pool()[pick].desc;
  rec.pool_gradient = g[static_cast<Eigen::Index>(pick)];
  rec.energy = opt.f_star;
  rec.params.assign(opt.x_star.data(), opt.x_star.data() + opt.x_star.size());
  if (config.track_fidelity) {
    const Eigen::VectorXcd state =
        detail::forward_state(gates, opt.x_star, init);
    rec.fidelity = std::norm(ctx.fidelity_reference().dot(state));
  }
  return std::make_pair(std::move(next), std::move(rec));
}

/// The adaptive loop: gradient screening, append, warm-started full
/// re-optimization, until a stopping criterion fires.
inline AdaptResult run_adapt(const AdaptContext& ctx, const InitSpec& init_spec,
                             const AdaptConfig& config = {},
                             const StepCallback& callback = {}) {
  config.validate();
  const Eigen::VectorXcd init = ctx.initial_vector(init_spec);
  const bool track = config.track_fidelity || config.target_fidelity.has_value();

  std::vector<GateOp> gates;
  Eigen::VectorXd thetas(0);
  Eigen::VectorXcd psi = init;
  double energy = psi.dot(ctx.hamiltonian() * psi).real();

  AdaptResult result{.ansatz = Ansatz{init_spec, {}},
                     .records = {},
                     .final_state = ctx.expand(psi),
                     .final_energy = energy,
                     .stop_reason = StopReason::MaxDepth,
                     .exact_energy = {}};
  if (track) result.exact_energy = ctx.exact_ground().energy;

  auto make_record = [&](int depth, std::optional<PoolOpDescriptor> sel,
                         double pool_grad) {
    StepRecord rec;
    rec.depth = depth;
    rec.selected = sel;
    rec.pool_gradient = pool_grad;
    rec.energy = energy;
    if (track) rec.fidelity = std::norm(ctx.fidelity_reference().dot(psi));
    rec.params.assign(thetas.data(), thetas.data() + thetas.size());
    return rec;
  };
  result.records.push_back(make_record(0, std::nullopt, 0.0));
  if (callback && callback(result.records.back())) {
    result.stop_reason = StopReason::Callback;
    return result;
  }
  if (config.target_fidelity && result.records.back().fidelity &&
      *result.records.back().fidelity >= *config.target_fidelity) {
    result.stop_reason = StopReason::TargetFidelity;
    return result;
  }

  while (true) {
    const Eigen::VectorXd g =
        pool_gradients(psi, ctx.hamiltonian(), ctx.pool_matrices());
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
      EnergyGradient eg = energy_and_gradient(gates, x, ctx.hamiltonian(), init);
      grad_out = eg.grad;
      return eg.energy;
    };
    OptimizeResult opt = minimize(objective, x0, config.optimizer);

    const double prev_energy = energy;
    thetas = opt.x_star;
    energy = opt.f_star;
    psi = detail::forward_state(gates, thetas, init);
    for (Eigen::Index k = 0; k < thetas.size(); ++k)
      result.ansatz.steps[static_cast<std::size_t>(k)].theta = thetas[k];

    result.records.push_back(make_record(static_cast<int>(gates.size()),
                                         ctx.pool()[pick].desc,
                                         g[static_cast<Eigen::Index>(pick)]));
    const StepRecord& rec = result.records.back();
    if (callback && callback(rec)) {
      result.stop_reason = StopReason::Callback;
      break;
    }
    if (config.target_fidelity && rec.fidelity &&
        *rec.fidelity >= *config.target_fidelity) {
      result.stop_reason = StopReason::TargetFidelity;
      break;
    }
    if (prev_energy - energy < config.epsilon) {
      result.stop_reason = StopReason::EnergyPlateau;
      break;
    }
  }

  result.final_state = ctx.expand(psi);
  result.final_energy = energy;
  return result;
}

/// Contract-level energy/gradient on full-space statevectors; the adaptive
/// loop uses the sector-compressed equivalent.
inline EnergyGradient energy_and_gradient(const Ansatz& ansatz,
                                          const SparseMatrixC& h_full,
                                          const StateVector& init) {
  const int n_qubits = init.n_qubits();
  std::vector<GateOp> gates;
  gates.reserve(ansatz.steps.size());
  Eigen::VectorXd thetas(static_cast<Eigen::Index>(ansatz.steps.size()));
  for (std::size_t k = 0; k < ansatz.steps.size(); ++k) {
    gates.push_back(
        {operator_matrix(jordan_wigner(descriptor_generator(ansatz.steps[k].op,
                                                            n_qubits)),
                         n_qubits),
         true});
    thetas[static_cast<Eigen::Index>(k)] = ansatz.steps[k].theta;
  }
  return energy_and_gradient(gates, thetas, h_full, init.amplitudes());
}

}  // namespace fhvqe

#endif  // FHVQE_ADAPT_HPP

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

#ifndef FHVQE_STATEVECTOR_HPP
#define FHVQE_STATEVECTOR_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fhvqe/errors.hpp"
#include "fhvqe/fermion_op.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/pauli.hpp"

namespace fhvqe {

/// Fixes the global phase so the first largest-magnitude amplitude is real
/// positive; no-op on the zero vector.
inline void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index best = 0;
  double best_mag = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double m = std::abs(v[k]);
    if (m > best_mag) {  // strict: ties resolve to the lowest index
      best_mag = m;
      best = k;
    }
  }
  if (best_mag == 0.0) return;
  v *= std::conj(v[best]) / best_mag;
  v[best] = Complex{std::abs(v[best]), 0.0};  // kill rounding residue
}

/// Normalized amplitude vector over the 2^n occupation basis; qubit 0 is
/// the least-significant bit of the basis index. Immutable value type.
class StateVector {
 public:
  StateVector(int n_qubits, Eigen::VectorXcd amps)
      : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits < 0 || n_qubits > kMaxQubits)
      throw ResourceError("StateVector: qubit count out of range");
    if (amps_.size() != (Eigen::Index{1} << n_qubits))
      throw ValidationError("StateVector: amplitude count != 2^n_qubits");
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > 1e-10)
      throw ValidationError("StateVector: not normalized");
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

 private:
  int n_qubits_;
  Eigen::VectorXcd amps_;
};

inline StateVector basis_state(const std::set<int>& occupied_modes, int n_qubits) {
  std::uint64_t index = 0;
  for (int m : occupied_modes) {
    if (m < 0 || m >= n_qubits)
      throw ValidationError("basis_state: occupied mode out of range");
    index |= std::uint64_t{1} << m;
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

/// Ground state of the quadratic Hamiltonian whose per-spin one-body matrix
/// is `hopping` (n_sites x n_sites, symmetric): the n_up / n_down lowest
/// orbitals are filled per spin species. Throws DegeneracyError when a
/// one-body degeneracy crosses the Fermi level, in which case the filled
/// determinant is not unique.
inline StateVector slater_state(const Eigen::MatrixXd& hopping, int n_up, int n_down) {
  const auto n_sites = static_cast<int>(hopping.rows());
  if (hopping.cols() != n_sites)
    throw ValidationError("slater_state: hopping matrix must be square");
  if ((hopping - hopping.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("slater_state: hopping matrix must be symmetric");
  if (n_up < 0 || n_down < 0 || n_up > n_sites || n_down > n_sites)
    throw ValidationError("slater_state: filling exceeds site count");
  const int n_qubits = 2 * n_sites;
  if (n_qubits > kMaxQubits)
    throw ResourceError("slater_state: more than 14 modes unsupported");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hopping);
  const Eigen::VectorXd& levels = es.eigenvalues();
  for (int filled : {n_up, n_down}) {
    if (filled > 0 && filled < n_sites &&
        levels[filled] - levels[filled - 1] < 1e-8)
      throw DegeneracyError(
          "slater_state: one-body degeneracy at the Fermi level; pick a "
          "different filling");
  }

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps[0] = 1.0;
  for (Spin spin : {Spin::Up, Spin::Down}) {
    const int filled = spin == Spin::Up ? n_up : n_down;
    for (int orbital = 0; orbital < filled; ++orbital) {
      FermionOperator create(n_qubits);
      for (int x = 0; x < n_sites; ++x)
        create.add_term(es.eigenvectors()(x, orbital), {{mode_index(x, spin), true}});
      amps = apply_fermion_operator(create, amps, n_qubits);
    }
  }
  amps /= amps.norm();
  fix_phase(amps);
  return StateVector(n_qubits, std::move(amps));
}

namespace detail {

inline double sparse_inf_norm(const SparseMatrixC& a) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(a, k); it; ++it)
      row_sums[it.row()] += std::abs(it.value());
  return row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

/// exp(i theta A) v by scaled truncated Taylor series. Valid for any A;
/// callers guarantee Hermiticity where unitarity matters.
inline Eigen::VectorXcd exp_action(const SparseMatrixC& a, double theta,
                                   const Eigen::VectorXcd& v) {
  if (a.rows() != v.size() || a.cols() != v.size())
    throw ValidationError("exp_action: dimension mismatch");
  if (theta == 0.0) return v;
  const double scale = std::abs(theta) * sparse_inf_norm(a);
  if (!(scale < 2e6))
    throw NumericalError("exp_action: |theta|*|A| too large to integrate");
  const int n_steps = std::max(1, static_cast<int>(std::ceil(scale / 2.0)));
  const Complex step_factor = Complex{0.0, theta / n_steps};
  Eigen::VectorXcd result = v;
  Eigen::VectorXcd term(v.size());
  for (int s = 0; s < n_steps; ++s) {
    term = result;
    const double base = result.norm();
    for (int m = 1; m <= 64; ++m) {
      term = (step_factor / double(m)) * (a * term).eval();
      result += term;
      if (term.norm() <= 1e-16 * base) break;
    }
  }
  return result;
}

}  // namespace detail

/// e^{i theta A} |psi> for Hermitian sparse A, accurate to ~1e-12 in L2.
inline StateVector apply_exp(const SparseMatrixC& generator, double theta,
                             const StateVector& state) {
  if (generator.rows() != state.dim())
    throw ValidationError("apply_exp: dimension mismatch");
  if (hermiticity_defect(generator) > 1e-12)
    throw ValidationError("apply_exp: generator is not Hermitian");
  Eigen::VectorXcd out = detail::exp_action(generator, theta, state.amplitudes());
  out /= out.norm();  // removes O(1e-14) Taylor drift only
  return StateVector(state.n_qubits(), std::move(out));
}

inline Complex expectation(const SparseMatrixC& op, const StateVector& state) {
  if (op.rows() != state.dim())
    throw ValidationError("expectation: dimension mismatch");
  return state.amplitudes().dot(op * state.amplitudes());
}

inline double expectation_real(const SparseMatrixC& op, const StateVector& state) {
  return expectation(op, state).real();
}

inline Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("overlap: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
  const double f = std::norm(overlap(a, b));
  return f > 1.0 ? 1.0 : f;
}

}  // namespace fhvqe

#endif  // FHVQE_STATEVECTOR_HPP

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

#ifndef FHVQE_FERMION_OP_HPP
#define FHVQE_FERMION_OP_HPP

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fhvqe/errors.hpp"

namespace fhvqe {

using Complex = std::complex<double>;

/// Coefficients below this magnitude are dropped during canonical merging.
inline constexpr double kCoeffDropTol = 1e-14;

/// One creation or annihilation operator acting on a spin-orbital mode.
struct LadderOp {
  int mode;
  bool creation;

  friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

using LadderProduct = std::vector<LadderOp>;  // written left to right

/// A single weighted product of ladder operators. An empty product is the
/// identity (scalar term).
struct FermionTerm {
  Complex coeff;
  LadderProduct ops;
};

/// Applies a ladder product to an occupation basis state. Operators act
/// right to left; qubit/mode k is the k-th bit of the index and bit 1 means
/// occupied. Returns the resulting index and the Jordan-Wigner parity sign,
/// or nothing when the product annihilates the state.
inline std::optional<std::pair<int, std::uint64_t>> apply_ladder_product(
    const LadderProduct& ops, std::uint64_t basis) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << it->mode;
    const bool occupied = (basis & bit) != 0;
    if (it->creation == occupied) return std::nullopt;
    if (std::popcount(basis & (bit - 1)) % 2 != 0) sign = -sign;
    basis ^= bit;
  }
  return std::make_pair(sign, basis);
}

/// Weighted sum of ladder-operator products over n_modes spin-orbitals.
/// Terms with identical ladder sequences are merged on insertion and
/// near-zero coefficients dropped; no normal ordering is performed.
class FermionOperator {
 public:
  explicit FermionOperator(int n_modes) : n_modes_(n_modes) {
    if (n_modes < 0) throw ValidationError("FermionOperator: negative n_modes");
  }

  int n_modes() const { return n_modes_; }

  void add_term(Complex coeff, LadderProduct ops) {
    for (const auto& op : ops) {
      if (op.mode < 0 || op.mode >= n_modes_)
        throw ValidationError("FermionOperator: mode index out of range");
    }
    auto it = terms_.find(ops);
    if (it == terms_.end()) {
      if (std::abs(coeff) >= kCoeffDropTol) terms_.emplace(std::move(ops), coeff);
      return;
    }
    it->second += coeff;
    if (std::abs(it->second) < kCoeffDropTol) terms_.erase(it);
  }

  void add_scalar(Complex c) { add_term(c, {}); }

  FermionOperator& operator+=(const FermionOperator& other) {
    if (other.n_modes_ > n_modes_)
      throw ValidationError("FermionOperator +=: mode count mismatch");
    for (const auto& [ops, c] : other.terms_) add_term(c, ops);
    return *this;
  }

  FermionOperator& operator*=(Complex scale) {
    if (std::abs(scale) < kCoeffDropTol) {
      terms_.clear();
      return *this;
    }
    for (auto& [ops, c] : terms_) c *= scale;
    return *this;
  }

  friend FermionOperator operator*(Complex scale, FermionOperator op) {
    op *= scale;
    return op;
  }

  FermionOperator adjoint() const {
    FermionOperator out(n_modes_);
    for (const auto& [ops, c] : terms_) {
      LadderProduct rev(ops.rbegin(), ops.rend());
      for (auto& op : rev) op.creation = !op.creation;
      out.add_term(std::conj(c), std::move(rev));
    }
    return out;
  }

  bool is_hermitian(double tol = 1e-12) const {
    FermionOperator diff = adjoint();
    diff *= -1.0;
    diff += *this;
    double worst = 0.0;
    for (const auto& [ops, c] : diff.terms_) {
      (void)ops;
      worst = std::max(worst, std::abs(c));
    }
    if (worst <= tol) return true;
    // Symbolically distinct sequences can still cancel as operators (for
    // instance commuting number products written in either order); settle
    // it by the matrix action.
    return diff.max_matrix_entry() <= tol;
  }

  /// Largest matrix-element magnitude of the operator's occupation-basis
  /// realization, computed by direct ladder action.
  double max_matrix_entry() const {
    if (n_modes_ > 20)
      throw ResourceError("FermionOperator: matrix check beyond 2^20");
    const std::uint64_t dim = std::uint64_t{1} << n_modes_;
    double worst = 0.0;
    std::map<std::uint64_t, Complex> column;
    for (std::uint64_t b = 0; b < dim; ++b) {
      column.clear();
      for (const auto& [ops, c] : terms_) {
        if (auto hit = apply_ladder_product(ops, b))
          column[hit->second] += c * static_cast<double>(hit->first);
      }
      for (const auto& [row, value] : column) {
        (void)row;
        worst = std::max(worst, std::abs(value));
      }
    }
    return worst;
  }

  /// True when every term creates as many particles as it annihilates,
  /// separately per spin (mode parity), so the operator is block-diagonal
  /// over (n_up, n_down) sectors.
  bool conserves_spin_counts() const {
    for (const auto& [ops, c] : terms_) {
      (void)c;
      int up = 0, down = 0;
      for (const auto& op : ops) {
        int delta = op.creation ? 1 : -1;
        (op.mode % 2 == 0 ? up : down) += delta;
      }
      if (up != 0 || down != 0) return false;
    }
    return true;
  }

  std::vector<FermionTerm> terms() const {
    std::vector<FermionTerm> out;
    out.reserve(terms_.size());
    for (const auto& [ops, c] : terms_) out.push_back({c, ops});
    return out;
  }

  std::size_t term_count() const { return terms_.size(); }

 private:
  int n_modes_;
  std::map<LadderProduct, Complex> terms_;  // canonical, deterministic order
};

/// Applies a FermionOperator to a dense amplitude vector over the full
/// 2^n_qubits occupation basis (direct ladder action, no Pauli detour).
inline Eigen::VectorXcd apply_fermion_operator(const FermionOperator& op,
                                               const Eigen::VectorXcd& amps,
                                               int n_qubits) {
  if (op.n_modes() > n_qubits)
    throw ValidationError("apply_fermion_operator: operator exceeds qubit count");
  const auto dim = static_cast<std::int64_t>(amps.size());
  if (dim != (std::int64_t{1} << n_qubits))
    throw ValidationError("apply_fermion_operator: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (const auto& term : op.terms()) {
    for (std::int64_t b = 0; b < dim; ++b) {
      if (amps[b] == Complex{0.0, 0.0}) continue;
      if (auto hit = apply_ladder_product(term.ops, static_cast<std::uint64_t>(b))) {
        out[static_cast<std::int64_t>(hit->second)] +=
            term.coeff * static_cast<double>(hit->first) * amps[b];
      }
    }
  }
  return out;
}

}  // namespace fhvqe

#endif  // FHVQE_FERMION_OP_HPP

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

#ifndef FHVQE_JORDAN_WIGNER_HPP
#define FHVQE_JORDAN_WIGNER_HPP

#include "fhvqe/fermion_op.hpp"
#include "fhvqe/pauli.hpp"

namespace fhvqe {

/// Jordan-Wigner image of a single ladder operator:
///   a_k  -> Z_0 ... Z_{k-1} (X_k + iY_k)/2
///   a†_k -> Z_0 ... Z_{k-1} (X_k - iY_k)/2
/// so that qubit value 1 denotes an occupied mode.
inline QubitOperator jw_ladder_op(const LadderOp& op, int n_qubits) {
  if (op.mode < 0 || op.mode >= n_qubits)
    throw ValidationError("jordan_wigner: mode index out of range");
  PauliString::Factors zs;
  zs.reserve(static_cast<std::size_t>(op.mode) + 1);
  for (int q = 0; q < op.mode; ++q) zs.emplace_back(q, 'Z');

  QubitOperator out(n_qubits);
  auto x_factors = zs;
  x_factors.emplace_back(op.mode, 'X');
  out.add_term(0.5, PauliString(n_qubits, std::move(x_factors)));
  auto y_factors = std::move(zs);
  y_factors.emplace_back(op.mode, 'Y');
  const Complex half_i{0.0, 0.5};
  out.add_term(op.creation ? -half_i : half_i,
               PauliString(n_qubits, std::move(y_factors)));
  return out;
}

/// Maps a FermionOperator to its qubit image, linear term by term. The
/// result satisfies jordan_wigner(A†) == jordan_wigner(A)†.
inline QubitOperator jordan_wigner(const FermionOperator& op) {
  const int n = op.n_modes();
  QubitOperator total(n);
  for (const auto& term : op.terms()) {
    QubitOperator prod(n);
    prod.add_term(term.coeff, PauliString(n, {}));
    for (const auto& ladder : term.ops) prod = prod * jw_ladder_op(ladder, n);
    total += prod;
  }
  return total;
}

}  // namespace fhvqe

#endif  // FHVQE_JORDAN_WIGNER_HPP

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

// Test-only oracles, kept independent of the library code paths they check:
// dense ladder-operator matrices built directly from the occupation-basis
// action, plus small RNG helpers.

#ifndef FHVQE_TESTS_TEST_UTIL_HPP
#define FHVQE_TESTS_TEST_UTIL_HPP

#include <bit>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "fhvqe/fermion_op.hpp"

namespace fhvqe_test {

using Complex = std::complex<double>;

/// Dense matrix of a single ladder operator from its textbook action:
/// a_k |b> = (-1)^{#occupied below k} |b without k>  (0 if k empty),
/// and the transpose-conjugate rule for a†_k.
inline Eigen::MatrixXcd ladder_dense(int mode, bool creation, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const std::uint64_t bit = std::uint64_t{1} << mode;
  for (std::int64_t b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const bool occupied = (ub & bit) != 0;
    if (creation == occupied) continue;
    const double sign = std::popcount(ub & (bit - 1)) % 2 == 0 ? 1.0 : -1.0;
    out(static_cast<std::int64_t>(ub ^ bit), b) = sign;
  }
  return out;
}

inline Eigen::MatrixXcd fermion_dense(const fhvqe::FermionOperator& op, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : op.terms()) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& ladder : term.ops)
      prod = prod * ladder_dense(ladder.mode, ladder.creation, n_qubits);
    out += term.coeff * prod;
  }
  return out;
}

inline Eigen::VectorXcd random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int k = 0; k < dim; ++k) v[k] = Complex{gauss(rng), gauss(rng)};
  v /= v.norm();
  return v;
}

}  // namespace fhvqe_test

#endif  // FHVQE_TESTS_TEST_UTIL_HPP

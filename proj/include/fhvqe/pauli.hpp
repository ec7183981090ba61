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

#ifndef FHVQE_PAULI_HPP
#define FHVQE_PAULI_HPP

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fhvqe/errors.hpp"
#include "fhvqe/fermion_op.hpp"

namespace fhvqe {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;

/// Largest supported register; 2^14 amplitudes keeps dense vectors and
/// sparse operator realizations comfortably in memory.
inline constexpr int kMaxQubits = 14;

/// Tensor product of single-qubit Pauli factors (identity implicit),
/// canonically ordered by qubit index.
class PauliString {
 public:
  using Factors = std::vector<std::pair<int, char>>;  // (qubit, 'X'|'Y'|'Z')

  PauliString() = default;

  PauliString(int n_qubits, Factors factors)
      : n_qubits_(n_qubits), factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      auto [q, p] = factors_[i];
      if (q < 0 || q >= n_qubits_)
        throw ValidationError("PauliString: qubit index out of range");
      if (i > 0 && factors_[i - 1].first == q)
        throw ValidationError("PauliString: duplicate qubit factor");
      if (p != 'X' && p != 'Y' && p != 'Z')
        throw ValidationError("PauliString: unknown Pauli label");
    }
  }

  int n_qubits() const { return n_qubits_; }
  const Factors& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  std::string to_string() const {
    if (factors_.empty()) return "I";
    std::string s;
    for (const auto& [q, p] : factors_) {
      if (!s.empty()) s += ' ';
      s += p;
      s += std::to_string(q);
    }
    return s;
  }

  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.factors_ <=> b.factors_;
  }
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.factors_ == b.factors_;
  }

 private:
  int n_qubits_ = 0;
  Factors factors_;
};

namespace detail {

// sigma_a * sigma_b = phase * sigma_c for single-qubit Paulis.
inline std::pair<Complex, char> pauli_mul_single(char a, char b) {
  if (a == b) return {1.0, 'I'};
  const Complex i{0.0, 1.0};
  if (a == 'X' && b == 'Y') return {i, 'Z'};
  if (a == 'Y' && b == 'X') return {-i, 'Z'};
  if (a == 'Y' && b == 'Z') return {i, 'X'};
  if (a == 'Z' && b == 'Y') return {-i, 'X'};
  if (a == 'Z' && b == 'X') return {i, 'Y'};
  // a == 'X' && b == 'Z'
  return {-i, 'Y'};
}

}  // namespace detail

/// Product of two Pauli strings with the accumulated scalar phase.
inline std::pair<Complex, PauliString> pauli_mul(const PauliString& a,
                                                 const PauliString& b) {
  const int n = std::max(a.n_qubits(), b.n_qubits());
  Complex phase = 1.0;
  PauliString::Factors out;
  auto ia = a.factors().begin(), ea = a.factors().end();
  auto ib = b.factors().begin(), eb = b.factors().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      auto [ph, p] = detail::pauli_mul_single(ia->second, ib->second);
      phase *= ph;
      if (p != 'I') out.emplace_back(ia->first, p);
      ++ia;
      ++ib;
    }
  }
  return {phase, PauliString(n, std::move(out))};
}

/// Weighted sum of Pauli strings; duplicates merged, near-zero coefficients
/// dropped at the same threshold as FermionOperator.
class QubitOperator {
 public:
  explicit QubitOperator(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0) throw ValidationError("QubitOperator: negative n_qubits");
  }

  int n_qubits() const { return n_qubits_; }

  void add_term(Complex coeff, const PauliString& str) {
    if (str.n_qubits() > n_qubits_)
      throw ValidationError("QubitOperator: string exceeds qubit count");
    auto it = terms_.find(str.factors());
    if (it == terms_.end()) {
      if (std::abs(coeff) >= kCoeffDropTol) terms_.emplace(str.factors(), coeff);
      return;
    }
    it->second += coeff;
    if (std::abs(it->second) < kCoeffDropTol) terms_.erase(it);
  }

  QubitOperator& operator+=(const QubitOperator& other) {
    for (const auto& [f, c] : other.terms_)
      add_term(c, PauliString(n_qubits_, f));
    return *this;
  }

  QubitOperator& operator*=(Complex scale) {
    if (std::abs(scale) < kCoeffDropTol) {
      terms_.clear();
      return *this;
    }
    for (auto& [f, c] : terms_) c *= scale;
    return *this;
  }

  friend QubitOperator operator*(Complex scale, QubitOperator op) {
    op *= scale;
    return op;
  }

  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
    QubitOperator out(std::max(a.n_qubits_, b.n_qubits_));
    for (const auto& [fa, ca] : a.terms_) {
      for (const auto& [fb, cb] : b.terms_) {
        auto [phase, str] = pauli_mul(PauliString(out.n_qubits_, fa),
                                      PauliString(out.n_qubits_, fb));
        out.add_term(ca * cb * phase, str);
      }
    }
    return out;
  }

  QubitOperator adjoint() const {
    QubitOperator out(n_qubits_);
    for (const auto& [f, c] : terms_)
      out.add_term(std::conj(c), PauliString(n_qubits_, f));
    return out;
  }

  std::vector<std::pair<Complex, PauliString>> terms() const {
    std::vector<std::pair<Complex, PauliString>> out;
    out.reserve(terms_.size());
    for (const auto& [f, c] : terms_)
      out.emplace_back(c, PauliString(n_qubits_, f));
    return out;
  }

  std::size_t term_count() const { return terms_.size(); }

 private:
  int n_qubits_;
  std::map<PauliString::Factors, Complex> terms_;
};

/// Sparse 2^n x 2^n realization in the computational basis, qubit 0 as the
/// least-significant bit of the basis index.
inline SparseMatrixC operator_matrix(const QubitOperator& op, int n_qubits) {
  if (n_qubits < op.n_qubits())
    throw ValidationError("operator_matrix: qubit index out of range");
  if (n_qubits > kMaxQubits)
    throw ResourceError("operator_matrix: dimension guard 2^14 exceeded");
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& [coeff, str] : op.terms()) {
    std::uint64_t flip = 0, zy_mask = 0;
    int n_y = 0;
    for (const auto& [q, p] : str.factors()) {
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (p == 'X' || p == 'Y') flip |= bit;
      if (p == 'Z' || p == 'Y') zy_mask |= bit;
      if (p == 'Y') ++n_y;
    }
    // i^{#Y} with Y contributing an extra (-1)^{bit} via zy_mask.
    const Complex i{0.0, 1.0};
    Complex y_phase = 1.0;
    for (int k = 0; k < n_y; ++k) y_phase *= i;
    for (std::int64_t col = 0; col < dim; ++col) {
      const auto b = static_cast<std::uint64_t>(col);
      const double sign = (std::popcount(b & zy_mask) % 2 == 0) ? 1.0 : -1.0;
      trips.emplace_back(static_cast<std::int64_t>(b ^ flip), col,
                         coeff * y_phase * sign);
    }
  }
  SparseMatrixC mat(dim, dim);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.prune([](int, int, const Complex& v) { return std::abs(v) > 0.0; });
  mat.makeCompressed();
  return mat;
}

/// Max |A_ij - conj(A_ji)| over the support of A.
inline double hermiticity_defect(const SparseMatrixC& a) {
  SparseMatrixC diff = a - SparseMatrixC(a.adjoint());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace fhvqe

#endif  // FHVQE_PAULI_HPP

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

#ifndef FHVQE_EXACT_DIAG_HPP
#define FHVQE_EXACT_DIAG_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fhvqe/errors.hpp"
#include "fhvqe/fermion_op.hpp"
#include "fhvqe/statevector.hpp"

namespace fhvqe {

/// Joint particle-number labels (n_up, n_down); up spins live on even modes.
struct Sector {
  int n_up = 0;
  int n_down = 0;

  friend auto operator<=>(const Sector&, const Sector&) = default;

  void validate(int n_modes) const {
    if (n_up < 0 || n_down < 0)
      throw ValidationError("Sector: negative occupation");
    if (2 * n_up > n_modes || 2 * n_down > n_modes)
      throw ValidationError("Sector: occupation exceeds site count");
  }
};

inline Sector sector_of_basis(std::uint64_t index, int n_modes) {
  int up = 0, down = 0;
  for (int m = 0; m < n_modes; ++m)
    if (index >> m & 1) (m % 2 == 0 ? up : down)++;
  return {up, down};
}

/// All basis indices with exactly n_up bits on even positions and n_down on
/// odd positions, ascending.
inline std::vector<std::uint64_t> sector_basis(int n_modes, const Sector& sector) {
  sector.validate(n_modes);
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_modes;
  for (std::uint64_t b = 0; b < dim; ++b)
    if (sector_of_basis(b, n_modes) == Sector{sector.n_up, sector.n_down})
      out.push_back(b);
  return out;
}

/// A symmetry sector with both directions of the full-space embedding.
class SectorSpace {
 public:
  SectorSpace(int n_modes, Sector sector)
      : n_modes_(n_modes), sector_(sector), basis_(sector_basis(n_modes, sector)) {
    position_.assign(std::size_t{1} << n_modes, -1);
    for (std::size_t k = 0; k < basis_.size(); ++k)
      position_[basis_[k]] = static_cast<std::int64_t>(k);
  }

  int n_modes() const { return n_modes_; }
  const Sector& sector() const { return sector_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<std::uint64_t>& basis() const { return basis_; }

  std::int64_t position_of(std::uint64_t full_index) const {
    return position_[full_index];
  }

  Eigen::VectorXcd compress(const Eigen::VectorXcd& full) const {
    Eigen::VectorXcd out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k)
      out[k] = full[static_cast<Eigen::Index>(basis_[k])];
    return out;
  }

  Eigen::VectorXcd expand(const Eigen::VectorXcd& compressed) const {
    Eigen::VectorXcd out =
        Eigen::VectorXcd::Zero(Eigen::Index{1} << n_modes_);
    for (Eigen::Index k = 0; k < dim(); ++k)
      out[static_cast<Eigen::Index>(basis_[k])] = compressed[k];
    return out;
  }

  /// Largest amplitude weight outside this sector.
  double leakage(const Eigen::VectorXcd& full) const {
    double worst = 0.0;
    for (Eigen::Index b = 0; b < full.size(); ++b)
      if (position_[static_cast<std::uint64_t>(b)] < 0)
        worst = std::max(worst, std::abs(full[b]));
    return worst;
  }

 private:
  int n_modes_;
  Sector sector_;
  std::vector<std::uint64_t> basis_;
  std::vector<std::int64_t> position_;
};

/// Restriction of a sector-preserving FermionOperator to the sector basis.
/// Throws when a term maps a sector state outside the sector.
inline SparseMatrixC sector_sparse_matrix(const FermionOperator& op,
                                          const SectorSpace& space) {
  std::vector<Eigen::Triplet<Complex>> trips;
  for (const auto& term : op.terms()) {
    for (Eigen::Index col = 0; col < space.dim(); ++col) {
      const std::uint64_t b = space.basis()[col];
      if (auto hit = apply_ladder_product(term.ops, b)) {
        const std::int64_t row = space.position_of(hit->second);
        if (row < 0)
          throw ValidationError(
              "sector_sparse_matrix: operator leaves the sector");
        trips.emplace_back(row, col, term.coeff * double(hit->first));
      }
    }
  }
  SparseMatrixC mat(space.dim(), space.dim());
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();
  return mat;
}

inline Eigen::MatrixXcd sector_dense_matrix(const FermionOperator& op,
                                            const SectorSpace& space) {
  return Eigen::MatrixXcd(sector_sparse_matrix(op, space));
}

struct EigenResult {
  Eigen::VectorXd energies;         // ascending
  std::vector<StateVector> states;  // embedded in the full 2^n space
  double ground_gap = std::numeric_limits<double>::infinity();
};

namespace detail {

/// Canonicalizes eigenvectors: within each (near-)degenerate group the basis
/// is rebuilt by index-ordered Gram-Schmidt of projected coordinate vectors,
/// so results do not depend on arbitrary eigensolver rotations.
inline void canonicalize_degenerate(const Eigen::VectorXd& energies,
                                    Eigen::MatrixXcd& vectors,
                                    double group_tol = 1e-8) {
  const Eigen::Index n = energies.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && energies[stop] - energies[stop - 1] < group_tol) ++stop;
    const Eigen::Index g = stop - start;
    if (g > 1) {
      const Eigen::MatrixXcd sub = vectors.middleCols(start, g);
      Eigen::MatrixXcd fresh(sub.rows(), g);
      Eigen::Index found = 0;
      for (Eigen::Index j = 0; j < sub.rows() && found < g; ++j) {
        Eigen::VectorXcd w = sub * sub.row(j).adjoint();  // P e_j
        for (Eigen::Index k = 0; k < found; ++k)
          w -= fresh.col(k).dot(w) * fresh.col(k);
        const double norm = w.norm();
        if (norm > 1e-6) fresh.col(found++) = w / norm;
      }
      if (found == g) vectors.middleCols(start, g) = fresh;
    }
    start = stop;
  }
}

}  // namespace detail

/// K lowest eigenpairs of H restricted to the sector, energies ascending,
/// states phase-fixed and embedded in the full space.
inline EigenResult lowest_k(const FermionOperator& h, const SectorSpace& space,
                            Eigen::Index k) {
  if (k < 1 || k > space.dim())
    throw ValidationError("lowest_k: K outside [1, sector dimension]");
  Eigen::MatrixXcd mat = sector_dense_matrix(h, space);
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("lowest_k: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat);
  if (es.info() != Eigen::Success)
    throw NumericalError("lowest_k: eigensolver failed");
  Eigen::VectorXd energies = es.eigenvalues();
  Eigen::MatrixXcd vectors = es.eigenvectors();
  detail::canonicalize_degenerate(energies, vectors);

  EigenResult out;
  out.energies = energies.head(k);
  out.states.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::VectorXcd full = space.expand(vectors.col(j));
    fix_phase(full);
    full /= full.norm();
    out.states.emplace_back(space.n_modes(), std::move(full));
  }
  if (space.dim() > 1) out.ground_gap = energies[1] - energies[0];
  return out;
}

inline EigenResult lowest_k(const FermionOperator& h, const Sector& sector,
                            Eigen::Index k) {
  return lowest_k(h, SectorSpace(h.n_modes(), sector), k);
}

struct GroundState {
  double energy = 0.0;
  StateVector state;
  bool degenerate = false;
};

inline GroundState ground_state(const FermionOperator& h, const SectorSpace& space) {
  EigenResult res = lowest_k(h, space, std::min<Eigen::Index>(2, space.dim()));
  return {res.energies[0], res.states[0], res.ground_gap < 1e-8};
}

inline GroundState ground_state(const FermionOperator& h, const Sector& sector) {
  return ground_state(h, SectorSpace(h.n_modes(), sector));
}

}  // namespace fhvqe

#endif  // FHVQE_EXACT_DIAG_HPP

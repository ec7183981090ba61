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

#ifndef FHVQE_HUBBARD_HPP
#define FHVQE_HUBBARD_HPP

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fhvqe/errors.hpp"
#include "fhvqe/fermion_op.hpp"

namespace fhvqe {

enum class Boundary { Open, PeriodicX, PeriodicXY };

enum class Spin { Up = 0, Down = 1 };

/// Spin-orbital mode index: spins interleaved, sites row-major over W x H.
inline int mode_index(int site, Spin spin) {
  return 2 * site + static_cast<int>(spin);
}

inline int mode_site(int mode) { return mode / 2; }
inline Spin mode_spin(int mode) { return static_cast<Spin>(mode % 2); }

struct GridSpec {
  int width = 1;
  int height = 1;
  Boundary boundary = Boundary::Open;

  int n_sites() const { return width * height; }
  int n_modes() const { return 2 * n_sites(); }

  void validate() const {
    if (width < 1 || height < 1)
      throw ValidationError("GridSpec: width and height must be positive");
    if (n_sites() > 7)
      throw ResourceError("GridSpec: more than 7 sites (14 modes) unsupported");
  }

  int site_at(int x, int y) const { return y * width + x; }

  bool is_chain() const { return width == 1 || height == 1; }
  int chain_length() const { return std::max(width, height); }
};

struct HubbardParams {
  double t = 1.0;
  double u = 0.0;
  double mu = 0.0;

  void validate() const {
    if (!std::isfinite(t) || !std::isfinite(u) || !std::isfinite(mu))
      throw ValidationError("HubbardParams: t, U, mu must be finite");
  }
};

/// Nearest-neighbor site pairs, deduplicated (periodic wrap on a 2-site
/// direction does not double a bond).
inline std::vector<std::pair<int, int>> grid_bonds(const GridSpec& grid) {
  grid.validate();
  std::set<std::pair<int, int>> bonds;
  auto add = [&bonds](int a, int b) {
    if (a != b) bonds.emplace(std::min(a, b), std::max(a, b));
  };
  const bool wrap_x = grid.boundary != Boundary::Open;
  const bool wrap_y = grid.boundary == Boundary::PeriodicXY;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      if (x + 1 < grid.width) add(grid.site_at(x, y), grid.site_at(x + 1, y));
      else if (wrap_x && grid.width > 1) add(grid.site_at(x, y), grid.site_at(0, y));
      if (y + 1 < grid.height) add(grid.site_at(x, y), grid.site_at(x, y + 1));
      else if (wrap_y && grid.height > 1) add(grid.site_at(x, y), grid.site_at(x, 0));
    }
  }
  return {bonds.begin(), bonds.end()};
}

/// H = -t sum_<ij>,s (c†_is c_js + h.c.) + U sum_i n_iup n_idown
///     - mu sum_is n_is
inline FermionOperator build_hamiltonian(const GridSpec& grid,
                                         const HubbardParams& params) {
  grid.validate();
  params.validate();
  FermionOperator h(grid.n_modes());
  for (const auto& [a, b] : grid_bonds(grid)) {
    for (Spin s : {Spin::Up, Spin::Down}) {
      const int ma = mode_index(a, s), mb = mode_index(b, s);
      h.add_term(-params.t, {{ma, true}, {mb, false}});
      h.add_term(-params.t, {{mb, true}, {ma, false}});
    }
  }
  for (int site = 0; site < grid.n_sites(); ++site) {
    const int up = mode_index(site, Spin::Up), down = mode_index(site, Spin::Down);
    if (params.u != 0.0)
      h.add_term(params.u, {{up, true}, {up, false}, {down, true}, {down, false}});
    if (params.mu != 0.0) {
      h.add_term(-params.mu, {{up, true}, {up, false}});
      h.add_term(-params.mu, {{down, true}, {down, false}});
    }
  }
  return h;
}

/// One-body matrix of the quadratic part (hopping plus -mu diagonal) over
/// sites; equal for both spin species.
inline Eigen::MatrixXd one_body_matrix(const GridSpec& grid,
                                       const HubbardParams& params) {
  grid.validate();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(grid.n_sites(), grid.n_sites());
  for (const auto& [a, b] : grid_bonds(grid)) {
    h(a, b) = -params.t;
    h(b, a) = -params.t;
  }
  h.diagonal().array() -= params.mu;
  return h;
}

/// Descriptor of a pool element; one_body uses idx[0..1], two_body idx[0..3].
struct PoolOpDescriptor {
  enum class Kind { OneBody, TwoBody };
  Kind kind = Kind::OneBody;
  std::array<int, 4> idx{0, 0, 0, 0};

  friend auto operator<=>(const PoolOpDescriptor&, const PoolOpDescriptor&) = default;

  std::string to_string() const {
    std::string s = kind == Kind::OneBody ? "1b" : "2b";
    const int n = kind == Kind::OneBody ? 2 : 4;
    for (int k = 0; k < n; ++k) s += " " + std::to_string(idx[k]);
    return s;
  }
};

/// A pool element: Hermitian generator A = i(T - T†) for the excitation
/// T = c†_i c_j (one-body, same spin) or T = c†_i c†_j c_k c_l (two-body,
/// spin conserving). The ansatz gate is exp(i theta A) = exp(theta (T - T†)),
/// which keeps real amplitudes real and has a nonzero energy gradient on
/// product states; T + T† would commute into a vanishing gradient there.
struct PoolOperator {
  PoolOpDescriptor desc;
  FermionOperator generator;
};

namespace detail {

inline FermionOperator anti_hermitian_pair(const LadderProduct& t_ops, int n_modes) {
  FermionOperator gen(n_modes);
  const Complex i{0.0, 1.0};
  gen.add_term(i, t_ops);
  LadderProduct rev(t_ops.rbegin(), t_ops.rend());
  for (auto& op : rev) op.creation = !op.creation;
  gen.add_term(-i, std::move(rev));
  return gen;
}

}  // namespace detail

/// All distinct spin- and number-conserving one- and two-body generators.
/// Canonical ordering: creation indices i < j, annihilation k < l, creation
/// pair lexicographically below the annihilation pair (dedups Hermitian
/// conjugates); purely diagonal excitations ({i,j} == {k,l}) are excluded.
inline std::vector<PoolOperator> build_pool(int n_sites) {
  if (n_sites < 1) throw ValidationError("build_pool: need at least one site");
  if (2 * n_sites > 14)
    throw ResourceError("build_pool: more than 14 modes unsupported");
  const int n_modes = 2 * n_sites;
  std::vector<PoolOperator> pool;

  for (int i = 0; i < n_modes; ++i) {
    for (int j = i + 1; j < n_modes; ++j) {
      if (mode_spin(i) != mode_spin(j)) continue;
      PoolOpDescriptor d{PoolOpDescriptor::Kind::OneBody, {i, j, 0, 0}};
      pool.push_back({d, detail::anti_hermitian_pair({{i, true}, {j, false}}, n_modes)});
    }
  }

  // Mode pairs grouped by spin content; a two-body excitation conserves
  // (n_up, n_down) iff its creation and annihilation pairs carry the same
  // spin multiset.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_modes; ++i)
    for (int j = i + 1; j < n_modes; ++j) pairs.emplace_back(i, j);
  auto spin_key = [](const std::pair<int, int>& p) {
    return static_cast<int>(mode_spin(p.first)) + static_cast<int>(mode_spin(p.second));
  };
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (spin_key(pairs[a]) != spin_key(pairs[b])) continue;
      const auto [i, j] = pairs[a];
      const auto [k, l] = pairs[b];
      PoolOpDescriptor d{PoolOpDescriptor::Kind::TwoBody, {i, j, k, l}};
      pool.push_back({d, detail::anti_hermitian_pair(
                             {{i, true}, {j, true}, {k, false}, {l, false}}, n_modes)});
    }
  }

  std::sort(pool.begin(), pool.end(),
            [](const PoolOperator& a, const PoolOperator& b) { return a.desc < b.desc; });
  return pool;
}

/// Annihilation operator of a chain momentum mode: plane waves on periodic
/// chains, particle-in-a-box sine modes on open chains.
inline FermionOperator momentum_mode(int k_index, Spin spin, const GridSpec& grid) {
  grid.validate();
  if (!grid.is_chain())
    throw ValidationError("momentum_mode: grid is not a 1xL or Lx1 chain");
  const int length = grid.chain_length();
  if (k_index < 0 || k_index >= length)
    throw ValidationError("momentum_mode: k index out of range");
  FermionOperator op(grid.n_modes());
  // The long direction wraps under periodic-x only when it is the x axis;
  // a 1xL chain needs periodic-xy. A 2-site ring is the same as a bond.
  const bool wraps = grid.width > 1 ? grid.boundary != Boundary::Open
                                    : grid.boundary == Boundary::PeriodicXY;
  const bool periodic = wraps && length > 2;
  for (int x = 0; x < length; ++x) {
    Complex coeff;
    if (periodic) {
      const double phase = -2.0 * std::numbers::pi * k_index * x / length;
      coeff = Complex{std::cos(phase), std::sin(phase)} / std::sqrt(double(length));
    } else {
      coeff = std::sqrt(2.0 / (length + 1)) *
              std::sin(std::numbers::pi * (k_index + 1) * (x + 1) / (length + 1));
    }
    op.add_term(coeff, {{mode_index(x, spin), false}});
  }
  return op;
}

}  // namespace fhvqe

#endif  // FHVQE_HUBBARD_HPP

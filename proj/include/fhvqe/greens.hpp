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

#ifndef FHVQE_GREENS_HPP
#define FHVQE_GREENS_HPP

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fhvqe/adapt.hpp"
#include "fhvqe/errors.hpp"
#include "fhvqe/exact_diag.hpp"
#include "fhvqe/hubbard.hpp"
#include "fhvqe/ssvqe.hpp"
#include "fhvqe/statevector.hpp"

namespace fhvqe {

struct LehmannTerm {
  double level_energy = 0.0;  // E_n of the excited state
  double weight = 0.0;        // |<E_n| c†_k or c_k |G>|^2
};

/// Pole data of the zero-temperature retarded propagator for one mode:
/// particle terms carry |<E_n|c†_k|G>|^2 over the N+1 sector, hole terms
/// |<E_n|c_k|G>|^2 over N-1. With complete eigenbases the weights sum to 1
/// (anticommutation sum rule).
struct LehmannData {
  double ground_energy = 0.0;
  std::vector<LehmannTerm> particle_terms;
  std::vector<LehmannTerm> hole_terms;
  int k_index = 0;
  Spin spin = Spin::Up;

  double total_weight() const {
    double sum = 0.0;
    for (const auto& t : particle_terms) sum += t.weight;
    for (const auto& t : hole_terms) sum += t.weight;
    return sum;
  }
};

struct SpectralData {
  Eigen::VectorXd omega_grid;
  Eigen::VectorXcd green;
  Eigen::VectorXd spectral;  // A = -Im(G)/pi
  double nu = 0.1;
};

/// Energy-labelled eigen-approximations of one excitation sector.
struct SectorStates {
  std::vector<double> energies;
  std::vector<StateVector> states;  // full space, orthonormal
};

namespace detail {

inline void require_annihilation_mode(const FermionOperator& mode_op) {
  for (const auto& term : mode_op.terms()) {
    if (term.ops.size() != 1 || term.ops[0].creation)
      throw ValidationError(
          "transition_amplitudes: mode operator must be a sum of single "
          "annihilation operators");
  }
}

inline void require_sector(const StateVector& state, int n_modes,
                           const Sector& expect, const char* what) {
  const SectorSpace space(n_modes, expect);
  if (space.leakage(state.amplitudes()) > 1e-10)
    throw ValidationError(std::string("transition_amplitudes: ") + what +
                          " state lies outside the expected sector");
}

}  // namespace detail

/// Transition weights by direct statevector inner products.
inline LehmannData transition_amplitudes(const StateVector& ground,
                                         double ground_energy,
                                         const SectorStates& particle,
                                         const SectorStates& hole,
                                         const FermionOperator& mode_op,
                                         int k_index, Spin spin) {
  detail::require_annihilation_mode(mode_op);
  const int n = ground.n_qubits();
  // Locate the ground sector from its support; excited states must sit one
  // particle above (below) it in the mode's spin species.
  Eigen::Index anchor = 0;
  ground.amplitudes().cwiseAbs().maxCoeff(&anchor);
  const Sector g_sector = sector_of_basis(static_cast<std::uint64_t>(anchor), n);
  const int dn_up = spin == Spin::Up ? 1 : 0;
  const Sector particle_sector{g_sector.n_up + dn_up, g_sector.n_down + 1 - dn_up};
  const Sector hole_sector{g_sector.n_up - dn_up, g_sector.n_down - 1 + dn_up};
  for (const auto& s : particle.states)
    detail::require_sector(s, n, particle_sector, "particle");
  for (const auto& s : hole.states) detail::require_sector(s, n, hole_sector, "hole");

  LehmannData data;
  data.ground_energy = ground_energy;
  data.k_index = k_index;
  data.spin = spin;

  const Eigen::VectorXcd created =
      apply_fermion_operator(mode_op.adjoint(), ground.amplitudes(), n);
  for (std::size_t m = 0; m < particle.states.size(); ++m) {
    const double w = std::norm(particle.states[m].amplitudes().dot(created));
    data.particle_terms.push_back({particle.energies[m], w});
  }
  const Eigen::VectorXcd annihilated =
      apply_fermion_operator(mode_op, ground.amplitudes(), n);
  for (std::size_t m = 0; m < hole.states.size(); ++m) {
    const double w = std::norm(hole.states[m].amplitudes().dot(annihilated));
    data.hole_terms.push_back({hole.energies[m], w});
  }
  return data;
}

/// G(w) = sum_n [ w+_n / (w + E_G - E_n + i nu) + w-_n / (w - E_G + E_n + i nu) ]
/// and A = -Im(G)/pi.
inline SpectralData propagator(const LehmannData& data,
                               const Eigen::VectorXd& omega_grid, double nu) {
  if (nu <= 0.0) throw ValidationError("propagator: broadening nu must be positive");
  for (Eigen::Index i = 1; i < omega_grid.size(); ++i)
    if (omega_grid[i] <= omega_grid[i - 1])
      throw ValidationError("propagator: omega grid must be ascending");
  SpectralData out;
  out.omega_grid = omega_grid;
  out.nu = nu;
  out.green.resize(omega_grid.size());
  out.spectral.resize(omega_grid.size());
  for (Eigen::Index i = 0; i < omega_grid.size(); ++i) {
    const double w = omega_grid[i];
    Complex g{0.0, 0.0};
    for (const auto& t : data.particle_terms)
      g += t.weight / Complex{w + data.ground_energy - t.level_energy, nu};
    for (const auto& t : data.hole_terms)
      g += t.weight / Complex{w - data.ground_energy + t.level_energy, nu};
    out.green[i] = g;
    out.spectral[i] = -g.imag() / std::numbers::pi;
  }
  return out;
}

enum class GreensSource { Ed, AdaptSsvqe };

struct GreensConfig {
  GreensSource source = GreensSource::Ed;
  double nu = 0.1;
  double omega_min = -10.0;
  double omega_max = 10.0;
  double omega_step = 0.01;
  std::vector<std::pair<int, Spin>> modes;  // (k_index, spin)
  AdaptConfig adapt;       // ground-state run (AdaptSsvqe source)
  AdaptConfig ssvqe_adapt; // excitation-sector runs (AdaptSsvqe source)
  int k_cap = 16;          // full sector dimension up to this, else 8

  Eigen::VectorXd omega_grid() const {
    if (omega_step <= 0.0 || omega_max <= omega_min)
      throw ValidationError("GreensConfig: bad omega grid");
    const auto count = static_cast<Eigen::Index>(
        std::floor((omega_max - omega_min) / omega_step + 1e-9)) + 1;
    Eigen::VectorXd grid(count);
    for (Eigen::Index i = 0; i < count; ++i) grid[i] = omega_min + i * omega_step;
    return grid;
  }
};

struct ModeSpectrum {
  int k_index = 0;
  Spin spin = Spin::Up;
  LehmannData lehmann;
  SpectralData spectral;
};

struct GreensResult {
  double ground_energy = 0.0;
  std::vector<ModeSpectrum> modes;
};

namespace detail {

inline SectorStates excitation_states_ed(const FermionOperator& h,
                                         const Sector& sector) {
  const SectorSpace space(h.n_modes(), sector);
  SectorStates out;
  if (space.dim() == 0) return out;
  EigenResult res = lowest_k(h, space, space.dim());
  out.energies.assign(res.energies.data(), res.energies.data() + res.energies.size());
  out.states = std::move(res.states);
  return out;
}

inline SectorStates excitation_states_ssvqe(const GridSpec& grid,
                                            const HubbardParams& params,
                                            const Sector& sector,
                                            const AdaptConfig& config, int k_cap) {
  AdaptContext ctx(grid, params, sector);
  if (ctx.space().dim() == 0) return {};
  const int k = ctx.space().dim() <= k_cap ? static_cast<int>(ctx.space().dim()) : 8;
  SsvqeResult run = run_adapt_ssvqe(ctx, default_subspace_spec(ctx, k), config);
  return {run.energies, run.states};
}

}  // namespace detail

/// End to end: ground state, excitation-sector states, transition weights,
/// broadened propagator, one spectrum per requested mode.
inline GreensResult spectral_pipeline(const GridSpec& grid,
                                      const HubbardParams& params,
                                      const Sector& sector,
                                      const InitSpec& ground_init,
                                      const GreensConfig& config) {
  grid.validate();
  params.validate();
  sector.validate(grid.n_modes());
  const FermionOperator h = build_hamiltonian(grid, params);
  const Eigen::VectorXd omega = config.omega_grid();

  GreensResult result;
  std::optional<StateVector> ground;
  if (config.source == GreensSource::Ed) {
    GroundState gs = ground_state(h, sector);
    result.ground_energy = gs.energy;
    ground = gs.state;
  } else {
    AdaptContext ctx(grid, params, sector);
    AdaptResult run = run_adapt(ctx, ground_init, config.adapt);
    result.ground_energy = run.final_energy;
    ground = run.final_state;
  }

  const int n_sites = grid.n_sites();
  for (const auto& [k_index, spin] : config.modes) {
    const FermionOperator mode_op = momentum_mode(k_index, spin, grid);
    const int dn_up = spin == Spin::Up ? 1 : 0;
    const int dn_down = 1 - dn_up;

    SectorStates particle, hole;
    const Sector particle_sector{sector.n_up + dn_up, sector.n_down + dn_down};
    if (particle_sector.n_up <= n_sites && particle_sector.n_down <= n_sites) {
      particle = config.source == GreensSource::Ed
                     ? detail::excitation_states_ed(h, particle_sector)
                     : detail::excitation_states_ssvqe(grid, params, particle_sector,
                                                       config.ssvqe_adapt, config.k_cap);
    }
    const Sector hole_sector{sector.n_up - dn_up, sector.n_down - dn_down};
    if (hole_sector.n_up >= 0 && hole_sector.n_down >= 0) {
      hole = config.source == GreensSource::Ed
                 ? detail::excitation_states_ed(h, hole_sector)
                 : detail::excitation_states_ssvqe(grid, params, hole_sector,
                                                   config.ssvqe_adapt, config.k_cap);
    }

    ModeSpectrum mode;
    mode.k_index = k_index;
    mode.spin = spin;
    mode.lehmann = transition_amplitudes(*ground, result.ground_energy, particle,
                                         hole, mode_op, k_index, spin);
    mode.spectral = propagator(mode.lehmann, omega, config.nu);
    result.modes.push_back(std::move(mode));
  }
  return result;
}

}  // namespace fhvqe

#endif  // FHVQE_GREENS_HPP

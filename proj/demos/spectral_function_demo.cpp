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

// Spectral function of the half-filled Hubbard dimer, once from the ED
// oracle and once from adaptively prepared states, printed as coarse text
// columns around the main peaks.

#include <cstdio>

#include "fhvqe/greens.hpp"

int main() {
  using namespace fhvqe;

  const GridSpec grid{2, 1};
  const double u = 3.0;
  const HubbardParams params{1.0, u, u / 2.0};

  GreensConfig ed_cfg;
  ed_cfg.modes = {{0, Spin::Up}, {1, Spin::Up}};
  ed_cfg.omega_min = -5.0;
  ed_cfg.omega_max = 5.0;
  ed_cfg.omega_step = 0.25;

  GreensConfig sv_cfg = ed_cfg;
  sv_cfg.source = GreensSource::AdaptSsvqe;
  sv_cfg.adapt.epsilon = 0.0;
  sv_cfg.adapt.delta = 1e-7;
  sv_cfg.adapt.grad_stop = 1e-9;
  sv_cfg.adapt.max_depth = 20;
  sv_cfg.adapt.track_fidelity = false;
  sv_cfg.ssvqe_adapt = sv_cfg.adapt;

  InitSpec init;
  init.occupied = {0, 3};

  GreensResult ed_fed = spectral_pipeline(grid, params, {1, 1}, {}, ed_cfg);
  GreensResult sv_fed = spectral_pipeline(grid, params, {1, 1}, init, sv_cfg);

  for (std::size_t m = 0; m < ed_fed.modes.size(); ++m) {
    const auto& ed_mode = ed_fed.modes[m];
    const auto& sv_mode = sv_fed.modes[m];
    std::printf("mode k=%d (%s), Lehmann weight %.6f\n", ed_mode.k_index,
                ed_mode.spin == Spin::Up ? "up" : "down",
                ed_mode.lehmann.total_weight());
    std::printf("  %8s  %12s  %12s\n", "omega", "A_ed", "A_adaptive");
    for (Eigen::Index i = 0; i < ed_mode.spectral.omega_grid.size(); ++i) {
      const double a_ed = ed_mode.spectral.spectral[i];
      if (a_ed < 0.05) continue;  // print the peaks only
      std::printf("  %8.2f  %12.6f  %12.6f\n", ed_mode.spectral.omega_grid[i],
                  a_ed, sv_mode.spectral.spectral[i]);
    }
  }
  return 0;
}

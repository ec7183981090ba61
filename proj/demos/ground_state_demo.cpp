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

// Minimal library walkthrough: adaptively prepare the ground state of a
// three-site Hubbard chain and compare against exact diagonalization.

#include <cstdio>

#include "fhvqe/adapt.hpp"
#include "fhvqe/config.hpp"

int main() {
  using namespace fhvqe;

  const GridSpec grid{3, 1};
  const double u = 6.0;
  AdaptContext ctx(grid, {1.0, u, u / 2.0}, {1, 1});

  InitSpec init;
  init.occupied = auto_spread_modes(grid.n_sites(), {1, 1});

  AdaptConfig config;
  config.epsilon = 0.0;
  config.delta = 1e-4;
  config.max_depth = 20;

  AdaptResult run = run_adapt(ctx, init, config);
  std::printf("exact ground energy : %.10f\n", ctx.exact_ground().energy);
  std::printf("adaptive energy     : %.10f\n", run.final_energy);
  std::printf("fidelity            : %.10f\n", *run.records.back().fidelity);
  std::printf("circuit depth       : %zu\n", run.ansatz.steps.size());
  for (const auto& rec : run.records) {
    if (!rec.selected) continue;
    std::printf("  step %2d  %-12s  E = %.8f\n", rec.depth,
                rec.selected->to_string().c_str(), rec.energy);
  }
  return 0;
}

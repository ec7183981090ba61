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

#ifndef FHVQE_SUITES_HPP
#define FHVQE_SUITES_HPP

#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fhvqe/run.hpp"

namespace fhvqe {

struct SuiteRow {
  std::string name;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::pair<std::string, bool>> flags;

  void value(const std::string& key, const std::string& v) {
    values.emplace_back(key, v);
  }
  void value(const std::string& key, double v) { values.emplace_back(key, format_g12(v)); }
  void flag(const std::string& key, bool ok) { flags.emplace_back(key, ok); }
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteRow> rows;

  bool passed() const {
    for (const auto& row : rows)
      for (const auto& [key, ok] : row.flags) {
        (void)key;
        if (!ok) return false;
      }
    return true;
  }

  std::string to_json() const {
    std::ostringstream os;
    os << "{\n  \"suite\": " << jsonio::str(suite) << ",\n";
    os << "  \"passed\": " << (passed() ? "true" : "false") << ",\n";
    os << "  \"rows\": [";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) os << ",";
      os << "\n    {\"name\": " << jsonio::str(rows[r].name);
      for (const auto& [k, v] : rows[r].values)
        os << ", " << jsonio::str(k) << ": " << jsonio::str(v);
      if (!rows[r].flags.empty()) {
        os << ", \"flags\": {";
        for (std::size_t f = 0; f < rows[r].flags.size(); ++f) {
          if (f) os << ", ";
          os << jsonio::str(rows[r].flags[f].first) << ": "
             << (rows[r].flags[f].second ? "true" : "false");
        }
        os << "}";
      }
      os << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
  }

  std::string to_table() const {
    std::ostringstream os;
    os << "suite " << suite << (passed() ? "  [PASS]" : "  [FAIL]") << "\n";
    for (const auto& row : rows) {
      os << "  " << row.name << ":";
      for (const auto& [k, v] : row.values) os << "  " << k << "=" << v;
      for (const auto& [k, ok] : row.flags)
        os << "  [" << (ok ? "pass" : "FAIL") << " " << k << "]";
      os << "\n";
    }
    return os.str();
  }
};

/// Filling choice that keeps the reference ground states non-degenerate:
/// 2 electrons up to 3 sites, 4 up to 5, 6 beyond; always S_z = 0.
inline Sector standard_filling(const GridSpec& grid) {
  const int sites = grid.n_sites();
  const int electrons = sites <= 3 ? 2 : sites <= 5 ? 4 : 6;
  return {electrons / 2, electrons / 2};
}

namespace detail {

struct Table1Cell {
  int width, height;
  double u;
  double e_exact;  // reference energy, 2 d.p., at mu = U/2
};

inline const std::vector<Table1Cell>& table1_cells() {
  static const std::vector<Table1Cell> cells = {
      {2, 1, 1, -2.56}, {2, 1, 3, -4.00},  {2, 1, 6, -6.61},
      {3, 1, 1, -3.51}, {3, 1, 3, -5.12},  {3, 1, 6, -7.85},
      {4, 1, 1, -5.58}, {4, 1, 3, -8.35},  {4, 1, 6, -13.43},
      {2, 2, 1, -5.34}, {2, 2, 3, -8.42},  {2, 2, 6, -13.63},
      {5, 1, 1, -6.73}, {5, 1, 3, -9.74},  {5, 1, 6, -14.99},
      {6, 1, 1, -8.63}, {6, 1, 3, -12.72}, {6, 1, 6, -20.27},
      {3, 2, 1, -9.28}, {3, 2, 3, -13.28}, {3, 2, 6, -20.73}};
  return cells;
}

inline std::string cell_name(const Table1Cell& cell) {
  return std::to_string(cell.width) + "x" + std::to_string(cell.height) + "_U" +
         format_g12(cell.u);
}

inline RunConfig ground_run_config(const GridSpec& grid, double u) {
  RunConfig config;
  config.task = TaskKind::Ground;
  config.grid = grid;
  config.t = 1.0;
  config.u = u;
  config.mu_mode = MuMode::HalfFillingShift;
  config.sector = standard_filling(grid);
  // Termination is driven by the pool-gradient criterion delta = 1e-4; the
  // per-step energy criterion is disabled because it cuts runs short of the
  // reference fidelities (see the report this suite emits).
  config.adapt.epsilon = 0.0;
  config.adapt.delta = 1e-4;
  config.adapt.grad_stop = 1e-6;
  config.adapt.max_depth = 120;
  config.adapt.track_fidelity = true;
  return config;
}

}  // namespace detail

/// Ground-state reproduction over all 21 (grid, U) cells with the standard
/// fillings. Reports fidelity, energy error and depth per cell; fails on any
/// degenerate reference ground state.
inline SuiteReport run_table1_suite(const std::filesystem::path& out_dir,
                                    bool quiet = true) {
  SuiteReport report;
  report.suite = "table1";
  for (const auto& cell : detail::table1_cells()) {
    SuiteRow row;
    row.name = detail::cell_name(cell);
    RunConfig config = detail::ground_run_config({cell.width, cell.height}, cell.u);
    try {
      TaskSummary sum = run_task(config, out_dir / "table1" / row.name, quiet);
      const double delta_e = sum.energy - *sum.exact_energy;
      row.value("E_exact", *sum.exact_energy);
      row.value("E_ref_2dp", cell.e_exact);
      row.value("depth", static_cast<double>(sum.depth));
      row.value("fidelity", *sum.fidelity);
      row.value("delta_E", delta_e);
      row.flag("e_exact_matches_reference",
               std::abs(*sum.exact_energy - cell.e_exact) < 0.005);
      if (cell.width == 2 && cell.height == 2 && cell.u == 6)
        row.flag("fid>=0.999_and_dE<=1e-3",
                 *sum.fidelity >= 0.999 && delta_e <= 1e-3);
      if (cell.width == 6 && cell.u == 6) row.flag("fid>=0.95", *sum.fidelity >= 0.95);
      if (cell.width == 3 && cell.height == 2 && cell.u == 6)
        row.flag("fid>=0.80", *sum.fidelity >= 0.80);
    } catch (const DegeneracyError& e) {
      row.value("error", std::string("degenerate ground: ") + e.what());
      row.flag("non_degenerate_ground", false);
    }
    report.rows.push_back(std::move(row));
    if (!quiet) std::printf("%s", report.to_table().c_str());
  }
  return report;
}

/// Parameters to reach a target fidelity vs. system size (chains 2..6 plus
/// the two-row grids), at fixed interaction.
inline SuiteReport run_scaling_suite(const std::filesystem::path& out_dir,
                                     bool quiet = true, double fidelity_target = 0.99,
                                     double u = 2.0) {
  SuiteReport report;
  report.suite = "scaling";
  std::vector<GridSpec> grids = {{2, 1}, {3, 1}, {4, 1}, {5, 1},
                                 {6, 1}, {2, 2}, {3, 2}};
  std::vector<int> chain_depths;
  int depth_3x2 = -1, depth_2x1 = -1;
  for (const auto& grid : grids) {
    RunConfig config = detail::ground_run_config(grid, u);
    config.adapt.epsilon = 0.0;
    config.adapt.delta = 0.0;
    config.adapt.grad_stop = 1e-8;
    config.adapt.max_depth = 200;
    config.adapt.target_fidelity = fidelity_target;

    SuiteRow row;
    row.name = std::to_string(grid.width) + "x" + std::to_string(grid.height);
    TaskSummary sum = run_task(
        config, out_dir / "scaling" / row.name, quiet);
    const bool reached = sum.stop_reason == "target_fidelity";
    row.value("params_to_target", static_cast<double>(sum.depth));
    row.value("fidelity", sum.fidelity ? *sum.fidelity : 0.0);
    row.flag("target_reached", reached);
    if (grid.height == 1) chain_depths.push_back(sum.depth);
    if (grid.width == 3 && grid.height == 2) depth_3x2 = sum.depth;
    if (grid.width == 2 && grid.height == 1) depth_2x1 = sum.depth;
    report.rows.push_back(std::move(row));
    if (!quiet) std::printf("%s", report.to_table().c_str());
  }

  SuiteRow checks;
  checks.name = "scaling_checks";
  bool monotone = true;
  for (std::size_t k = 1; k < chain_depths.size(); ++k)
    monotone = monotone && chain_depths[k] > chain_depths[k - 1];
  checks.flag("chain_params_strictly_increasing", monotone);
  checks.flag("3x2_params<=80", depth_3x2 >= 0 && depth_3x2 <= 80);
  checks.flag("2x1_params<=6", depth_2x1 >= 0 && depth_2x1 <= 6);
  report.rows.push_back(std::move(checks));
  return report;
}

/// Fidelity-vs-starting-configuration comparison on the 2x2 grid at U=3.
/// Labeled rows: two doubly-occupied placements (diagonal pair) and two
/// all-singly-occupied patterns (adjacent spin pairs); the remaining
/// placements are reported unflagged for the full picture.
inline SuiteReport run_initial_state_suite(const std::filesystem::path& out_dir,
                                           bool quiet = true) {
  SuiteReport report;
  report.suite = "initial-state";
  const GridSpec grid{2, 2};

  struct Config2x2 {
    const char* name;
    std::vector<int> occupied;
    bool labeled;
    bool singly;
  };
  const std::vector<Config2x2> configs = {
      {"doubly_1_sites03", {0, 1, 6, 7}, true, false},
      {"doubly_2_sites12", {2, 3, 4, 5}, true, false},
      {"singly_3_rows", {0, 2, 5, 7}, true, true},
      {"singly_4_cols", {0, 3, 4, 7}, true, true},
      {"doubly_sites01", {0, 1, 2, 3}, false, false},
      {"doubly_sites23", {4, 5, 6, 7}, false, false},
      {"singly_diag_up", {0, 3, 5, 6}, false, true},
      {"singly_diag_down", {1, 2, 4, 7}, false, true},
  };

  std::vector<int> singly_depths, doubly_depths;
  for (const auto& c : configs) {
    RunConfig config = detail::ground_run_config(grid, 3.0);
    config.init_auto_spread = false;
    config.init_occupied = c.occupied;
    config.adapt.epsilon = 0.0;
    config.adapt.delta = 0.0;
    config.adapt.grad_stop = 1e-8;
    config.adapt.max_depth = 100;
    config.adapt.target_fidelity = 0.99;

    SuiteRow row;
    row.name = c.name;
    TaskSummary sum = run_task(config, out_dir / "initial-state" / row.name, quiet);
    row.value("depth_to_0.99", static_cast<double>(sum.depth));
    row.value("labeled", c.labeled ? "yes" : "supplementary");
    row.flag("target_reached", sum.stop_reason == "target_fidelity");
    if (c.labeled) (c.singly ? singly_depths : doubly_depths).push_back(sum.depth);
    report.rows.push_back(std::move(row));
    if (!quiet) std::printf("%s", report.to_table().c_str());
  }

  // Slater start recorded for comparison, not asserted; at this filling the
  // U=0 one-body spectrum is degenerate at the Fermi level, which the
  // preparation rejects.
  {
    RunConfig config = detail::ground_run_config(grid, 3.0);
    config.init_kind = InitSpec::Kind::Slater;
    config.adapt.epsilon = 0.0;
    config.adapt.delta = 0.0;
    config.adapt.grad_stop = 1e-8;
    config.adapt.max_depth = 100;
    config.adapt.target_fidelity = 0.99;
    SuiteRow row;
    row.name = "slater";
    try {
      TaskSummary sum = run_task(config, out_dir / "initial-state" / "slater", quiet);
      row.value("depth_to_0.99", static_cast<double>(sum.depth));
    } catch (const DegeneracyError& e) {
      row.value("note", std::string("not applicable: ") + e.what());
    }
    report.rows.push_back(std::move(row));
  }

  SuiteRow checks;
  checks.name = "initial_state_checks";
  const bool singly_invariant =
      singly_depths.size() == 2 && singly_depths[0] == singly_depths[1];
  const bool doubly_invariant =
      doubly_depths.size() == 2 && doubly_depths[0] == doubly_depths[1];
  bool dominance = !singly_depths.empty() && !doubly_depths.empty();
  for (int s : singly_depths)
    for (int d : doubly_depths) dominance = dominance && s < d;
  checks.flag("singly_within_class_invariant", singly_invariant);
  checks.flag("doubly_within_class_invariant", doubly_invariant);
  checks.flag("singly_strictly_dominates_doubly", dominance);
  report.rows.push_back(std::move(checks));
  return report;
}

inline SuiteReport run_suite(const std::string& name,
                             const std::filesystem::path& out_dir,
                             bool quiet = true) {
  SuiteReport report;
  if (name == "table1") report = run_table1_suite(out_dir, quiet);
  else if (name == "scaling") report = run_scaling_suite(out_dir, quiet);
  else if (name == "initial-state") report = run_initial_state_suite(out_dir, quiet);
  else
    throw ValidationError("suite: expected table1|scaling|initial-state, got '" +
                          name + "'");
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / (name + "_report.json"), std::ios::binary);
  out << report.to_json();
  return report;
}

}  // namespace fhvqe

#endif  // FHVQE_SUITES_HPP

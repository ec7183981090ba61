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

#ifndef FHVQE_RUN_HPP
#define FHVQE_RUN_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fhvqe/config.hpp"
#include "fhvqe/exact_diag.hpp"
#include "fhvqe/greens.hpp"
#include "fhvqe/ssvqe.hpp"
#include "fhvqe/version.hpp"

namespace fhvqe {

namespace jsonio {

inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string str(const std::string& s) { return "\"" + escape(s) + "\""; }

inline std::string num(double v) { return format_g17(v); }

template <typename Range, typename Fn>
std::string array(const Range& range, Fn&& fn) {
  std::string out = "[";
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += ",";
    first = false;
    out += fn(item);
  }
  return out + "]";
}

}  // namespace jsonio

/// Serializes one adaptive step as a JSON-lines record.
inline std::string trace_line(const StepRecord& rec) {
  std::ostringstream os;
  os << "{\"depth\":" << rec.depth;
  os << ",\"energy\":" << jsonio::num(rec.energy);
  os << ",\"fidelity\":"
     << (rec.fidelity ? jsonio::num(*rec.fidelity) : std::string("null"));
  os << ",\"selected\":"
     << (rec.selected ? jsonio::str(rec.selected->to_string()) : std::string("null"));
  os << ",\"pool_gradient\":" << jsonio::num(rec.pool_gradient);
  os << ",\"params\":"
     << jsonio::array(rec.params, [](double v) { return jsonio::num(v); });
  if (!rec.state_energies.empty())
    os << ",\"state_energies\":"
       << jsonio::array(rec.state_energies, [](double v) { return jsonio::num(v); });
  os << "}";
  return os.str();
}

/// Lightweight summary returned to in-process callers (the bench suites).
struct TaskSummary {
  TaskKind task = TaskKind::Ground;
  double energy = 0.0;
  int depth = 0;
  std::optional<double> fidelity;
  std::optional<double> exact_energy;
  std::string stop_reason;
  std::vector<double> energies;        // excited / ed tasks
  std::vector<double> exact_energies;  // excited task
  bool degenerate = false;             // ed task
  std::map<std::string, double> extra;
};

namespace detail {

class ArtifactDir {
 public:
  explicit ArtifactDir(const std::filesystem::path& final_dir)
      : final_(final_dir), tmp_(final_dir.string() + ".tmp") {
    std::filesystem::remove_all(tmp_);
    std::filesystem::create_directories(tmp_);
  }

  ~ArtifactDir() {
    if (!committed_) {
      std::error_code ec;
      std::filesystem::remove_all(tmp_, ec);
    }
  }

  const std::filesystem::path& path() const { return tmp_; }

  void write_file(const std::string& name, const std::string& content) const {
    std::ofstream out(tmp_ / name, std::ios::binary);
    if (!out) throw NumericalError("cannot write artifact " + name);
    out << content;
  }

  /// Partial outputs stay in the temp directory until this final rename.
  void commit() {
    std::filesystem::remove_all(final_);
    std::filesystem::create_directories(final_.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : final_.parent_path());
    std::filesystem::rename(tmp_, final_);
    committed_ = true;
  }

 private:
  std::filesystem::path final_, tmp_;
  bool committed_ = false;
};

inline std::string spin_name(Spin s) { return s == Spin::Up ? "up" : "down"; }

inline std::string result_header(const RunConfig& config, double wall_seconds) {
  std::ostringstream os;
  os << "  \"version\": " << jsonio::str(kVersion) << ",\n";
  os << "  \"task\": " << jsonio::str(to_string(config.task)) << ",\n";
  os << "  \"wall_time_s\": " << jsonio::num(wall_seconds) << ",\n";
  os << "  \"seed\": " << config.seed << ",\n";
  os << "  \"grid\": {\"width\": " << config.grid.width
     << ", \"height\": " << config.grid.height << "},\n";
  os << "  \"params\": {\"t\": " << jsonio::num(config.t)
     << ", \"u\": " << jsonio::num(config.u)
     << ", \"mu\": " << jsonio::num(config.effective_mu()) << "},\n";
  os << "  \"sector\": {\"n_up\": " << config.sector.n_up
     << ", \"n_down\": " << config.sector.n_down << "},\n";
  os << "  \"config\": " << jsonio::str(serialize_config(config)) << ",\n";
  return os.str();
}

inline std::string trace_text(const std::vector<StepRecord>& records) {
  std::string text;
  for (const auto& rec : records) text += trace_line(rec) + "\n";
  return text;
}

inline std::string spectrum_csv(const SpectralData& spec) {
  std::string csv = "omega,re_G,im_G,A\n";
  for (Eigen::Index i = 0; i < spec.omega_grid.size(); ++i) {
    csv += format_g12(spec.omega_grid[i]);
    csv += ',';
    csv += format_g12(spec.green[i].real());
    csv += ',';
    csv += format_g12(spec.green[i].imag());
    csv += ',';
    csv += format_g12(spec.spectral[i]);
    csv += '\n';
  }
  return csv;
}

}  // namespace detail

/// Executes one configured task and writes its artifacts atomically into
/// `output_dir` (trace.jsonl, ansatz.txt, result.json, per-mode CSVs).
inline TaskSummary run_task(const RunConfig& config,
                            const std::filesystem::path& output_dir,
                            bool quiet = true) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
        .count();
  };
  detail::ArtifactDir dir(output_dir);
  TaskSummary summary;
  summary.task = config.task;
  std::ostringstream body;

  switch (config.task) {
    case TaskKind::Ground: {
      AdaptContext ctx(config.grid, config.params(), config.sector);
      AdaptResult run = run_adapt(ctx, config.init_spec(), config.adapt);
      summary.energy = run.final_energy;
      summary.depth = static_cast<int>(run.ansatz.steps.size());
      summary.fidelity = run.records.back().fidelity;
      summary.exact_energy = run.exact_energy;
      summary.stop_reason = to_string(run.stop_reason);

      dir.write_file("trace.jsonl", detail::trace_text(run.records));
      dir.write_file("ansatz.txt",
                     serialize_ansatz(run.ansatz, config.grid.n_modes()));
      body << "  \"energy\": " << jsonio::num(run.final_energy) << ",\n";
      body << "  \"depth\": " << summary.depth << ",\n";
      body << "  \"stop_reason\": " << jsonio::str(summary.stop_reason) << ",\n";
      if (run.exact_energy) {
        body << "  \"exact_energy\": " << jsonio::num(*run.exact_energy) << ",\n";
        body << "  \"delta_e\": " << jsonio::num(run.final_energy - *run.exact_energy)
             << ",\n";
      }
      if (summary.fidelity)
        body << "  \"fidelity\": " << jsonio::num(*summary.fidelity) << ",\n";
      body << "  \"init_occupied\": "
           << jsonio::array(config.init_spec().occupied,
                            [](int m) { return std::to_string(m); })
           << "\n";
      if (!quiet)
        std::printf("ground: E = %.10f depth = %d (%s)\n", run.final_energy,
                    summary.depth, summary.stop_reason.c_str());
      break;
    }

    case TaskKind::Excited: {
      AdaptContext ctx(config.grid, config.params(), config.sector);
      const int k = config.effective_ssvqe_k(ctx.space().dim());
      SubspaceSpec spec = default_subspace_spec(ctx, k);
      if (!config.ssvqe_weights.empty()) {
        if (static_cast<int>(config.ssvqe_weights.size()) != k)
          throw ValidationError("ssvqe.weights: need exactly k values");
        for (int j = 0; j < k; ++j) spec.weights[j] = config.ssvqe_weights[j];
      }
      SsvqeResult run = run_adapt_ssvqe(ctx, spec, config.adapt);
      EigenResult ed = lowest_k(ctx.hamiltonian_op(), ctx.space(), k);

      summary.energy = run.records.back().energy;
      summary.depth = static_cast<int>(run.ansatz.steps.size());
      summary.stop_reason = to_string(run.stop_reason);
      summary.energies = run.energies;
      summary.exact_energies.assign(ed.energies.data(), ed.energies.data() + k);

      double ortho_defect = 0.0;
      for (std::size_t i = 0; i < run.states.size(); ++i)
        for (std::size_t j = 0; j < run.states.size(); ++j) {
          const Complex o = overlap(run.states[i], run.states[j]);
          ortho_defect = std::max(ortho_defect, std::abs(o - (i == j ? 1.0 : 0.0)));
        }
      summary.extra["orthonormality_defect"] = ortho_defect;

      dir.write_file("trace.jsonl", detail::trace_text(run.records));
      dir.write_file("ansatz.txt",
                     serialize_ansatz(run.ansatz, config.grid.n_modes()));
      body << "  \"k\": " << k << ",\n";
      body << "  \"weights\": "
           << jsonio::array(std::vector<double>(spec.weights.data(),
                                                spec.weights.data() + k),
                            [](double v) { return jsonio::num(v); })
           << ",\n";
      body << "  \"depth\": " << summary.depth << ",\n";
      body << "  \"stop_reason\": " << jsonio::str(summary.stop_reason) << ",\n";
      body << "  \"weighted_cost\": " << jsonio::num(summary.energy) << ",\n";
      body << "  \"energies\": "
           << jsonio::array(run.energies, [](double v) { return jsonio::num(v); })
           << ",\n";
      body << "  \"exact_energies\": "
           << jsonio::array(summary.exact_energies,
                            [](double v) { return jsonio::num(v); })
           << ",\n";
      body << "  \"orthonormality_defect\": " << jsonio::num(ortho_defect) << ",\n";
      body << "  \"order_violation\": " << (run.order_violation ? "true" : "false")
           << ",\n";
      body << "  \"degenerate_warning\": "
           << jsonio::array(run.degenerate_warning,
                            [](bool b) { return std::string(b ? "true" : "false"); })
           << "\n";
      if (!quiet)
        std::printf("excited: %d states, depth = %d (%s)\n", k, summary.depth,
                    summary.stop_reason.c_str());
      break;
    }

    case TaskKind::Greens: {
      GreensConfig gc;
      gc.source = config.greens_source;
      gc.nu = config.greens_nu;
      gc.omega_min = config.omega_min;
      gc.omega_max = config.omega_max;
      gc.omega_step = config.omega_step;
      gc.modes = config.greens_modes;
      gc.adapt = config.adapt;
      gc.ssvqe_adapt = config.adapt;
      GreensResult res = spectral_pipeline(config.grid, config.params(),
                                           config.sector, config.init_spec(), gc);
      summary.energy = res.ground_energy;
      summary.stop_reason = "completed";

      body << "  \"source\": "
           << jsonio::str(config.greens_source == GreensSource::Ed ? "ed"
                                                                   : "adapt_ssvqe")
           << ",\n";
      body << "  \"nu\": " << jsonio::num(gc.nu) << ",\n";
      body << "  \"omega_axis\": \"absolute\",\n";
      body << "  \"ground_energy\": " << jsonio::num(res.ground_energy) << ",\n";
      body << "  \"modes\": [";
      for (std::size_t m = 0; m < res.modes.size(); ++m) {
        const auto& mode = res.modes[m];
        const std::string file = "greens_k" + std::to_string(mode.k_index) + "_" +
                                 detail::spin_name(mode.spin) + ".csv";
        dir.write_file(file, detail::spectrum_csv(mode.spectral));
        const double sum_rule = mode.lehmann.total_weight();
        summary.extra["sum_rule_k" + std::to_string(mode.k_index) + "_" +
                      detail::spin_name(mode.spin)] = sum_rule;
        if (m) body << ",";
        body << "\n    {\"k\": " << mode.k_index << ", \"spin\": "
             << jsonio::str(detail::spin_name(mode.spin))
             << ", \"file\": " << jsonio::str(file)
             << ", \"captured_weight\": " << jsonio::num(sum_rule)
             << ", \"particle_terms\": " << mode.lehmann.particle_terms.size()
             << ", \"hole_terms\": " << mode.lehmann.hole_terms.size() << "}";
      }
      body << "\n  ]\n";
      if (!quiet)
        std::printf("greens: %zu modes, E_G = %.10f\n", res.modes.size(),
                    res.ground_energy);
      break;
    }

    case TaskKind::Ed: {
      const SectorSpace space(config.grid.n_modes(), config.sector);
      const FermionOperator h = build_hamiltonian(config.grid, config.params());
      const auto k = std::min<Eigen::Index>(space.dim(), 8);
      EigenResult res = lowest_k(h, space, k);
      summary.energy = res.energies[0];
      summary.energies.assign(res.energies.data(), res.energies.data() + k);
      summary.degenerate = res.ground_gap < 1e-8;
      summary.stop_reason = "completed";

      body << "  \"sector_dimension\": " << space.dim() << ",\n";
      body << "  \"k\": " << k << ",\n";
      body << "  \"energies\": "
           << jsonio::array(summary.energies, [](double v) { return jsonio::num(v); })
           << ",\n";
      body << "  \"ground_energy\": " << jsonio::num(res.energies[0]) << ",\n";
      body << "  \"ground_gap\": " << jsonio::num(res.ground_gap) << ",\n";
      body << "  \"degenerate\": " << (summary.degenerate ? "true" : "false") << "\n";
      if (!quiet) std::printf("ed: E0 = %.10f\n", res.energies[0]);
      break;
    }

    case TaskKind::Pool: {
      auto pool = build_pool(config.grid.n_sites());
      int one_body = 0;
      for (const auto& p : pool)
        if (p.desc.kind == PoolOpDescriptor::Kind::OneBody) ++one_body;
      summary.extra["one_body"] = one_body;
      summary.extra["two_body"] = static_cast<double>(pool.size()) - one_body;
      summary.extra["total"] = static_cast<double>(pool.size());
      summary.stop_reason = "completed";

      body << "  \"n_sites\": " << config.grid.n_sites() << ",\n";
      body << "  \"one_body_count\": " << one_body << ",\n";
      body << "  \"two_body_count\": " << (pool.size() - one_body) << ",\n";
      body << "  \"total\": " << pool.size() << ",\n";
      body << "  \"operators\": "
           << jsonio::array(pool,
                            [](const PoolOperator& p) {
                              return jsonio::str(p.desc.to_string());
                            })
           << "\n";
      if (!quiet)
        std::printf("pool: %zu operators (%d one-body)\n", pool.size(), one_body);
      break;
    }
  }

  std::ostringstream result;
  result << "{\n" << detail::result_header(config, elapsed()) << body.str() << "}\n";
  dir.write_file("result.json", result.str());
  dir.write_file("config.ini", serialize_config(config));
  dir.commit();
  return summary;
}

}  // namespace fhvqe

#endif  // FHVQE_RUN_HPP

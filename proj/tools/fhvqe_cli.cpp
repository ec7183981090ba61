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

// Command-line driver: adaptive ground/excited-state preparation, spectral
// functions, the ED oracle, pool inspection and the benchmark suites.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fhvqe/config.hpp"
#include "fhvqe/run.hpp"
#include "fhvqe/suites.hpp"
#include "fhvqe/version.hpp"

namespace {

struct TaskArgs {
  std::string config_path;
  std::string output_override;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw fhvqe::ValidationError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit_error(const char* type, const std::string& message) {
  std::fprintf(stderr, "{\"error\": {\"type\": \"%s\", \"message\": %s}}\n", type,
               fhvqe::jsonio::str(message).c_str());
}

bool config_names_task(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    if (fhvqe::detail::trim(line.substr(0, eq)) == "task" &&
        !fhvqe::detail::trim(line.substr(eq + 1)).empty())
      return true;
  }
  return false;
}

int run_configured_task(fhvqe::TaskKind task, const TaskArgs& args) {
  const std::string text = read_file(args.config_path);
  fhvqe::RunConfig config = fhvqe::parse_config(text);
  if (config.task != task) {
    // The subcommand is authoritative; a config that names a different task
    // is rejected, one that omits the key inherits the subcommand.
    if (config_names_task(text))
      throw fhvqe::ValidationError(
          std::string("config task '") + fhvqe::to_string(config.task) +
          "' does not match the requested subcommand '" + fhvqe::to_string(task) +
          "'");
    config.task = task;
  }
  const std::filesystem::path out =
      args.output_override.empty() ? config.output_dir : args.output_override;
  fhvqe::run_task(config, out, args.quiet);
  if (!args.quiet)
    std::printf("artifacts written to %s\n", out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive variational eigensolver for small Fermi-Hubbard grids"};
  app.set_version_flag("--version", fhvqe::kVersion);
  app.require_subcommand(1);

  TaskArgs args;
  auto add_task = [&](const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", args.config_path, "run configuration file")
        ->required();
    cmd->add_option("--output", args.output_override,
                    "output directory (overrides the config)");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
    return cmd;
  };
  CLI::App* ground = add_task("ground", "ADAPT-VQE ground-state preparation");
  CLI::App* excited = add_task("excited", "ADAPT-SSVQE excited-state preparation");
  CLI::App* greens = add_task("greens", "zero-temperature spectral functions");
  CLI::App* ed = add_task("ed", "exact-diagonalization oracle");
  CLI::App* pool = add_task("pool", "operator pool listing");

  std::string suite_name, suite_out = "suite-out";
  bool suite_quiet = false;
  CLI::App* suite = app.add_subcommand("suite", "benchmark experiment suites");
  suite->add_option("--name", suite_name, "table1 | scaling | initial-state")
      ->required();
  suite->add_option("--output", suite_out, "output directory");
  suite->add_flag("--quiet", suite_quiet, "suppress progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ground->parsed()) return run_configured_task(fhvqe::TaskKind::Ground, args);
    if (excited->parsed()) return run_configured_task(fhvqe::TaskKind::Excited, args);
    if (greens->parsed()) return run_configured_task(fhvqe::TaskKind::Greens, args);
    if (ed->parsed()) return run_configured_task(fhvqe::TaskKind::Ed, args);
    if (pool->parsed()) return run_configured_task(fhvqe::TaskKind::Pool, args);
    if (suite->parsed()) {
      fhvqe::SuiteReport report = fhvqe::run_suite(suite_name, suite_out, suite_quiet);
      std::printf("%s", report.to_table().c_str());
      return report.passed() ? 0 : 2;
    }
  } catch (const fhvqe::NumericalError& e) {
    emit_error("numerical", e.what());
    return 2;
  } catch (const fhvqe::ValidationError& e) {
    emit_error("validation", e.what());
    return 1;
  } catch (const fhvqe::DegeneracyError& e) {
    emit_error("validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("numerical", e.what());
    return 2;
  }
  return 0;
}

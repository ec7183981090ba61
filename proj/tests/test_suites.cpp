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

#include <catch2/catch.hpp>

#include <filesystem>

#include "fhvqe/suites.hpp"

using namespace fhvqe;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "fhvqe-suite-tests" / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("initial-state suite is deterministic and traceable", "[suites]") {
  const fs::path dir_a = fresh_dir("init-a"), dir_b = fresh_dir("init-b");
  SuiteReport a = run_initial_state_suite(dir_a, true);
  SuiteReport b = run_initial_state_suite(dir_b, true);
  REQUIRE(a.passed());
  REQUIRE(a.to_json() == b.to_json());

  // Every grid row leaves a stored config and trace behind.
  for (const auto& row : a.rows) {
    if (row.name.rfind("doubly", 0) != 0 && row.name.rfind("singly", 0) != 0)
      continue;
    REQUIRE(fs::exists(dir_a / "initial-state" / row.name / "config.ini"));
    REQUIRE(fs::exists(dir_a / "initial-state" / row.name / "trace.jsonl"));
    REQUIRE(fs::exists(dir_a / "initial-state" / row.name / "result.json"));
  }

  // The class comparison: labeled doubly rows sit strictly above the
  // labeled singly rows in depth-to-0.99.
  auto depth_of = [&](const std::string& name) {
    for (const auto& row : a.rows)
      if (row.name == name)
        for (const auto& [k, v] : row.values)
          if (k == "depth_to_0.99") return std::stoi(v);
    FAIL("row not found: " + name);
    return -1;
  };
  REQUIRE(depth_of("doubly_1_sites03") == depth_of("doubly_2_sites12"));
  REQUIRE(depth_of("singly_3_rows") == depth_of("singly_4_cols"));
  REQUIRE(depth_of("singly_3_rows") < depth_of("doubly_1_sites03"));
}

TEST_CASE("unknown suite names are rejected", "[suites]") {
  REQUIRE_THROWS_AS(run_suite("bogus", fresh_dir("unknown"), true), ValidationError);
}

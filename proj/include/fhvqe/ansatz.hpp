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

#ifndef FHVQE_ANSATZ_HPP
#define FHVQE_ANSATZ_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fhvqe/errors.hpp"
#include "fhvqe/exact_diag.hpp"
#include "fhvqe/hubbard.hpp"

namespace fhvqe {

/// %.17g round-trips IEEE doubles bit-exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Initial-state recipe: an explicit product occupation or a Slater
/// determinant filling.
struct InitSpec {
  enum class Kind { Product, Slater };
  Kind kind = Kind::Product;
  std::vector<int> occupied;  // product: occupied mode indices, ascending
  Sector filling;             // slater: orbitals filled per spin

  Sector sector(int n_modes) const {
    if (kind == Kind::Slater) return filling;
    int up = 0, down = 0;
    for (int m : occupied) {
      if (m < 0 || m >= n_modes)
        throw ValidationError("InitSpec: occupied mode out of range");
      (m % 2 == 0 ? up : down)++;
    }
    return {up, down};
  }
};

struct AnsatzStep {
  PoolOpDescriptor op;
  double theta = 0.0;
};

/// The adaptive circuit: ordered gates exp(i theta_k A_k) applied to the
/// initial state, first step innermost.
struct Ansatz {
  InitSpec init;
  std::vector<AnsatzStep> steps;

  std::vector<double> thetas() const {
    std::vector<double> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.theta);
    return out;
  }
};

inline std::string serialize_ansatz(const Ansatz& ansatz, int n_modes) {
  std::ostringstream os;
  os << "fhvqe-ansatz v1\n";
  os << "modes " << n_modes << "\n";
  if (ansatz.init.kind == InitSpec::Kind::Product) {
    os << "init product";
    for (int m : ansatz.init.occupied) os << ' ' << m;
    os << "\n";
  } else {
    os << "init slater " << ansatz.init.filling.n_up << ' '
       << ansatz.init.filling.n_down << "\n";
  }
  os << "depth " << ansatz.steps.size() << "\n";
  for (const auto& step : ansatz.steps)
    os << step.op.to_string() << ' ' << format_g17(step.theta) << "\n";
  return os.str();
}

/// Parses the v1 text format; returns the ansatz and its mode count.
inline std::pair<Ansatz, int> parse_ansatz(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto fail = [](const std::string& why) -> void {
    throw ValidationError("parse_ansatz: " + why);
  };
  if (!std::getline(is, line) || line != "fhvqe-ansatz v1")
    fail("missing or unsupported header");

  int n_modes = -1;
  std::size_t depth = 0;
  Ansatz ansatz;
  {
    std::string tag;
    if (!(is >> tag) || tag != "modes" || !(is >> n_modes) || n_modes <= 0)
      fail("bad modes line");
    if (!(is >> tag) || tag != "init") fail("bad init line");
    std::string kind;
    is >> kind;
    if (kind == "product") {
      ansatz.init.kind = InitSpec::Kind::Product;
      std::getline(is, line);
      std::istringstream rest(line);
      int m;
      while (rest >> m) ansatz.init.occupied.push_back(m);
    } else if (kind == "slater") {
      ansatz.init.kind = InitSpec::Kind::Slater;
      if (!(is >> ansatz.init.filling.n_up >> ansatz.init.filling.n_down))
        fail("bad slater filling");
    } else {
      fail("unknown init kind '" + kind + "'");
    }
    if (!(is >> tag) || tag != "depth" || !(is >> depth)) fail("bad depth line");
  }
  for (std::size_t k = 0; k < depth; ++k) {
    std::string kind;
    AnsatzStep step;
    if (!(is >> kind)) fail("truncated step list");
    if (kind == "1b") {
      step.op.kind = PoolOpDescriptor::Kind::OneBody;
      if (!(is >> step.op.idx[0] >> step.op.idx[1] >> step.theta))
        fail("bad one-body step");
    } else if (kind == "2b") {
      step.op.kind = PoolOpDescriptor::Kind::TwoBody;
      if (!(is >> step.op.idx[0] >> step.op.idx[1] >> step.op.idx[2] >>
            step.op.idx[3] >> step.theta))
        fail("bad two-body step");
    } else {
      fail("unknown step kind '" + kind + "'");
    }
    ansatz.steps.push_back(step);
  }
  return {std::move(ansatz), n_modes};
}

/// Rebuilds the generator of a descriptor (same construction as build_pool).
inline FermionOperator descriptor_generator(const PoolOpDescriptor& desc, int n_modes) {
  if (desc.kind == PoolOpDescriptor::Kind::OneBody)
    return detail::anti_hermitian_pair({{desc.idx[0], true}, {desc.idx[1], false}},
                                       n_modes);
  return detail::anti_hermitian_pair({{desc.idx[0], true},
                                      {desc.idx[1], true},
                                      {desc.idx[2], false},
                                      {desc.idx[3], false}},
                                     n_modes);
}

}  // namespace fhvqe

#endif  // FHVQE_ANSATZ_HPP

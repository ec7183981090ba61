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

#ifndef FHVQE_CONFIG_HPP
#define FHVQE_CONFIG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fhvqe/adapt.hpp"
#include "fhvqe/ansatz.hpp"
#include "fhvqe/errors.hpp"
#include "fhvqe/greens.hpp"
#include "fhvqe/hubbard.hpp"

namespace fhvqe {

enum class TaskKind { Ground, Excited, Greens, Ed, Pool };

inline const char* to_string(TaskKind t) {
  switch (t) {
    case TaskKind::Ground: return "ground";
    case TaskKind::Excited: return "excited";
    case TaskKind::Greens: return "greens";
    case TaskKind::Ed: return "ed";
    case TaskKind::Pool: return "pool";
  }
  return "unknown";
}

inline TaskKind parse_task(const std::string& s) {
  if (s == "ground") return TaskKind::Ground;
  if (s == "excited") return TaskKind::Excited;
  if (s == "greens") return TaskKind::Greens;
  if (s == "ed") return TaskKind::Ed;
  if (s == "pool") return TaskKind::Pool;
  throw ValidationError("task: expected one of ground|excited|greens|ed|pool, got '" +
                        s + "'");
}

enum class MuMode { None, HalfFillingShift };

/// Evenly spread electrons over the grid, site-major, spins alternating
/// while both species remain.
inline std::vector<int> auto_spread_modes(int n_sites, const Sector& sector) {
  sector.validate(2 * n_sites);
  const int n = sector.n_up + sector.n_down;
  std::vector<int> modes;
  int ups = sector.n_up, downs = sector.n_down;
  auto take = [&](int site, bool prefer_up) {
    bool up = prefer_up;
    if (up && ups == 0) up = false;
    if (!up && downs == 0) up = true;
    modes.push_back(2 * site + (up ? 0 : 1));
    (up ? ups : downs)--;
  };
  if (n <= n_sites) {
    for (int e = 0; e < n; ++e) take((2 * e + 1) * n_sites / (2 * n), e % 2 == 0);
  } else {
    // Above one electron per site: singles first, doubles on the lowest
    // sites still missing that spin.
    for (int site = 0; site < n_sites; ++site) take(site, site % 2 == 0);
    auto fill = [&](int parity, int& remaining) {
      for (int site = 0; site < n_sites && remaining > 0; ++site) {
        const int mode = 2 * site + parity;
        if (std::find(modes.begin(), modes.end(), mode) == modes.end()) {
          modes.push_back(mode);
          --remaining;
        }
      }
    };
    fill(0, ups);
    fill(1, downs);
  }
  std::sort(modes.begin(), modes.end());
  return modes;
}

/// One experiment definition: everything the CLI needs to execute a task.
struct RunConfig {
  TaskKind task = TaskKind::Ground;
  std::string output_dir = "out";
  long seed = 0;

  GridSpec grid{2, 1, Boundary::Open};
  double t = 1.0;
  double u = 0.0;
  MuMode mu_mode = MuMode::None;
  double mu = 0.0;  // used when mu_mode == None

  Sector sector{1, 1};

  InitSpec::Kind init_kind = InitSpec::Kind::Product;
  bool init_auto_spread = true;  // product placement chosen automatically
  std::vector<int> init_occupied;

  AdaptConfig adapt;

  int ssvqe_k = 0;  // 0 = full sector dimension up to 16, else 8
  std::vector<double> ssvqe_weights;  // empty = 2^(K-1-j)

  GreensSource greens_source = GreensSource::Ed;
  double greens_nu = 0.1;
  double omega_min = -10.0;
  double omega_max = 10.0;
  double omega_step = 0.01;
  std::vector<std::pair<int, Spin>> greens_modes = {{0, Spin::Up}};

  double effective_mu() const {
    return mu_mode == MuMode::HalfFillingShift ? u / 2.0 : mu;
  }
  HubbardParams params() const { return {t, u, effective_mu()}; }

  InitSpec init_spec() const {
    InitSpec init;
    init.kind = init_kind;
    if (init_kind == InitSpec::Kind::Slater) {
      init.filling = sector;
    } else {
      init.occupied = init_auto_spread ? auto_spread_modes(grid.n_sites(), sector)
                                       : init_occupied;
    }
    return init;
  }

  int effective_ssvqe_k(Eigen::Index sector_dim) const {
    if (ssvqe_k > 0) return ssvqe_k;
    return sector_dim <= 16 ? static_cast<int>(sector_dim) : 8;
  }

  void validate() const {
    grid.validate();
    params().validate();
    sector.validate(grid.n_modes());
    adapt.validate();
    if (init_kind == InitSpec::Kind::Product && !init_auto_spread) {
      InitSpec init;
      init.kind = InitSpec::Kind::Product;
      init.occupied = init_occupied;
      if (!(init.sector(grid.n_modes()) == sector))
        throw ValidationError(
            "init.occupied: occupation does not realize the configured sector");
    }
    if (ssvqe_k < 0) throw ValidationError("ssvqe.k: must be non-negative");
    if (!ssvqe_weights.empty() && ssvqe_k > 0 &&
        static_cast<int>(ssvqe_weights.size()) != ssvqe_k)
      throw ValidationError("ssvqe.weights: need exactly k values");
    if (omega_step <= 0.0 || omega_max <= omega_min)
      throw ValidationError("greens: omega grid must be ascending with positive step");
    if (greens_nu <= 0.0) throw ValidationError("greens.nu: must be positive");
    for (const auto& [k, spin] : greens_modes) {
      (void)spin;
      if (k < 0) throw ValidationError("greens.modes: negative k index");
    }
  }
};

namespace detail {

struct IniData {
  // section -> key -> value; top-level keys live under "".
  std::map<std::string, std::map<std::string, std::string>> sections;
};

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline IniData parse_ini(const std::string& text) {
  IniData data;
  std::string section;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("config line " + std::to_string(line_no) +
                              ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      data.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(line_no) +
                            ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto& sec = data.sections[section];
    if (sec.count(key))
      throw ValidationError("config: duplicate key '" + key + "' in section [" +
                            section + "]");
    sec[key] = value;
  }
  return data;
}

class KeyReader {
 public:
  KeyReader(const IniData& data, std::string section)
      : section_(std::move(section)) {
    auto it = data.sections.find(section_);
    if (it != data.sections.end()) entries_ = it->second;
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string v = it->second;
    entries_.erase(it);
    if (v.empty()) return std::nullopt;  // empty value = unset
    return v;
  }

  double take_double(const std::string& key, double fallback) {
    auto v = take(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const double parsed = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("");
      return parsed;
    } catch (const std::exception&) {
      throw ValidationError("config: key '" + qualified(key) +
                            "' expects a real number, got '" + *v + "'");
    }
  }

  long take_int(const std::string& key, long fallback) {
    auto v = take(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const long parsed = std::stol(*v, &used);
      if (used != v->size()) throw std::invalid_argument("");
      return parsed;
    } catch (const std::exception&) {
      throw ValidationError("config: key '" + qualified(key) +
                            "' expects an integer, got '" + *v + "'");
    }
  }

  bool take_bool(const std::string& key, bool fallback) {
    auto v = take(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    throw ValidationError("config: key '" + qualified(key) +
                          "' expects true|false, got '" + *v + "'");
  }

  void finish() const {
    if (!entries_.empty())
      throw ValidationError("config: unknown key '" + qualified(entries_.begin()->first) +
                            "'");
  }

 private:
  std::string qualified(const std::string& key) const {
    return section_.empty() ? key : section_ + "." + key;
  }
  std::string section_;
  std::map<std::string, std::string> entries_;
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  const detail::IniData data = detail::parse_ini(text);
  for (const auto& [name, keys] : data.sections) {
    (void)keys;
    static const std::vector<std::string> known = {
        "", "grid", "params", "sector", "init", "adapt", "ssvqe", "greens"};
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ValidationError("config: unknown section [" + name + "]");
  }
  RunConfig config;

  detail::KeyReader top(data, "");
  if (auto v = top.take("task")) config.task = parse_task(*v);
  if (auto v = top.take("output_dir")) config.output_dir = *v;
  config.seed = top.take_int("seed", 0);
  top.finish();

  detail::KeyReader grid(data, "grid");
  config.grid.width = static_cast<int>(grid.take_int("width", 2));
  config.grid.height = static_cast<int>(grid.take_int("height", 1));
  if (auto v = grid.take("boundary")) {
    if (*v == "open") config.grid.boundary = Boundary::Open;
    else if (*v == "periodic-x") config.grid.boundary = Boundary::PeriodicX;
    else if (*v == "periodic-xy") config.grid.boundary = Boundary::PeriodicXY;
    else
      throw ValidationError(
          "config: grid.boundary expects open|periodic-x|periodic-xy, got '" + *v +
          "'");
  }
  grid.finish();

  detail::KeyReader params(data, "params");
  config.t = params.take_double("t", 1.0);
  config.u = params.take_double("u", 0.0);
  const auto mu_value = params.take("mu");
  const auto mu_mode = params.take("mu_mode");
  if (mu_value && mu_mode)
    throw ValidationError("config: give params.mu or params.mu_mode, not both");
  if (mu_mode) {
    if (*mu_mode == "none") config.mu_mode = MuMode::None;
    else if (*mu_mode == "half_filling_shift")
      config.mu_mode = MuMode::HalfFillingShift;
    else
      throw ValidationError(
          "config: params.mu_mode expects none|half_filling_shift, got '" +
          *mu_mode + "'");
  } else if (mu_value) {
    try {
      config.mu = std::stod(*mu_value);
    } catch (const std::exception&) {
      throw ValidationError("config: key 'params.mu' expects a real number, got '" +
                            *mu_value + "'");
    }
  }
  params.finish();

  detail::KeyReader sector(data, "sector");
  config.sector.n_up = static_cast<int>(sector.take_int("n_up", 1));
  config.sector.n_down = static_cast<int>(sector.take_int("n_down", 1));
  sector.finish();

  detail::KeyReader init(data, "init");
  if (auto v = init.take("kind")) {
    if (*v == "auto_spread") {
      config.init_kind = InitSpec::Kind::Product;
      config.init_auto_spread = true;
    } else if (*v == "product") {
      config.init_kind = InitSpec::Kind::Product;
      config.init_auto_spread = false;
    } else if (*v == "slater") {
      config.init_kind = InitSpec::Kind::Slater;
    } else {
      throw ValidationError(
          "config: init.kind expects auto_spread|product|slater, got '" + *v + "'");
    }
  }
  if (auto v = init.take("occupied")) {
    for (const auto& tok : detail::split_ws(*v)) {
      try {
        config.init_occupied.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ValidationError("config: init.occupied expects mode indices, got '" +
                              tok + "'");
      }
    }
  }
  if (config.init_kind == InitSpec::Kind::Product && !config.init_auto_spread &&
      config.init_occupied.empty())
    throw ValidationError("config: init.kind=product requires init.occupied");
  init.finish();

  detail::KeyReader adapt(data, "adapt");
  config.adapt.epsilon = adapt.take_double("epsilon", 1e-3);
  config.adapt.delta = adapt.take_double("delta", 1e-4);
  config.adapt.grad_stop = adapt.take_double("grad_stop", 1e-6);
  config.adapt.max_depth = static_cast<int>(adapt.take_int("max_depth", 100));
  if (auto v = adapt.take("target_fidelity")) {
    try {
      config.adapt.target_fidelity = std::stod(*v);
    } catch (const std::exception&) {
      throw ValidationError(
          "config: key 'adapt.target_fidelity' expects a real number, got '" + *v +
          "'");
    }
  }
  config.adapt.track_fidelity = adapt.take_bool("track_fidelity", true);
  adapt.finish();

  detail::KeyReader ssvqe(data, "ssvqe");
  config.ssvqe_k = static_cast<int>(ssvqe.take_int("k", 0));
  if (auto v = ssvqe.take("weights")) {
    for (const auto& tok : detail::split_ws(*v)) {
      try {
        config.ssvqe_weights.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ValidationError("config: ssvqe.weights expects real numbers, got '" +
                              tok + "'");
      }
    }
  }
  ssvqe.finish();

  detail::KeyReader greens(data, "greens");
  if (auto v = greens.take("source")) {
    if (*v == "ed") config.greens_source = GreensSource::Ed;
    else if (*v == "adapt_ssvqe") config.greens_source = GreensSource::AdaptSsvqe;
    else
      throw ValidationError("config: greens.source expects ed|adapt_ssvqe, got '" +
                            *v + "'");
  }
  config.greens_nu = greens.take_double("nu", 0.1);
  config.omega_min = greens.take_double("omega_min", -10.0);
  config.omega_max = greens.take_double("omega_max", 10.0);
  config.omega_step = greens.take_double("omega_step", 0.01);
  if (auto v = greens.take("modes")) {
    config.greens_modes.clear();
    for (const auto& tok : detail::split_ws(*v)) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ValidationError("config: greens.modes entries look like k:spin, got '" +
                              tok + "'");
      int k = 0;
      try {
        k = std::stoi(tok.substr(0, colon));
      } catch (const std::exception&) {
        throw ValidationError("config: greens.modes k index invalid in '" + tok + "'");
      }
      const std::string spin = tok.substr(colon + 1);
      if (spin == "up") config.greens_modes.emplace_back(k, Spin::Up);
      else if (spin == "down") config.greens_modes.emplace_back(k, Spin::Down);
      else
        throw ValidationError("config: greens.modes spin must be up|down in '" + tok +
                              "'");
    }
  }
  greens.finish();

  config.validate();
  return config;
}

inline std::string serialize_config(const RunConfig& config) {
  std::ostringstream os;
  os << "task = " << to_string(config.task) << "\n";
  os << "output_dir = " << config.output_dir << "\n";
  os << "seed = " << config.seed << "\n\n";

  os << "[grid]\n";
  os << "width = " << config.grid.width << "\n";
  os << "height = " << config.grid.height << "\n";
  os << "boundary = "
     << (config.grid.boundary == Boundary::Open
             ? "open"
             : config.grid.boundary == Boundary::PeriodicX ? "periodic-x"
                                                           : "periodic-xy")
     << "\n\n";

  os << "[params]\n";
  os << "t = " << format_g17(config.t) << "\n";
  os << "u = " << format_g17(config.u) << "\n";
  if (config.mu_mode == MuMode::HalfFillingShift)
    os << "mu_mode = half_filling_shift\n\n";
  else
    os << "mu = " << format_g17(config.mu) << "\n\n";

  os << "[sector]\n";
  os << "n_up = " << config.sector.n_up << "\n";
  os << "n_down = " << config.sector.n_down << "\n\n";

  os << "[init]\n";
  if (config.init_kind == InitSpec::Kind::Slater) {
    os << "kind = slater\n\n";
  } else if (config.init_auto_spread) {
    os << "kind = auto_spread\n\n";
  } else {
    os << "kind = product\n";
    os << "occupied =";
    for (int m : config.init_occupied) os << ' ' << m;
    os << "\n\n";
  }

  os << "[adapt]\n";
  os << "epsilon = " << format_g17(config.adapt.epsilon) << "\n";
  os << "delta = " << format_g17(config.adapt.delta) << "\n";
  os << "grad_stop = " << format_g17(config.adapt.grad_stop) << "\n";
  os << "max_depth = " << config.adapt.max_depth << "\n";
  os << "target_fidelity =";
  if (config.adapt.target_fidelity)
    os << ' ' << format_g17(*config.adapt.target_fidelity);
  os << "\n";
  os << "track_fidelity = " << (config.adapt.track_fidelity ? "true" : "false")
     << "\n\n";

  os << "[ssvqe]\n";
  os << "k = " << config.ssvqe_k << "\n";
  os << "weights =";
  for (double w : config.ssvqe_weights) os << ' ' << format_g17(w);
  os << "\n\n";

  os << "[greens]\n";
  os << "source = "
     << (config.greens_source == GreensSource::Ed ? "ed" : "adapt_ssvqe") << "\n";
  os << "nu = " << format_g17(config.greens_nu) << "\n";
  os << "omega_min = " << format_g17(config.omega_min) << "\n";
  os << "omega_max = " << format_g17(config.omega_max) << "\n";
  os << "omega_step = " << format_g17(config.omega_step) << "\n";
  os << "modes =";
  for (const auto& [k, spin] : config.greens_modes)
    os << ' ' << k << ':' << (spin == Spin::Up ? "up" : "down");
  os << "\n";
  return os.str();
}

}  // namespace fhvqe

#endif  // FHVQE_CONFIG_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The ndris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef NDRIS_CONFIG_HPP_
#define NDRIS_CONFIG_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ndris/channel.hpp"
#include "ndris/design.hpp"
#include "ndris/metrics.hpp"

namespace ndris {

struct SystemConfig {
  Dimensions dims{4, 64};
  Geometry geometry;
  LinkBudget budget;
  OverheadModel overhead{1e-6, 1e-1};
  int trials = 1000;
  std::uint64_t seed = 1;
  Scheme scheme = Scheme::kNonDiagonal;
  // Pilots are received without noise; SE still uses budget.noise().
  bool noiseless_estimation = false;
  AoOptions ao;

  void validate() const {
    if (dims.antennas < 1 || dims.elements < 1) {
      throw std::invalid_argument("config: N and M must be >= 1");
    }
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    geometry.validate();
    budget.validate();
    if (ao.max_iterations < 1 || !(ao.tolerance >= 0.0)) {
      throw std::invalid_argument("config: bad AO options");
    }
    // Throws when the scheme's pilots overflow the coherence interval.
    overhead.prelog(scheme, dims.elements);
    overhead.prelog(Scheme::kNonDiagonal, dims.elements);
  }

  double pilot_noise() const { return noiseless_estimation ? 0.0 : budget.noise(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) {
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

inline long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) {
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Applies one key/value setting. Units: dBm, meters, seconds.
inline void apply_setting(SystemConfig& cfg, const std::string& key, const std::string& value) {
  using detail::to_double;
  using detail::to_integer;
  if (key == "N") cfg.dims.antennas = static_cast<int>(to_integer(key, value));
  else if (key == "M") cfg.dims.elements = static_cast<int>(to_integer(key, value));
  else if (key == "d_H") cfg.geometry.d_h_m = to_double(key, value);
  else if (key == "d_g") cfg.geometry.d_g_m = to_double(key, value);
  else if (key == "eta_H") cfg.geometry.eta_h = to_double(key, value);
  else if (key == "eta_g") cfg.geometry.eta_g = to_double(key, value);
  else if (key == "p_u_dbm") cfg.budget.p_u_dbm = to_double(key, value);
  else if (key == "p_t_dbm") cfg.budget.p_t_dbm = to_double(key, value);
  else if (key == "noise_dbm") cfg.budget.noise_dbm = to_double(key, value);
  else if (key == "tau_m") cfg.overhead.tau_m_s = to_double(key, value);
  else if (key == "tau") cfg.overhead.tau_s = to_double(key, value);
  else if (key == "tau_ratio") cfg.overhead.tau_m_s = to_double(key, value) * cfg.overhead.tau_s;
  else if (key == "trials") cfg.trials = static_cast<int>(to_integer(key, value));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "scheme") cfg.scheme = parse_scheme(value);
  else if (key == "noiseless_estimation") {
    if (value == "true" || value == "1") cfg.noiseless_estimation = true;
    else if (value == "false" || value == "0") cfg.noiseless_estimation = false;
    else throw std::invalid_argument("config: noiseless_estimation expects true/false");
  } else if (key == "ao_max_iterations") {
    cfg.ao.max_iterations = static_cast<int>(to_integer(key, value));
  } else if (key == "ao_tolerance") {
    cfg.ao.tolerance = to_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

// Flat "key = value" document; '#' starts a comment. Later keys win.
inline SystemConfig parse_config(std::istream& in, SystemConfig cfg = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string::npos) sep = line.find(':');
    if (sep == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    try {
      apply_setting(cfg, detail::trim(line.substr(0, sep)), detail::trim(line.substr(sep + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

inline SystemConfig load_config(const std::string& path, SystemConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  try {
    return parse_config(in, std::move(cfg));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// Ordered key/value echo; parse_config(to_key_values(c)) reproduces c.
inline std::vector<std::pair<std::string, std::string>> to_key_values(const SystemConfig& c) {
  using detail::format_double;
  return {
      {"N", std::to_string(c.dims.antennas)},
      {"M", std::to_string(c.dims.elements)},
      {"d_H", format_double(c.geometry.d_h_m)},
      {"d_g", format_double(c.geometry.d_g_m)},
      {"eta_H", format_double(c.geometry.eta_h)},
      {"eta_g", format_double(c.geometry.eta_g)},
      {"p_u_dbm", format_double(c.budget.p_u_dbm)},
      {"p_t_dbm", format_double(c.budget.p_t_dbm)},
      {"noise_dbm", format_double(c.budget.noise_dbm)},
      {"tau", format_double(c.overhead.tau_s)},
      {"tau_m", format_double(c.overhead.tau_m_s)},
      {"trials", std::to_string(c.trials)},
      {"seed", std::to_string(c.seed)},
      {"scheme", std::string(to_string(c.scheme))},
      {"noiseless_estimation", c.noiseless_estimation ? "true" : "false"},
      {"ao_max_iterations", std::to_string(c.ao.max_iterations)},
      {"ao_tolerance", format_double(c.ao.tolerance)},
  };
}

}  // namespace ndris

#endif  // NDRIS_CONFIG_HPP_

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


#ifndef NDRIS_METRICS_HPP_
#define NDRIS_METRICS_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ndris/design.hpp"
#include "ndris/ris.hpp"
#include "ndris/types.hpp"

namespace ndris {

enum class Scheme { kNonDiagonal, kDiagonal, kExhaustive };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kNonDiagonal: return "nondiagonal";
    case Scheme::kDiagonal: return "diagonal";
    case Scheme::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

inline Scheme parse_scheme(std::string_view name) {
  if (name == "nondiagonal" || name == "nondiagonal-3stage") return Scheme::kNonDiagonal;
  if (name == "diagonal" || name == "diagonal-onoff") return Scheme::kDiagonal;
  if (name == "exhaustive" || name == "exhaustive-reference") return Scheme::kExhaustive;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

// Pilot slots of length tau_m spent on estimation: 3M for the three-stage
// protocol, M for ON/OFF on a diagonal RIS, M^2 for exhaustive estimation
// of every switch-array cascade.
inline std::int64_t pilot_slot_count(Scheme scheme, int m) {
  if (m < 1) throw std::invalid_argument("pilot_slot_count: M must be >= 1");
  const auto mm = static_cast<std::int64_t>(m);
  switch (scheme) {
    case Scheme::kNonDiagonal: return 3 * mm;
    case Scheme::kDiagonal: return mm;
    case Scheme::kExhaustive: return mm * mm;
  }
  throw std::invalid_argument("pilot_slot_count: bad scheme");
}

struct OverheadModel {
  double tau_m_s = 1e-6;  // one element slot
  double tau_s = 1e-2;    // coherence interval

  double ratio() const { return tau_m_s / tau_s; }

  // 1 - slots * tau_m / tau, required to lie in [0, 1].
  double prelog(Scheme scheme, int m) const {
    if (!(tau_s > 0.0) || !(tau_m_s >= 0.0)) {
      throw std::invalid_argument("OverheadModel: need tau > 0 and tau_m >= 0");
    }
    const double value =
        1.0 - static_cast<double>(pilot_slot_count(scheme, m)) * tau_m_s / tau_s;
    if (value < 0.0) {
      throw std::domain_error("OverheadModel: estimation for scheme '" +
                              std::string(to_string(scheme)) +
                              "' does not fit in the coherence interval");
    }
    return value;
  }

  double estimation_time(Scheme scheme, int m) const {
    return static_cast<double>(pilot_slot_count(scheme, m)) * tau_m_s;
  }
};

// P_t |q^T diag(J_r g) J_t^T H^T w|^2, evaluated on the index maps.
inline double received_power(const PhaseVector& q, const SwitchConfig& cfg,
                             const CMatrix& h, const CVector& g, const CVector& w,
                             double p_t) {
  if (cfg.kind() != SwitchKind::kPermutationPair) {
    throw std::invalid_argument("received_power: requires a permutation pair");
  }
  const int m = cfg.size();
  if (q.size() != m || g.size() != m || h.cols() != m || h.rows() != w.size()) {
    throw std::invalid_argument("received_power: dimension mismatch");
  }
  const CVector htw = h.transpose() * w;
  Complex s(0.0, 0.0);
  for (int k = 0; k < m; ++k) {
    s += q[k] * g(cfg.jr_cols()[k]) * htw(cfg.jt_rows()[k]);
  }
  return p_t * std::norm(s);
}

// P_t |(H Theta g)^T w|^2 for an explicit scattering matrix.
inline double received_power_theta(const CMatrix& theta, const CMatrix& h,
                                   const CVector& g, const CVector& w, double p_t) {
  if (theta.rows() != h.cols() || theta.cols() != g.size() || h.rows() != w.size()) {
    throw std::invalid_argument("received_power_theta: dimension mismatch");
  }
  const CVector bs = h * (theta * g);
  return p_t * std::norm(bs.cwiseProduct(w).sum());
}

// prelog * log2(1 + P_r / sigma^2).
inline double spectral_efficiency(double received_power_w, double noise_w, double prelog) {
  if (!(noise_w > 0.0)) {
    throw std::domain_error("spectral_efficiency: noise power must be positive");
  }
  return prelog * std::log2(1.0 + received_power_w / noise_w);
}

// Fraction of incident elements whose reflecting element matches.
inline double mapping_accuracy(const ElementMapping& estimated, const ElementMapping& reference) {
  if (estimated.size() != reference.size()) {
    throw std::invalid_argument("mapping_accuracy: length mismatch");
  }
  if (estimated.size() == 0) return 1.0;
  int hits = 0;
  for (int i = 0; i < estimated.size(); ++i) hits += estimated[i] == reference[i];
  return static_cast<double>(hits) / estimated.size();
}

// (true rank, estimated rank) per incident element, ranks taken in the
// reference ascending orders. Perfect mapping puts every pair on the
// diagonal.
inline std::vector<std::pair<int, int>> rank_pairs(const ElementMapping& estimated,
                                                   const RVector& g_mag_true,
                                                   const RVector& h_mag_true) {
  const std::vector<int> by_g = ascending_order(g_mag_true);
  const std::vector<int> by_h = ascending_order(h_mag_true);
  std::vector<int> h_rank(by_h.size());
  for (std::size_t k = 0; k < by_h.size(); ++k) h_rank[by_h[k]] = static_cast<int>(k);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(by_g.size());
  for (std::size_t k = 0; k < by_g.size(); ++k) {
    pairs.emplace_back(static_cast<int>(k), h_rank[estimated[by_g[k]]]);
  }
  return pairs;
}

}  // namespace ndris

#endif  // NDRIS_METRICS_HPP_

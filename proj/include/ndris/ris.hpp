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


#ifndef NDRIS_RIS_HPP_
#define NDRIS_RIS_HPP_

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ndris/types.hpp"

namespace ndris {

namespace detail {

inline bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline std::vector<int> identity_indices(int m) {
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace detail

// Incident -> reflecting element bijection of the switch array.
// pairing()[i] is the element (the H side) that re-radiates the signal
// incident on element i (the g side).
class ElementMapping {
 public:
  ElementMapping() = default;
  explicit ElementMapping(std::vector<int> pairing) : pairing_(std::move(pairing)) {
    if (!detail::is_permutation(pairing_)) {
      throw std::invalid_argument("ElementMapping: pairing is not a permutation");
    }
  }

  static ElementMapping identity(int m) {
    return ElementMapping(detail::identity_indices(m));
  }

  int size() const { return static_cast<int>(pairing_.size()); }
  int operator[](int i) const { return pairing_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& pairing() const { return pairing_; }

  ElementMapping inverse() const {
    std::vector<int> inv(pairing_.size());
    for (std::size_t i = 0; i < pairing_.size(); ++i) inv[pairing_[i]] = static_cast<int>(i);
    return ElementMapping(std::move(inv));
  }

  friend bool operator==(const ElementMapping&, const ElementMapping&) = default;

 private:
  std::vector<int> pairing_;
};

enum class SwitchKind { kStage1, kStage2, kPermutationPair };

// A (J_t, J_r) pair. Every matrix this protocol uses has exactly one 1 per
// column of J_t and exactly one 1 per row of J_r, so both are stored as
// index maps:
//   jt_rows[c] = row of the 1 in column c of J_t
//   jr_cols[m] = column of the 1 in row m of J_r
// Stage 1 (all-ones first row of J_t) is jt_rows = {0, ..., 0}; stage 2
// (all-ones first column of J_r) is jr_cols = {0, ..., 0}.
class SwitchConfig {
 public:
  static SwitchConfig permutation_pair(std::vector<int> jt_rows,
                                       std::vector<int> jr_cols) {
    if (jt_rows.size() != jr_cols.size()) {
      throw std::invalid_argument("SwitchConfig: J_t and J_r sizes differ");
    }
    if (!detail::is_permutation(jt_rows) || !detail::is_permutation(jr_cols)) {
      throw std::invalid_argument("SwitchConfig: J_t and J_r must be permutations");
    }
    return SwitchConfig(SwitchKind::kPermutationPair, std::move(jt_rows),
                        std::move(jr_cols));
  }

  // Accepts dense 0/1 permutation matrices.
  static SwitchConfig from_dense(const Eigen::MatrixXd& jt, const Eigen::MatrixXd& jr) {
    const auto m = jt.rows();
    if (jt.cols() != m || jr.rows() != m || jr.cols() != m) {
      throw std::invalid_argument("SwitchConfig: matrices must be square and equal size");
    }
    std::vector<int> jt_rows(static_cast<std::size_t>(m), -1);
    std::vector<int> jr_cols(static_cast<std::size_t>(m), -1);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        if (jt(a, b) != 0.0 && jt(a, b) != 1.0) {
          throw std::invalid_argument("SwitchConfig: J_t entries must be 0 or 1");
        }
        if (jr(a, b) != 0.0 && jr(a, b) != 1.0) {
          throw std::invalid_argument("SwitchConfig: J_r entries must be 0 or 1");
        }
      }
      if (jt.col(a).sum() != 1.0 || jr.row(a).sum() != 1.0) {
        throw std::invalid_argument("SwitchConfig: not a permutation matrix");
      }
      jt.col(a).maxCoeff(&jt_rows[static_cast<std::size_t>(a)]);
      jr.row(a).maxCoeff(&jr_cols[static_cast<std::size_t>(a)]);
    }
    return permutation_pair(std::move(jt_rows), std::move(jr_cols));
  }

  SwitchKind kind() const { return kind_; }
  int size() const { return static_cast<int>(jt_rows_.size()); }
  const std::vector<int>& jt_rows() const { return jt_rows_; }
  const std::vector<int>& jr_cols() const { return jr_cols_; }

  Eigen::MatrixXd dense_jt() const {
    Eigen::MatrixXd jt = Eigen::MatrixXd::Zero(size(), size());
    for (int c = 0; c < size(); ++c) jt(jt_rows_[static_cast<std::size_t>(c)], c) = 1.0;
    return jt;
  }

  Eigen::MatrixXd dense_jr() const {
    Eigen::MatrixXd jr = Eigen::MatrixXd::Zero(size(), size());
    for (int m = 0; m < size(); ++m) jr(m, jr_cols_[static_cast<std::size_t>(m)]) = 1.0;
    return jr;
  }

 private:
  friend SwitchConfig stage1_switch(int m);
  friend SwitchConfig stage2_switch(int m);

  SwitchConfig(SwitchKind kind, std::vector<int> jt_rows, std::vector<int> jr_cols)
      : kind_(kind), jt_rows_(std::move(jt_rows)), jr_cols_(std::move(jr_cols)) {}

  SwitchKind kind_;
  std::vector<int> jt_rows_;
  std::vector<int> jr_cols_;
};

// Stage 1: first row of J_t all ones, J_r = I. Every incident signal leaves
// through element 0, so each BS antenna observes a scaled copy of g.
inline SwitchConfig stage1_switch(int m) {
  if (m < 1) throw std::invalid_argument("stage1_switch: M must be >= 1");
  return SwitchConfig(SwitchKind::kStage1, std::vector<int>(static_cast<std::size_t>(m), 0),
                      detail::identity_indices(m));
}

// Stage 2: first column of J_r all ones, J_t = I. Element 0's incident
// signal is re-radiated by every element, giving a scaled copy of H.
inline SwitchConfig stage2_switch(int m) {
  if (m < 1) throw std::invalid_argument("stage2_switch: M must be >= 1");
  return SwitchConfig(SwitchKind::kStage2, detail::identity_indices(m),
                      std::vector<int>(static_cast<std::size_t>(m), 0));
}

// Canonical realization of a mapping: J_t = I and J_r[pairing[i]][i] = 1.
inline SwitchConfig permutation_from_mapping(const ElementMapping& mapping) {
  const ElementMapping inv = mapping.inverse();
  return SwitchConfig::permutation_pair(detail::identity_indices(mapping.size()),
                                        inv.pairing());
}

// Induced pairing of any permutation pair: Theta = J_t Phi J_r has its m-th
// non-zero at (jt_rows[m], jr_cols[m]), i.e. incident jr_cols[m] leaves
// through jt_rows[m].
inline ElementMapping extract_mapping(const SwitchConfig& cfg) {
  if (cfg.kind() != SwitchKind::kPermutationPair) {
    throw std::invalid_argument("extract_mapping: stage selectors carry no mapping");
  }
  std::vector<int> pairing(static_cast<std::size_t>(cfg.size()));
  for (int m = 0; m < cfg.size(); ++m) {
    pairing[cfg.jr_cols()[m]] = cfg.jt_rows()[m];
  }
  return ElementMapping(std::move(pairing));
}

// Diagonal of Phi. Entries are unit modulus (full reflection).
class PhaseVector {
 public:
  static constexpr double kTolerance = 1e-12;

  PhaseVector() = default;
  explicit PhaseVector(CVector q) : q_(std::move(q)) {
    for (Eigen::Index m = 0; m < q_.size(); ++m) {
      if (std::abs(std::abs(q_(m)) - 1.0) > kTolerance) {
        throw std::invalid_argument("PhaseVector: entry " + std::to_string(m) +
                                    " is not unit modulus");
      }
    }
  }

  static PhaseVector from_angles(const RVector& theta) {
    CVector q(theta.size());
    for (Eigen::Index m = 0; m < theta.size(); ++m) q(m) = std::polar(1.0, theta(m));
    return PhaseVector(std::move(q));
  }

  static PhaseVector ones(int m) { return PhaseVector(CVector::Ones(m)); }

  int size() const { return static_cast<int>(q_.size()); }
  const CVector& values() const { return q_; }
  Complex operator[](int m) const { return q_(m); }

 private:
  CVector q_;
};

// Theta = J_t diag(q) J_r, assembled from the index maps.
inline CMatrix build_theta(const SwitchConfig& cfg, const PhaseVector& q) {
  if (cfg.kind() != SwitchKind::kPermutationPair) {
    throw std::invalid_argument("build_theta: requires a permutation pair");
  }
  if (q.size() != cfg.size()) {
    throw std::invalid_argument("build_theta: phase vector length mismatch");
  }
  CMatrix theta = CMatrix::Zero(cfg.size(), cfg.size());
  for (int m = 0; m < cfg.size(); ++m) {
    theta(cfg.jt_rows()[m], cfg.jr_cols()[m]) = q[m];
  }
  return theta;
}

// F = H J_t diag(J_r g); F(n, c) = H(n, jt_rows[c]) * g(jr_cols[c]).
inline CMatrix effective_cascade(const CMatrix& h, const CVector& g,
                                 const SwitchConfig& cfg) {
  if (h.cols() != cfg.size() || g.size() != cfg.size()) {
    throw std::invalid_argument("effective_cascade: dimension mismatch (H is " +
                                std::to_string(h.rows()) + "x" +
                                std::to_string(h.cols()) + ", g has " +
                                std::to_string(g.size()) + ", switch has " +
                                std::to_string(cfg.size()) + ")");
  }
  CMatrix f(h.rows(), h.cols());
  for (int c = 0; c < cfg.size(); ++c) {
    f.col(c) = h.col(cfg.jt_rows()[c]) * g(cfg.jr_cols()[c]);
  }
  return f;
}

}  // namespace ndris

#endif  // NDRIS_RIS_HPP_

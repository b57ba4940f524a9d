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


// Test-only reference computations. Everything here goes through dense
// matrices or plain loops and never through the index-map fast paths.

#ifndef NDRIS_TESTS_ORACLES_HPP_
#define NDRIS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <vector>

#include "ndris/ndris.hpp"

namespace ndris::oracle {

// H J_t diag(J_r g) as a dense triple product.
inline CMatrix dense_cascade(const CMatrix& h, const CVector& g, const Eigen::MatrixXd& jt,
                             const Eigen::MatrixXd& jr) {
  const CVector jrg = jr.cast<Complex>() * g;
  CMatrix diag = CMatrix::Zero(g.size(), g.size());
  for (Eigen::Index m = 0; m < g.size(); ++m) diag(m, m) = jrg(m);
  return h * jt.cast<Complex>() * diag;
}

// Entry-wise evaluation of sum_{a,b} H(n,a) J_t(a,c) [J_r g](c) with no
// matrix library calls.
inline Complex cascade_entry(const CMatrix& h, const CVector& g, const Eigen::MatrixXd& jt,
                             const Eigen::MatrixXd& jr, int n, int c) {
  Complex jrg(0.0, 0.0);
  for (Eigen::Index b = 0; b < g.size(); ++b) jrg += jr(c, b) * g(b);
  Complex acc(0.0, 0.0);
  for (Eigen::Index a = 0; a < h.cols(); ++a) acc += h(n, a) * jt(a, c) * jrg;
  return acc;
}

// J_t diag(q) J_r.
inline CMatrix dense_theta(const Eigen::MatrixXd& jt, const CVector& q,
                           const Eigen::MatrixXd& jr) {
  return jt.cast<Complex>() * q.asDiagonal() * jr.cast<Complex>();
}

// P_t |(H Theta g)^T w|^2.
inline double eq3_power(const CMatrix& theta, const CMatrix& h, const CVector& g,
                        const CVector& w, double p_t) {
  const CVector y = h * theta * g;
  Complex s(0.0, 0.0);
  for (Eigen::Index n = 0; n < y.size(); ++n) s += y(n) * w(n);
  return p_t * std::norm(s);
}

// Least squares min ||Y - F X||_F through a column-pivoting QR of X^T,
// independent of the pseudoinverse formula.
inline CMatrix generic_least_squares(const CMatrix& y, const CMatrix& x) {
  // F X = Y  <=>  X^T F^T = Y^T
  const CMatrix xt = x.transpose();
  const CMatrix ft = xt.colPivHouseholderQr().solve(CMatrix(y.transpose()));
  return ft.transpose();
}

// Largest sum_i a_i b_{perm(i)} by enumeration.
inline double best_pairing_gain(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<int> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  double best = -1.0;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += a[i] * b[perm[i]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Eigen::MatrixXd permutation_matrix(const std::vector<int>& row_to_col) {
  const auto m = static_cast<Eigen::Index>(row_to_col.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index r = 0; r < m; ++r) p(r, row_to_col[static_cast<std::size_t>(r)]) = 1.0;
  return p;
}

inline std::vector<int> random_permutation(int m, RandomStream& rng) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng.engine());
  return p;
}

}  // namespace ndris::oracle

#endif  // NDRIS_TESTS_ORACLES_HPP_

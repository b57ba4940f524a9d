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


#ifndef NDRIS_ESTIMATION_HPP_
#define NDRIS_ESTIMATION_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ndris/channel.hpp"
#include "ndris/random.hpp"
#include "ndris/ris.hpp"
#include "ndris/types.hpp"

namespace ndris {

// ON/OFF pilot: one element active per slot, so X_p = x_p I_M.
struct PilotConfig {
  Complex x_p{1.0, 0.0};
  int elements = 1;

  static PilotConfig from_power(double p_u_watts, int elements) {
    if (!(p_u_watts > 0.0)) {
      throw std::invalid_argument("PilotConfig: pilot power must be positive");
    }
    return {Complex(std::sqrt(p_u_watts), 0.0), elements};
  }

  double power() const { return std::norm(x_p); }
};

inline CMatrix pilot_matrix(const PilotConfig& p) {
  if (p.elements < 1) throw std::invalid_argument("pilot_matrix: M must be >= 1");
  return p.x_p * CMatrix::Identity(p.elements, p.elements);
}

// Y X_p^dagger with X_p^dagger = X_p^H (X_p X_p^H)^-1.
inline CMatrix ls_estimate(const CMatrix& y, const CMatrix& x_p) {
  if (y.cols() != x_p.cols()) {
    throw std::invalid_argument("ls_estimate: Y columns must match X_p columns");
  }
  const CMatrix gram = x_p * x_p.adjoint();
  Eigen::FullPivLU<CMatrix> lu(gram);
  if (!lu.isInvertible()) {
    throw std::domain_error("ls_estimate: pilot Gram matrix X_p X_p^H is singular");
  }
  // Y X_p^H G^-1 = (G^-H X_p Y^H)^H, and G is Hermitian.
  return (lu.solve(x_p * y.adjoint())).adjoint();
}

// Scaled-identity pilot: X_p^dagger = I / x_p.
inline CMatrix ls_estimate(const CMatrix& y, const PilotConfig& p) {
  if (y.cols() != p.elements) {
    throw std::invalid_argument("ls_estimate: Y columns must equal M");
  }
  if (p.power() == 0.0) {
    throw std::domain_error("ls_estimate: zero pilot");
  }
  return y * (std::conj(p.x_p) / p.power());
}

struct StageObservation {
  CMatrix y;        // received pilots, N x M
  CMatrix f_hat;    // LS estimate
  CMatrix f_truth;  // noiseless effective channel
};

// Y = F X_p + Z with a fresh noise draw of the given variance.
inline StageObservation run_stage(const ChannelRealization& ch, const SwitchConfig& cfg,
                                  const PilotConfig& pilot, double noise_variance,
                                  RandomStream& rng) {
  if (pilot.elements != cfg.size()) {
    throw std::invalid_argument("run_stage: pilot and switch sizes differ");
  }
  StageObservation obs;
  obs.f_truth = effective_cascade(ch.h, ch.g, cfg);
  obs.y = obs.f_truth * pilot.x_p +
          sample_noise(ch.antennas(), ch.elements(), noise_variance, rng);
  obs.f_hat = ls_estimate(obs.y, pilot);
  return obs;
}

struct AntennaSelection {
  int index = 0;
  CVector row;
};

// Row with the largest mean magnitude. Ties go to the lowest index.
inline AntennaSelection select_antenna(const CMatrix& f1_hat) {
  if (f1_hat.rows() < 1 || f1_hat.cols() < 1) {
    throw std::invalid_argument("select_antenna: empty estimate");
  }
  int best = 0;
  double best_score = -1.0;
  for (Eigen::Index n = 0; n < f1_hat.rows(); ++n) {
    const double score = f1_hat.row(n).cwiseAbs().mean();
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(n);
    }
  }
  return {best, f1_hat.row(best).transpose()};
}

// Per-trial estimates of all three stages plus their noiseless truths.
struct EstimationResult {
  CMatrix f1_hat;
  CVector f1_sel;
  CVector f1_sel_truth;
  int selected_antenna = 0;
  CMatrix f2_hat;
  CMatrix f2_truth;
  CMatrix fcas_hat;
  CMatrix fcas_truth;
};

// ||est - truth||^2 / ||truth||^2 for a single realization.
template <typename Derived1, typename Derived2>
double nmse(const Eigen::MatrixBase<Derived1>& est, const Eigen::MatrixBase<Derived2>& truth) {
  if (est.rows() != truth.rows() || est.cols() != truth.cols()) {
    throw std::invalid_argument("nmse: shape mismatch");
  }
  const double denom = truth.squaredNorm();
  if (denom == 0.0) throw std::domain_error("nmse: truth has zero energy");
  return (est - truth).squaredNorm() / denom;
}

// E{||A_hat - A||^2} / E{||A||^2} with both expectations as sums over trials.
class NmseAccumulator {
 public:
  void add(double error_energy, double truth_energy) {
    error_ += error_energy;
    truth_ += truth_energy;
    ++count_;
  }

  template <typename Derived1, typename Derived2>
  void add(const Eigen::MatrixBase<Derived1>& est, const Eigen::MatrixBase<Derived2>& truth) {
    if (est.rows() != truth.rows() || est.cols() != truth.cols()) {
      throw std::invalid_argument("NmseAccumulator: shape mismatch");
    }
    add((est - truth).squaredNorm(), truth.squaredNorm());
  }

  double value() const {
    if (count_ == 0) throw std::domain_error("NmseAccumulator: no trials");
    if (truth_ == 0.0) throw std::domain_error("NmseAccumulator: all truths are zero");
    return error_ / truth_;
  }

  long count() const { return count_; }
  double error_energy() const { return error_; }
  double truth_energy() const { return truth_; }

 private:
  double error_ = 0.0;
  double truth_ = 0.0;
  long count_ = 0;
};

}  // namespace ndris

#endif  // NDRIS_ESTIMATION_HPP_

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


#ifndef NDRIS_DESIGN_HPP_
#define NDRIS_DESIGN_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndris/channel.hpp"
#include "ndris/random.hpp"
#include "ndris/ris.hpp"
#include "ndris/types.hpp"

namespace ndris {

enum class PairingSource { kSisoSorted, kMisoAveraged, kBruteForce, kIdentity };

struct PairingDesign {
  ElementMapping mapping;
  PairingSource source = PairingSource::kIdentity;
};

// Element indices ordered by ascending magnitude; equal magnitudes keep
// ascending index order.
inline std::vector<int> ascending_order(const RVector& magnitudes) {
  std::vector<int> order(static_cast<std::size_t>(magnitudes.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return magnitudes(a) < magnitudes(b); });
  return order;
}

// Matches the k-th smallest incident magnitude with the k-th smallest
// reflecting magnitude.
inline ElementMapping sorted_pairing(const RVector& incident_mag, const RVector& reflect_mag) {
  if (incident_mag.size() != reflect_mag.size()) {
    throw std::invalid_argument("sorted_pairing: length mismatch (" +
                                std::to_string(incident_mag.size()) + " vs " +
                                std::to_string(reflect_mag.size()) + ")");
  }
  const std::vector<int> by_g = ascending_order(incident_mag);
  const std::vector<int> by_h = ascending_order(reflect_mag);
  std::vector<int> pairing(by_g.size());
  for (std::size_t k = 0; k < by_g.size(); ++k) pairing[by_g[k]] = by_h[k];
  return ElementMapping(std::move(pairing));
}

// Sum_i |g_i| |h_{pairing[i]}|, accumulated in incident-index order.
inline double pairing_gain(const RVector& g_mag, const RVector& h_mag,
                           const ElementMapping& mapping) {
  double gain = 0.0;
  for (int i = 0; i < mapping.size(); ++i) gain += g_mag(i) * h_mag(mapping[i]);
  return gain;
}

// SISO switch design from the scaled stage-1 (g') and stage-2 (h')
// estimates. Positive scalings of either input leave the result unchanged.
inline PairingDesign siso_pairing(const CVector& g_scaled, const CVector& h_scaled) {
  if (g_scaled.size() != h_scaled.size()) {
    throw std::invalid_argument("siso_pairing: g' and h' lengths differ");
  }
  return {sorted_pairing(g_scaled.cwiseAbs(), h_scaled.cwiseAbs()),
          PairingSource::kSisoSorted};
}

// Per-element magnitude of H' averaged over the BS antennas.
inline RVector average_magnitude(const CMatrix& h_scaled) {
  return h_scaled.cwiseAbs().colwise().mean().transpose();
}

// MISO switch design: reduce H' to its per-element average magnitude, then
// pair as in the SISO case. Sub-optimal for N > 1.
inline PairingDesign miso_pairing(const CVector& g_scaled, const CMatrix& h_scaled) {
  if (h_scaled.cols() != g_scaled.size() || h_scaled.rows() < 1) {
    throw std::invalid_argument("miso_pairing: H' must be N x M with M = len(g')");
  }
  return {sorted_pairing(g_scaled.cwiseAbs(), average_magnitude(h_scaled)),
          PairingSource::kMisoAveraged};
}

inline constexpr int kBruteForceMaxElements = 10;

// Exhaustive search over all M! pairings; returns the first maximizer in
// lexicographic order of the pairing vector.
inline PairingDesign brute_force_pairing(const RVector& g_mag, const RVector& h_mag) {
  if (g_mag.size() != h_mag.size()) {
    throw std::invalid_argument("brute_force_pairing: length mismatch");
  }
  const int m = static_cast<int>(g_mag.size());
  if (m > kBruteForceMaxElements) {
    throw std::length_error("brute_force_pairing: M = " + std::to_string(m) +
                            " exceeds the factorial guard of " +
                            std::to_string(kBruteForceMaxElements));
  }
  std::vector<int> perm = detail::identity_indices(m);
  std::vector<int> best = perm;
  double best_gain = -std::numeric_limits<double>::infinity();
  do {
    double gain = 0.0;
    for (int i = 0; i < m; ++i) gain += g_mag(i) * h_mag(perm[static_cast<std::size_t>(i)]);
    if (gain > best_gain) {
      best_gain = gain;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {ElementMapping(std::move(best)), PairingSource::kBruteForce};
}

inline PairingDesign brute_force_pairing(const CVector& g, const CVector& h_bar) {
  return brute_force_pairing(RVector(g.cwiseAbs()), RVector(h_bar.cwiseAbs()));
}

// q_m = exp(-j angle(f_m)), with angle(0) := 0. Aligns every term of
// sum_m q_m f_m onto the positive real axis.
inline PhaseVector passive_phases(const CVector& f_cas) {
  CVector q(f_cas.size());
  for (Eigen::Index m = 0; m < f_cas.size(); ++m) q(m) = std::polar(1.0, -angle(f_cas(m)));
  return PhaseVector(std::move(q));
}

struct AoOptions {
  int max_iterations = 50;
  double tolerance = 1e-8;
};

struct BeamformingSolution {
  PhaseVector q;
  CVector w;
  // Spectral efficiency after each accepted iteration.
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
  // |q^T F^T w|^2 at the returned point.
  double gain = 0.0;
};

// Uniform draw on the complex unit sphere in C^n.
inline CVector random_unit_vector(int n, RandomStream& rng) {
  CVector w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.complex_gaussian(1.0);
  const double norm = w.norm();
  if (norm == 0.0) {
    w.setZero();
    w(0) = 1.0;
    return w;
  }
  return w / norm;
}

// Alternating active/passive beamforming on a cascaded estimate F (N x M):
//   q <- exp(-j angle(F^T w))
//   w <- (q^T F^T)^H / ||q^T F^T||          (MRT)
// The objective is prelog * log2(1 + snr * |q^T F^T w|^2) with
// snr = P_t / sigma_z^2. Iteration stops when the relative change of the
// objective falls below opts.tolerance (the first iteration is compared
// with the value right after its own q-step) or after opts.max_iterations.
// The relative change is taken on log2(1 + snr * gain) so that a zero
// prelog does not make it undefined.
// An iterate whose gain drops below its predecessor can only come from
// rounding at a fixed point; it is discarded and the loop ends.
// `observe(iteration, q, w)` sees every accepted iterate.
template <typename Observer>
BeamformingSolution alternating_optimization(const CMatrix& f_cas, const LinkBudget& budget,
                                             double prelog, const AoOptions& opts,
                                             RandomStream& rng, Observer&& observe) {
  const int n = static_cast<int>(f_cas.rows());
  if (n < 1 || f_cas.cols() < 1) {
    throw std::invalid_argument("alternating_optimization: empty channel");
  }
  if (f_cas.isZero(0.0)) {
    throw std::domain_error("alternating_optimization: zero channel, MRT undefined");
  }
  if (opts.max_iterations < 1) {
    throw std::invalid_argument("alternating_optimization: max_iterations must be >= 1");
  }
  const double snr = budget.p_t() / budget.noise();
  auto rate = [&](double gain) { return std::log2(1.0 + snr * gain); };

  // In C^1 the initial phase only rotates the final (q, w) pair; start at 1.
  CVector w = n == 1 ? CVector::Ones(1) : random_unit_vector(n, rng);

  BeamformingSolution sol;
  CVector q_best;
  CVector w_best;
  double prev_gain = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const CVector projected = f_cas.transpose() * w;  // F^T w
    CVector q(projected.size());
    for (Eigen::Index m = 0; m < projected.size(); ++m) {
      q(m) = std::polar(1.0, -angle(projected(m)));
    }
    if (it == 1) prev_gain = std::norm(q.cwiseProduct(projected).sum());

    const CVector combined = f_cas * q;  // (q^T F^T)^T
    const double norm = combined.norm();
    if (norm == 0.0) {
      throw std::domain_error("alternating_optimization: q^T F^T vanished, MRT undefined");
    }
    const CVector w_next = combined.conjugate() / norm;
    const double gain = norm * norm;  // |q^T F^T w|^2 at the MRT optimum

    if (it > 1 && gain < prev_gain) {
      sol.converged = true;
      break;
    }
    q_best = q;
    w_best = w_next;
    w = w_next;
    sol.iterations = it;
    sol.gain = gain;
    sol.objective_trace.push_back(prelog * rate(gain));
    observe(it, q, w_next);

    const double prev_rate = rate(prev_gain);
    const double change = prev_rate > 0.0 ? (rate(gain) - prev_rate) / prev_rate : 1.0;
    prev_gain = gain;
    if (change < opts.tolerance) {
      sol.converged = true;
      break;
    }
  }
  sol.q = PhaseVector(std::move(q_best));
  sol.w = std::move(w_best);
  return sol;
}

inline BeamformingSolution alternating_optimization(const CMatrix& f_cas,
                                                    const LinkBudget& budget, double prelog,
                                                    const AoOptions& opts, RandomStream& rng) {
  return alternating_optimization(f_cas, budget, prelog, opts, rng,
                                  [](int, const CVector&, const CVector&) {});
}

}  // namespace ndris

#endif  // NDRIS_DESIGN_HPP_

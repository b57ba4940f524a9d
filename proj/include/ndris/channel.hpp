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


#ifndef NDRIS_CHANNEL_HPP_
#define NDRIS_CHANNEL_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include "ndris/random.hpp"
#include "ndris/types.hpp"

namespace ndris {

// 10^((p - 30) / 10).
inline double dbm_to_watts(double p_dbm) {
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

inline double watts_to_dbm(double p_watts) {
  return 10.0 * std::log10(p_watts) + 30.0;
}

// Large-scale gain d^(-eta).
inline double path_loss(double distance_m, double exponent) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path_loss: distance must be positive, got " +
                            std::to_string(distance_m));
  }
  return std::pow(distance_m, -exponent);
}

// BS-RIS and RIS-user link distances and path-loss exponents.
struct Geometry {
  double d_h_m = 30.0;
  double d_g_m = 20.0;
  double eta_h = 3.0;
  double eta_g = 3.0;

  void validate() const {
    if (!(d_h_m > 0.0) || !(d_g_m > 0.0)) {
      throw std::invalid_argument("Geometry: distances must be positive");
    }
    // Free-space lower bound.
    if (!(eta_h >= 2.0) || !(eta_g >= 2.0)) {
      throw std::invalid_argument("Geometry: path-loss exponents must be >= 2");
    }
  }

  double zeta_h() const { return path_loss(d_h_m, eta_h); }
  double zeta_g() const { return path_loss(d_g_m, eta_g); }
};

// Powers are configured in dBm; the accessors return watts.
struct LinkBudget {
  double p_u_dbm = 30.0;
  double p_t_dbm = 40.0;
  double noise_dbm = -80.0;

  void validate() const {
    if (!std::isfinite(p_u_dbm) || !std::isfinite(p_t_dbm) ||
        !std::isfinite(noise_dbm)) {
      throw std::invalid_argument("LinkBudget: powers must be finite dBm values");
    }
  }

  double p_u() const { return dbm_to_watts(p_u_dbm); }
  double p_t() const { return dbm_to_watts(p_t_dbm); }
  double noise() const { return dbm_to_watts(noise_dbm); }
};

struct Dimensions {
  int antennas = 1;  // N
  int elements = 1;  // M
};

// One block-fading draw: H is N x M (BS-RIS), g has length M (RIS-user).
struct ChannelRealization {
  CMatrix h;
  CVector g;

  int antennas() const { return static_cast<int>(h.rows()); }
  int elements() const { return static_cast<int>(g.size()); }
};

// i.i.d. CN(0, variance) matrix. variance == 0 yields exact zeros.
inline CMatrix sample_noise(int rows, int cols, double variance,
                            RandomStream& rng) {
  if (!(variance >= 0.0)) {
    throw std::domain_error("sample_noise: variance must be non-negative");
  }
  CMatrix z(rows, cols);
  if (variance == 0.0) {
    z.setZero();
    return z;
  }
  // Row-major fill so the draw order is independent of Eigen's storage order.
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) z(r, c) = rng.complex_gaussian(variance);
  }
  return z;
}

// Draws H then g, in that order, from the stream.
inline ChannelRealization sample_channels(const Dimensions& dims,
                                          const Geometry& geometry,
                                          RandomStream& rng) {
  if (dims.antennas < 1 || dims.elements < 1) {
    throw std::invalid_argument("sample_channels: N and M must be >= 1");
  }
  ChannelRealization ch;
  ch.h = sample_noise(dims.antennas, dims.elements, geometry.zeta_h(), rng);
  ch.g = sample_noise(dims.elements, 1, geometry.zeta_g(), rng).col(0);
  return ch;
}

}  // namespace ndris

#endif  // NDRIS_CHANNEL_HPP_

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


#ifndef NDRIS_TYPES_HPP_
#define NDRIS_TYPES_HPP_

#include <complex>

#include <Eigen/Dense>

namespace ndris {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Phase of z with angle(0) := 0.
inline double angle(Complex z) {
  if (z == Complex(0.0, 0.0)) return 0.0;
  return std::arg(z);
}

}  // namespace ndris

#endif  // NDRIS_TYPES_HPP_

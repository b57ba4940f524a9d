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

#ifndef NDRIS_RANDOM_HPP_
#define NDRIS_RANDOM_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ndris {

// SplitMix64 finalizer. Used to turn (master seed, trial index) into
// well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// A seeded stream of Gaussian variates. One stream belongs to exactly one
// trial; streams are never shared between threads.
//
// Sub-stream scheme: trial k of an experiment with master seed s is seeded
// with splitmix64(splitmix64(s) ^ k). The scheme does not depend on the
// order in which trials are executed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    return RandomStream(splitmix64(splitmix64(master_seed) ^ trial));
  }

  double gaussian() { return normal_(engine_); }

  // CN(0, variance): independent real and imaginary parts, each with
  // variance / 2.
  std::complex<double> complex_gaussian(double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ndris

#endif  // NDRIS_RANDOM_HPP_

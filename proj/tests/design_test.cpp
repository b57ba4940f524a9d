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


#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ndris/design.hpp"
#include "ndris/metrics.hpp"
#include "oracles.hpp"

namespace ndris {
namespace {

CVector with_random_phases(const std::vector<double>& mags, RandomStream& rng) {
  CVector v(static_cast<Eigen::Index>(mags.size()));
  for (std::size_t i = 0; i < mags.size(); ++i) v(i) = std::polar(mags[i], 3.0 * rng.gaussian());
  return v;
}

std::vector<double> as_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

TEST(SisoPairingTest, PrintedFourElementExample) {
  RandomStream rng(1);
  // Ascending |g'|: elements 4, 3, 1, 2. Ascending |h'|: elements 2, 3, 4, 1.
  const CVector g = with_random_phases({3.0, 4.0, 2.0, 1.0}, rng);
  const CVector h = with_random_phases({4.0, 1.0, 2.0, 3.0}, rng);
  const PairingDesign d = siso_pairing(g, h);
  EXPECT_EQ(d.source, PairingSource::kSisoSorted);

  Eigen::MatrixXd jr(4, 4);
  jr << 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0;
  Eigen::MatrixXd jt(4, 4);
  jt << 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0;
  EXPECT_EQ(d.mapping, extract_mapping(SwitchConfig::from_dense(jt, jr)));
}

TEST(SisoPairingTest, AlreadyAscendingGivesIdentity) {
  CVector g(4);
  g << 0.1, Complex(0, -0.2), 0.5, -0.9;
  CVector h(4);
  h << 1.0, 2.0, Complex(0, 3.0), 4.0;
  EXPECT_EQ(siso_pairing(g, h).mapping, ElementMapping::identity(4));
}

TEST(SisoPairingTest, LengthMismatch) {
  EXPECT_THROW(siso_pairing(CVector::Ones(3), CVector::Ones(4)), std::invalid_argument);
}

TEST(SisoPairingTest, OptimalAgainstEnumeration) {
  RandomStream rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + trial % 7;
    const CVector g = sample_noise(m, 1, 1.0, rng).col(0);
    const CVector h = sample_noise(m, 1, 1.0, rng).col(0);
    const double gain = pairing_gain(g.cwiseAbs(), h.cwiseAbs(), siso_pairing(g, h).mapping);
    const double best = oracle::best_pairing_gain(as_std(g.cwiseAbs()), as_std(h.cwiseAbs()));
    EXPECT_NEAR(gain, best, 1e-12 * best);
  }
}

TEST(SisoPairingTest, InvariantUnderPositiveScaling) {
  RandomStream rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const CVector g = sample_noise(20, 1, 1.0, rng).col(0);
    const CVector h = sample_noise(20, 1, 1.0, rng).col(0);
    const double alpha = std::exp(4.0 * rng.gaussian());
    const Complex beta = std::polar(std::exp(4.0 * rng.gaussian()), rng.gaussian());
    EXPECT_EQ(siso_pairing(alpha * g, beta * h).mapping, siso_pairing(g, h).mapping);
  }
}

TEST(MisoPairingTest, SingleAntennaReducesToSiso) {
  RandomStream rng(4);
  const CVector g = sample_noise(9, 1, 1.0, rng).col(0);
  const CMatrix h = sample_noise(1, 9, 1.0, rng);
  EXPECT_EQ(miso_pairing(g, h).mapping, siso_pairing(g, h.row(0).transpose()).mapping);
}

TEST(MisoPairingTest, EqualRowsMatchSiso) {
  RandomStream rng(5);
  const CVector g = sample_noise(9, 1, 1.0, rng).col(0);
  const CVector row = sample_noise(9, 1, 1.0, rng).col(0);
  CMatrix h(3, 9);
  for (int n = 0; n < 3; ++n) h.row(n) = row.transpose() * std::polar(1.0, 0.7 * n);
  EXPECT_EQ(miso_pairing(g, h).mapping, siso_pairing(g, row).mapping);
}

TEST(MisoPairingTest, AverageThenSortByHand) {
  RandomStream rng(6);
  const CVector g = sample_noise(4, 1, 1.0, rng).col(0);
  const CMatrix h = sample_noise(2, 4, 1.0, rng);
  // Recompute the averaged magnitudes and both rank orders with plain loops.
  std::vector<double> hbar(4);
  for (int m = 0; m < 4; ++m) hbar[m] = (std::abs(h(0, m)) + std::abs(h(1, m))) / 2.0;
  std::vector<int> rank_g(4, 0);
  std::vector<int> rank_h(4, 0);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rank_g[a] += std::abs(g(b)) < std::abs(g(a));
      rank_h[a] += hbar[b] < hbar[a];
    }
  }
  std::vector<int> expected(4);
  for (int i = 0; i < 4; ++i) {
    for (int m = 0; m < 4; ++m) {
      if (rank_h[m] == rank_g[i]) expected[i] = m;
    }
  }
  const PairingDesign d = miso_pairing(g, h);
  EXPECT_EQ(d.source, PairingSource::kMisoAveraged);
  EXPECT_EQ(d.mapping, ElementMapping(expected));
}

TEST(MisoPairingTest, DimensionMismatch) {
  EXPECT_THROW(miso_pairing(CVector::Ones(3), CMatrix::Ones(2, 4)), std::invalid_argument);
}

TEST(BruteForcePairingTest, TwoElements) {
  RVector g(2);
  g << 1.0, 2.0;
  const PairingDesign d = brute_force_pairing(g, g);
  EXPECT_EQ(d.mapping, ElementMapping::identity(2));
  EXPECT_DOUBLE_EQ(pairing_gain(g, g, d.mapping), 5.0);
  EXPECT_DOUBLE_EQ(pairing_gain(g, g, ElementMapping({1, 0})), 4.0);
}

TEST(BruteForcePairingTest, UniformTieReturnsFirstLexicographic) {
  const RVector ones = RVector::Ones(3);
  EXPECT_EQ(brute_force_pairing(ones, ones).mapping, ElementMapping::identity(3));
  EXPECT_EQ(siso_pairing(CVector::Ones(3), CVector::Ones(3)).mapping,
            ElementMapping::identity(3));
}

TEST(BruteForcePairingTest, AgreesWithSortedPairing) {
  RandomStream rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const CVector g = sample_noise(6, 1, 1.0, rng).col(0);
    const CVector h = sample_noise(6, 1, 1.0, rng).col(0);
    const RVector gm = g.cwiseAbs();
    const RVector hm = h.cwiseAbs();
    EXPECT_EQ(pairing_gain(gm, hm, siso_pairing(g, h).mapping),
              pairing_gain(gm, hm, brute_force_pairing(g, h).mapping));
  }
}

TEST(BruteForcePairingTest, RefusesLargeM) {
  EXPECT_THROW(brute_force_pairing(RVector(RVector::Ones(11)), RVector(RVector::Ones(11))),
               std::length_error);
}

TEST(PassivePhasesTest, RealPositiveGivesOnes) {
  CVector f(3);
  f << 0.5, 2.0, 1e-9;
  EXPECT_LT((passive_phases(f).values() - CVector::Ones(3)).norm(), 1e-15);
}

TEST(PassivePhasesTest, ExactAngles) {
  CVector f(2);
  f << Complex(0.0, 1.0), Complex(-1.0, 0.0);
  const PhaseVector q = passive_phases(f);
  EXPECT_LT(std::abs(q[0] - std::polar(1.0, -std::numbers::pi / 2)), 1e-15);
  EXPECT_LT(std::abs(q[1] - std::polar(1.0, -std::numbers::pi)), 1e-15);
  const Complex combined = q.values().cwiseProduct(f).sum();
  EXPECT_NEAR(combined.real(), 2.0, 1e-15);
  EXPECT_NEAR(combined.imag(), 0.0, 1e-15);
}

TEST(PassivePhasesTest, ZeroEntryUsesZeroPhase) {
  CVector f(2);
  f << Complex(0.0, 0.0), Complex(0.0, -2.0);
  const PhaseVector q = passive_phases(f);
  EXPECT_EQ(q[0], Complex(1.0, 0.0));
}

TEST(PassivePhasesTest, TriangleEqualityAndOptimality) {
  RandomStream rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const CVector f = sample_noise(32, 1, 1.0, rng).col(0);
    const PhaseVector q = passive_phases(f);
    const Complex s = q.values().cwiseProduct(f).sum();
    const double l1 = f.cwiseAbs().sum();
    EXPECT_NEAR(std::abs(s), l1, 1e-12 * l1);
    EXPECT_GE(s.real(), 0.0);
    RVector angles(32);
    for (int m = 0; m < 32; ++m) angles(m) = 3.0 * rng.gaussian();
    const PhaseVector r = PhaseVector::from_angles(angles);
    EXPECT_LE(std::abs(r.values().cwiseProduct(f).sum()), std::abs(s) * (1 + 1e-12));
  }
}

const LinkBudget kBudget{30.0, 40.0, -80.0};

TEST(AlternatingOptimizationTest, SingleAntennaDegenerates) {
  RandomStream rng(9);
  const CMatrix f = sample_noise(1, 16, 1e-8, rng);
  const BeamformingSolution sol = alternating_optimization(f, kBudget, 1.0, {}, rng);
  EXPECT_EQ(sol.iterations, 1);
  EXPECT_TRUE(sol.converged);
  EXPECT_LT((sol.q.values() - passive_phases(f.row(0).transpose()).values()).norm(), 1e-14);
  EXPECT_LT(std::abs(sol.w(0) - Complex(1.0, 0.0)), 1e-14);
}

TEST(AlternatingOptimizationTest, ConstraintsAndMonotoneTrace) {
  RandomStream rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const CMatrix f = sample_noise(4, 64, 1e-8, rng);
    const BeamformingSolution sol = alternating_optimization(f, kBudget, 0.9, {}, rng);
    ASSERT_EQ(static_cast<int>(sol.objective_trace.size()), sol.iterations);
    for (std::size_t k = 1; k < sol.objective_trace.size(); ++k) {
      EXPECT_GE(sol.objective_trace[k], sol.objective_trace[k - 1]);
    }
    EXPECT_NEAR(sol.w.norm(), 1.0, 1e-12);
    for (int m = 0; m < 64; ++m) EXPECT_NEAR(std::abs(sol.q[m]), 1.0, 1e-12);
    const double gain = std::norm((f * sol.q.values()).cwiseProduct(sol.w).sum());
    EXPECT_NEAR(gain, sol.gain, 1e-12 * gain);
  }
}

TEST(AlternatingOptimizationTest, NearBestOfRandomRestarts) {
  RandomStream rng(11);
  const CMatrix f = sample_noise(4, 64, 1e-8, rng);
  const BeamformingSolution single = alternating_optimization(f, kBudget, 1.0, {}, rng);
  double best = 0.0;
  for (int restart = 0; restart < 100; ++restart) {
    best = std::max(best, alternating_optimization(f, kBudget, 1.0, {}, rng).gain);
  }
  EXPECT_GE(single.gain, 0.99 * best);
}

TEST(AlternatingOptimizationTest, ZeroChannelThrows) {
  RandomStream rng(12);
  EXPECT_THROW(alternating_optimization(CMatrix::Zero(2, 3), kBudget, 1.0, {}, rng),
               std::domain_error);
}

TEST(AlternatingOptimizationTest, IterationCapRespected) {
  RandomStream rng(13);
  const CMatrix f = sample_noise(4, 64, 1e-8, rng);
  const BeamformingSolution sol = alternating_optimization(f, kBudget, 1.0, {3, 0.0}, rng);
  EXPECT_LE(sol.iterations, 3);
  EXPECT_THROW(alternating_optimization(f, kBudget, 1.0, {0, 1e-8}, rng), std::invalid_argument);
}

// With the identity pairing forced, the optimizer runs a conventional
// diagonal RIS; in SISO the sorted pairing can only do better.
TEST(AlternatingOptimizationTest, DiagonalReductionAndPairingGain) {
  RandomStream rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix h = sample_noise(1, 32, 1.0, rng);
    const CVector g = sample_noise(32, 1, 1.0, rng).col(0);
    const SwitchConfig diag = permutation_from_mapping(ElementMapping::identity(32));
    const SwitchConfig sorted =
        permutation_from_mapping(siso_pairing(g, h.row(0).transpose()).mapping);
    const auto diag_sol =
        alternating_optimization(effective_cascade(h, g, diag), kBudget, 1.0, {}, rng);
    const auto sorted_sol =
        alternating_optimization(effective_cascade(h, g, sorted), kBudget, 1.0, {}, rng);
    // Diagonal optimum is (sum_m |h_m g_m|)^2.
    const double diag_expected =
        std::pow(h.row(0).transpose().cwiseAbs().cwiseProduct(g.cwiseAbs()).sum(), 2);
    EXPECT_NEAR(diag_sol.gain, diag_expected, 1e-12 * diag_expected);
    EXPECT_GE(sorted_sol.gain, diag_sol.gain);
  }
}

}  // namespace
}  // namespace ndris

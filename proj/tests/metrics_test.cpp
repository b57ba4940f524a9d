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
#include <limits>

#include <gtest/gtest.h>

#include "ndris/metrics.hpp"
#include "oracles.hpp"

namespace ndris {
namespace {

TEST(ReceivedPowerTest, ScalarCascade) {
  CMatrix h(1, 1);
  h << Complex(0.3, -0.1);
  CVector g(1);
  g << Complex(-2.0, 0.5);
  const SwitchConfig cfg = permutation_from_mapping(ElementMapping::identity(1));
  const double p = received_power(PhaseVector::ones(1), cfg, h, g, CVector::Ones(1), 10.0);
  EXPECT_NEAR(p, 10.0 * std::norm(h(0, 0) * g(0)), 1e-15);
}

TEST(ReceivedPowerTest, AgreesWithScatteringMatrixPath) {
  RandomStream rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 10;
    const int n = 1 + trial % 4;
    const CMatrix h = sample_noise(n, m, 1.0, rng);
    const CVector g = sample_noise(m, 1, 1.0, rng).col(0);
    const SwitchConfig cfg = SwitchConfig::permutation_pair(oracle::random_permutation(m, rng),
                                                            oracle::random_permutation(m, rng));
    RVector angles(m);
    for (int i = 0; i < m; ++i) angles(i) = 3.0 * rng.gaussian();
    const PhaseVector q = PhaseVector::from_angles(angles);
    const CVector w = random_unit_vector(n, rng);
    const double p6 = received_power(q, cfg, h, g, w, 2.0);
    const double p3 = oracle::eq3_power(
        oracle::dense_theta(cfg.dense_jt(), q.values(), cfg.dense_jr()), h, g, w, 2.0);
    EXPECT_NEAR(p6, p3, 1e-12 * p3);
    EXPECT_NEAR(received_power_theta(build_theta(cfg, q), h, g, w, 2.0), p3, 1e-12 * p3);
  }
}

TEST(ReceivedPowerTest, OptimalPhasesGiveSquaredPairedSum) {
  RandomStream rng(2);
  const CMatrix h = sample_noise(1, 12, 1.0, rng);
  const CVector g = sample_noise(12, 1, 1.0, rng).col(0);
  const ElementMapping mapping(oracle::random_permutation(12, rng));
  const SwitchConfig cfg = permutation_from_mapping(mapping);
  const PhaseVector q = passive_phases(effective_cascade(h, g, cfg).row(0).transpose());
  double paired = 0.0;
  for (int i = 0; i < 12; ++i) paired += std::abs(g(i)) * std::abs(h(0, mapping[i]));
  const double p = received_power(q, cfg, h, g, CVector::Ones(1), 3.0);
  EXPECT_NEAR(p, 3.0 * paired * paired, 1e-12 * p);
}

TEST(ReceivedPowerTest, InvariantToRealizationOfSamePairing) {
  RandomStream rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 8;
    const CMatrix h = sample_noise(1, m, 1.0, rng);
    const CVector g = sample_noise(m, 1, 1.0, rng).col(0);
    const ElementMapping mapping(oracle::random_permutation(m, rng));
    const SwitchConfig canonical = permutation_from_mapping(mapping);
    // Another pair with the same composition: any J_t, then J_r to match.
    const std::vector<int> jt = oracle::random_permutation(m, rng);
    const ElementMapping inv = mapping.inverse();
    std::vector<int> jr(m);
    for (int k = 0; k < m; ++k) jr[k] = inv[jt[k]];
    const SwitchConfig other = SwitchConfig::permutation_pair(jt, jr);
    ASSERT_EQ(extract_mapping(other), mapping);

    auto optimal_power = [&](const SwitchConfig& cfg) {
      const PhaseVector q = passive_phases(effective_cascade(h, g, cfg).row(0).transpose());
      return received_power(q, cfg, h, g, CVector::Ones(1), 1.0);
    };
    const double a = optimal_power(canonical);
    EXPECT_NEAR(optimal_power(other), a, 1e-12 * a);
  }
}

TEST(ReceivedPowerTest, DimensionChecks) {
  const SwitchConfig cfg = permutation_from_mapping(ElementMapping::identity(3));
  EXPECT_THROW(received_power(PhaseVector::ones(3), cfg, CMatrix::Ones(2, 3), CVector::Ones(3),
                              CVector::Ones(3), 1.0),
               std::invalid_argument);
  EXPECT_THROW(received_power(PhaseVector::ones(3), stage1_switch(3), CMatrix::Ones(1, 3),
                              CVector::Ones(3), CVector::Ones(1), 1.0),
               std::invalid_argument);
}

TEST(SpectralEfficiencyTest, Values) {
  EXPECT_DOUBLE_EQ(spectral_efficiency(1e-11, 1e-11, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(spectral_efficiency(5.0, 1e-11, 0.0), 0.0);
  EXPECT_THROW(spectral_efficiency(1.0, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(spectral_efficiency(1.0, -1.0, 1.0), std::domain_error);
}

TEST(PilotSlotCountTest, PerScheme) {
  EXPECT_EQ(pilot_slot_count(Scheme::kNonDiagonal, 64), 192);
  EXPECT_EQ(pilot_slot_count(Scheme::kExhaustive, 64), 4096);
  EXPECT_EQ(pilot_slot_count(Scheme::kDiagonal, 64), 64);
  EXPECT_THROW(pilot_slot_count(Scheme::kDiagonal, 0), std::invalid_argument);
}

TEST(OverheadModelTest, PrelogAndEstimationTime) {
  const OverheadModel o{1e-5, 1e-2};
  EXPECT_NEAR(o.prelog(Scheme::kNonDiagonal, 64), 1.0 - 192e-3, 1e-15);
  EXPECT_NEAR(o.prelog(Scheme::kDiagonal, 64), 1.0 - 64e-3, 1e-15);
  EXPECT_NEAR(o.estimation_time(Scheme::kDiagonal, 64), 64 * 1e-5, 1e-18);
  EXPECT_NEAR(o.estimation_time(Scheme::kNonDiagonal, 64), 3 * 64 * 1e-5, 1e-18);
  EXPECT_GT(o.prelog(Scheme::kDiagonal, 64), o.prelog(Scheme::kNonDiagonal, 64));
  EXPECT_THROW(o.prelog(Scheme::kExhaustive, 64), std::domain_error);
  // All-pilot coherence block.
  const OverheadModel full{1.0 / 192.0, 1.0};
  EXPECT_NEAR(full.prelog(Scheme::kNonDiagonal, 64), 0.0, 1e-15);
}

TEST(OverheadModelTest, SpectralEfficiencyNonIncreasingInRatio) {
  double prev = std::numeric_limits<double>::infinity();
  for (double ratio = 0.0; ratio <= 1.0 / 192.0; ratio += 1.0 / 1920.0) {
    const OverheadModel o{ratio, 1.0};
    const double se = spectral_efficiency(1e-6, 1e-11, o.prelog(Scheme::kNonDiagonal, 64));
    EXPECT_LE(se, prev);
    prev = se;
  }
}

TEST(SchemeTest, Names) {
  for (Scheme s : {Scheme::kNonDiagonal, Scheme::kDiagonal, Scheme::kExhaustive}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_EQ(parse_scheme("nondiagonal-3stage"), Scheme::kNonDiagonal);
  EXPECT_EQ(parse_scheme("exhaustive-reference"), Scheme::kExhaustive);
  EXPECT_THROW(parse_scheme("bd-ris"), std::invalid_argument);
}

TEST(MappingAccuracyTest, Values) {
  EXPECT_DOUBLE_EQ(mapping_accuracy(ElementMapping({2, 0, 1}), ElementMapping({2, 0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(mapping_accuracy(ElementMapping({1, 0}), ElementMapping::identity(2)), 0.0);
  EXPECT_DOUBLE_EQ(mapping_accuracy(ElementMapping({0, 2, 1, 3}), ElementMapping::identity(4)),
                   0.5);
  EXPECT_THROW(mapping_accuracy(ElementMapping::identity(2), ElementMapping::identity(3)),
               std::invalid_argument);
}

TEST(RankPairsTest, PerfectMappingOnDiagonal) {
  RandomStream rng(4);
  const CVector g = sample_noise(16, 1, 1.0, rng).col(0);
  const CVector h = sample_noise(16, 1, 1.0, rng).col(0);
  const ElementMapping best = siso_pairing(g, h).mapping;
  for (const auto& [true_rank, est_rank] : rank_pairs(best, g.cwiseAbs(), h.cwiseAbs())) {
    EXPECT_EQ(true_rank, est_rank);
  }
  const auto swapped = rank_pairs(ElementMapping::identity(16), g.cwiseAbs(), h.cwiseAbs());
  int off = 0;
  for (const auto& [t, e] : swapped) off += t != e;
  EXPECT_GT(off, 0);
}

}  // namespace
}  // namespace ndris

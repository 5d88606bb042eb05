// Copyright 2026 The cvsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvsense/analytic.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cvsense/cluster.hpp"
#include "cvsense/errors.hpp"
#include "hand_oracle.hpp"

namespace cvsense {
namespace {

using testing::printed_cluster;
using testing::printed_two_mode;

TEST(Analytic, TwoModeClosedFormMatchesHandTranscription) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    EprParams p;
    p.r1 = 2.0 * u(rng);
    p.r2 = 2.0 * u(rng);
    p.r3 = p.r4 = 5.0 * u(rng);
    p.eta1 = 0.05 + 0.95 * u(rng);
    p.eta2 = 0.05 + 0.95 * u(rng);
    p.beta1 = 10.0 * u(rng) - 5.0;
    p.beta2 = 10.0 * u(rng) + 5.5;
    p.theta = 0.01 + 0.1 * u(rng);
    p.sign = i % 2 == 0 ? JointSign::kPlus : JointSign::kMinus;
    const double hand = printed_two_mode(p.r1, p.r2, p.r3, p.eta1, p.eta2, p.beta1, p.beta2,
                                         p.theta, p.sign == JointSign::kPlus);
    EXPECT_EQ(epr_sensitivity_as_printed(p), hand) << "point " << i;
  }
}

TEST(Analytic, ClusterClosedFormsMatchHandTranscription) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    ClusterParams p;
    p.r = 1.5 * u(rng);
    p.r_prime = 4.0 * u(rng);
    for (double& e : p.eta) e = 0.05 + 0.95 * u(rng);
    p.beta1 = 4.0 * u(rng);
    p.beta2 = 4.0 * u(rng);
    p.alpha2 = 4.0 * u(rng);
    p.alpha3 = 4.0 * u(rng);
    p.beta4 = 4.0 * u(rng) + 4.1;
    p.theta = 0.01 + 0.1 * u(rng);
    for (int k = 1; k <= 4; ++k) {
      const double hand =
          printed_cluster(k, p.r, p.r_prime, p.eta[0], p.eta[1], p.eta[2], p.eta[3], p.beta1,
                          p.beta2, p.alpha2, p.alpha3, p.beta4, p.theta);
      EXPECT_EQ(cluster_sensitivity_as_printed(k, p, VacuumIndexPattern::kAsPrinted), hand)
          << "point " << i << " phase " << k;
    }
  }
}

TEST(Analytic, CorrectedPatternOnlyChangesPhaseTwo) {
  ClusterParams p{.r = 1.0, .r_prime = 3.0, .eta = {0.9, 0.3, 0.6, 0.8}, .beta1 = 1.0,
                  .beta2 = 2.0, .alpha2 = 1.0, .alpha3 = 2.0, .beta4 = 3.0, .theta = 0.02};
  for (int k : {1, 3, 4}) {
    EXPECT_EQ(cluster_sensitivity_as_printed(k, p, VacuumIndexPattern::kAsPrinted),
              cluster_sensitivity_as_printed(k, p, VacuumIndexPattern::kCorrected));
  }
  EXPECT_NE(cluster_sensitivity_as_printed(2, p, VacuumIndexPattern::kAsPrinted),
            cluster_sensitivity_as_printed(2, p, VacuumIndexPattern::kCorrected));
  // With eta1 == eta4 the two index sets coincide.
  p.eta[3] = p.eta[0];
  EXPECT_DOUBLE_EQ(cluster_sensitivity_as_printed(2, p, VacuumIndexPattern::kAsPrinted),
                   cluster_sensitivity_as_printed(2, p, VacuumIndexPattern::kCorrected));
}

TEST(Analytic, PhasesThreeAndFourAgreeUnderSymmetricLossWhenBeta4Vanishes) {
  ClusterParams p{.r = 0.8, .r_prime = 2.0, .eta = {0.7, 0.7, 0.7, 0.7}, .beta1 = 1.0,
                  .beta2 = 2.0, .alpha2 = 1.0, .alpha3 = 2.0, .beta4 = 0.0, .theta = 0.03};
  EXPECT_DOUBLE_EQ(cluster_sensitivity_as_printed(3, p), cluster_sensitivity_as_printed(4, p));
}

TEST(Analytic, DegenerateDenominators) {
  EprParams p{.r1 = 1.0, .r2 = 1.0, .beta1 = 2.0, .beta2 = 2.0, .theta = 0.02,
              .sign = JointSign::kMinus};
  EXPECT_THROW(epr_sensitivity_as_printed(p), DegenerateEstimator);
  p.sign = JointSign::kPlus;
  p.theta = 0.0;
  EXPECT_THROW(epr_sensitivity_as_printed(p), DegenerateEstimator);
  EXPECT_THROW(cluster_sensitivity_as_printed(5, ClusterParams{}), std::invalid_argument);
  EXPECT_THROW(cluster_sensitivity_as_printed(1, ClusterParams{}), DegenerateEstimator);
}

TEST(Analytic, CorrelationHelper) {
  const EprCorrelations c = epr_correlation_variance(1.0, 0.5);
  EXPECT_DOUBLE_EQ(c.x_difference, std::exp(-1.0));
  EXPECT_DOUBLE_EQ(c.y_sum, std::exp(-2.0));
}

TEST(Analytic, NullifierPrefactorsMatchState) {
  for (double r : {0.0, 0.5, 1.0}) {
    const std::array<double, 4> rs{r, r, r, r};
    const GaussianState s = build_cluster(rs, ClusterParams{});
    for (const NullifierSpec& spec : nullifier_specs()) {
      const double expected = nullifier_variance_as_printed(spec.k, rs);
      EXPECT_NEAR(nullifier_check(s, spec), expected, 1e-10) << "k=" << spec.k << " r=" << r;
      EXPECT_NEAR(expected, 3.0 * std::exp(-2.0 * r), 1e-12);
    }
  }
}

TEST(Analytic, NullifierPrefactorsWithUnequalSqueezing) {
  const std::array<double, 4> rs{0.3, 0.9, 1.4, 0.6};
  const GaussianState s = build_cluster(rs, ClusterParams{});
  for (const NullifierSpec& spec : nullifier_specs()) {
    EXPECT_NEAR(nullifier_check(s, spec), nullifier_variance_as_printed(spec.k, rs), 1e-10);
  }
}

TEST(Analytic, ShotNoiseReferenceDropsInputSqueezing) {
  EprParams p{.r1 = 1.0, .r2 = 1.0, .r3 = 4.6, .r4 = 4.6, .beta1 = 1.0, .beta2 = 5.0,
              .theta = degrees(1.5)};
  EprParams snl = p;
  snl.r1 = snl.r2 = 0.0;
  const EprSensitivity s = epr_sensitivity(snl, LossConvention::kPhysical);
  EXPECT_DOUBLE_EQ(snl_reference(p, LossConvention::kPhysical), s.average);
}

TEST(Analytic, DiscrepancyReportIsPopulated) {
  EprParams epr{.r1 = 1.0, .r2 = 1.0, .r3 = 4.6, .r4 = 4.6, .beta1 = 1.0, .beta2 = 5.0,
                .theta = degrees(1.5)};
  ClusterParams cl{.r = 1.0, .r_prime = 3.0, .eta = {0.5, 0.5, 0.5, 0.5}, .beta1 = 1.0,
                   .beta2 = 2.0, .alpha2 = 1.0, .alpha3 = 2.0, .beta4 = 3.0,
                   .theta = degrees(1.5)};
  const auto report = discrepancy_report(epr, cl);
  ASSERT_GE(report.size(), 4u);
  bool saw_denominator = false;
  bool saw_indices = false;
  for (const Discrepancy& d : report) {
    saw_denominator |= d.topic.find("denominator") != std::string::npos;
    saw_indices |= d.topic.find("vacuum indices") != std::string::npos;
  }
  EXPECT_TRUE(saw_denominator);
  EXPECT_TRUE(saw_indices);
  const std::string text = format_report(report);
  EXPECT_NE(text.find("denominator"), std::string::npos);
}

}  // namespace
}  // namespace cvsense

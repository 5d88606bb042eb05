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

#include "cvsense/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cvsense/errors.hpp"
#include "hand_oracle.hpp"

namespace cvsense {
namespace {

ClusterParams surface_params() {
  ClusterParams p;
  p.r = 1.0;
  p.r_prime = 3.0;
  p.beta1 = 1.0;
  p.beta2 = 2.0;
  p.alpha2 = 1.0;
  p.alpha3 = 2.0;
  p.beta4 = 3.0;
  p.theta = degrees(1.5);
  return p;
}

TEST(Cluster, NetworkIsUnitary) {
  EXPECT_LE(unitarity_deviation(square_cluster_unitary()), 1e-12);
}

TEST(Cluster, NullifierVarianceAtUnitSqueezing) {
  ClusterParams p = surface_params();
  const GaussianState s = build_cluster(p);
  for (const NullifierSpec& spec : nullifier_specs()) {
    EXPECT_NEAR(nullifier_check(s, spec), 0.40600584970983844, 1e-12) << "k=" << spec.k;
  }
}

TEST(Cluster, NullifierSpecsAreConsistent) {
  for (int k = 1; k <= 4; ++k) {
    const NullifierSpec& spec = nullifier_spec(k);
    EXPECT_EQ(spec.k, k);
    EXPECT_NEAR(spec.printed_coefficients[0] * spec.printed_coefficients[0] +
                    spec.printed_coefficients[1] * spec.printed_coefficients[1],
                3.0, 1e-12);
  }
  EXPECT_THROW(nullifier_spec(0), std::invalid_argument);
  EXPECT_THROW(nullifier_spec(5), std::invalid_argument);
}

TEST(Cluster, OpaLayout) {
  const auto cfg = opa_configuration(3);
  ASSERT_EQ(cfg.size(), 3u);
  EXPECT_EQ(cfg[0].mode, 2u);
  EXPECT_EQ(cfg[0].amplified, Quadrature::kY);
  EXPECT_EQ(cfg[1].amplified, Quadrature::kX);
  EXPECT_EQ(cfg[2].amplified, Quadrature::kX);
}

TEST(Cluster, ReadoutLayout) {
  const HomodyneReadout r = cluster_readout(2, surface_params());
  ASSERT_EQ(r.terms.size(), 3u);
  EXPECT_EQ(r.terms[0].mode, 1u);
  EXPECT_EQ(r.terms[0].coefficient, 1.0);
  EXPECT_EQ(r.terms[1].coefficient, -1.0);
  EXPECT_EQ(r.terms[1].phi, 0.0);
}

TEST(Cluster, MatchesHandOracleAtRandomPoints) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    ClusterParams p;
    p.r = 1.5 * u(rng);
    p.r_prime = 4.0 * u(rng);
    for (double& e : p.eta) e = 0.05 + 0.95 * u(rng);
    p.beta1 = 4.0 * u(rng) - 2.0;
    p.beta2 = 4.0 * u(rng) - 2.0;
    p.alpha2 = 4.0 * u(rng) - 2.0;
    p.alpha3 = 4.0 * u(rng) - 2.0;
    p.beta4 = 4.0 * u(rng) - 2.0;
    p.theta = 0.2 * u(rng) - 0.1;
    const std::array<double, 4> alpha{0.0, p.alpha2, p.alpha3, 0.0};
    const std::array<double, 4> beta{p.beta1, p.beta2, 0.0, p.beta4};
    for (int k = 1; k <= 4; ++k) {
      const double hand =
          testing::hand_cluster_sigma(k, p.r, p.r_prime, p.eta, alpha, beta, p.theta);
      const double lib = phase_sensitivity(k, p, LossConvention::kPhysical).sigma;
      EXPECT_NEAR(lib / hand, 1.0, 1e-10) << "point " << i << " phase " << k;
    }
  }
}

TEST(Cluster, RegressionConstants) {
  const ClusterParams p = surface_params();
  const double expected[4] = {9.23666926367098, 19.942036248418827, 9.032658761322258,
                              15.7116506585805};
  for (int k = 1; k <= 4; ++k) {
    EXPECT_NEAR(phase_sensitivity(k, p, LossConvention::kPhysical).sigma, expected[k - 1],
                1e-9) << "phase " << k;
  }
  ClusterParams fig4 = p;
  fig4.alpha2 = 0.0;
  fig4.beta4 = 0.0;
  EXPECT_NEAR(phase_sensitivity(1, fig4, LossConvention::kPhysical).sigma, 9.342829216410333,
              1e-9);
  EXPECT_NEAR(phase_sensitivity(1, with_variant(fig4, Variant::kWithoutOpa),
                                LossConvention::kPhysical).sigma,
              9.516110016299768, 1e-9);
  EXPECT_NEAR(snl_reference(ClusterTarget::phase(1), fig4, LossConvention::kPhysical),
              25.39644001792298, 1e-9);
}

TEST(Cluster, MirrorSymmetryBetweenPhasesOneAndTwo) {
  ClusterParams p = surface_params();
  p.eta = {0.9, 0.4, 0.7, 0.6};
  ClusterParams q = p;
  q.beta1 = -p.beta1;
  std::swap(q.eta[0], q.eta[1]);
  EXPECT_NEAR(phase_sensitivity(1, p, LossConvention::kPhysical).sigma,
              phase_sensitivity(2, q, LossConvention::kPhysical).sigma, 1e-10);
}

TEST(Cluster, AverageIsArithmeticMean) {
  const ClusterParams p = surface_params();
  double sum = 0.0;
  for (int k = 1; k <= 4; ++k) sum += phase_sensitivity(k, p, LossConvention::kPhysical).sigma;
  EXPECT_DOUBLE_EQ(average_sensitivity(p, LossConvention::kPhysical), 0.25 * sum);
  EXPECT_DOUBLE_EQ(target_sensitivity(ClusterTarget::average(), p, LossConvention::kPhysical),
                   average_sensitivity(p, LossConvention::kPhysical));
}

TEST(Cluster, ZeroDisplacementIsDegenerate) {
  ClusterParams p;
  p.r = 1.0;
  p.theta = 0.02;
  for (int k = 1; k <= 4; ++k) {
    EXPECT_THROW(phase_sensitivity(k, p, LossConvention::kPhysical), DegenerateEstimator);
  }
  EXPECT_THROW(phase_sensitivity(0, surface_params(), LossConvention::kPhysical),
               std::invalid_argument);
  EXPECT_THROW(ClusterTarget::phase(5), std::invalid_argument);
}

TEST(Cluster, LossKeepsPhaseStatesPhysical) {
  ClusterParams p = surface_params();
  p.eta = {0.1, 0.5, 0.9, 0.3};
  for (int k = 1; k <= 4; ++k) {
    EXPECT_TRUE(validate(cluster_phase_state(k, p, LossConvention::kPhysical)).physical);
  }
}

TEST(ClusterSweep, TwoDimensionalRowsMatchPointEvaluation) {
  ClusterScenario sc;
  sc.params = surface_params();
  sc.params.eta = {0.5, 0.5, 0.5, 0.5};
  sc.losses = loss_grid(0.0, 0.9, 0.3);
  sc.axes = {1, 3};
  const auto rows = sweep_cluster_2d(sc);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(rows[1].loss1, 0.0);
  EXPECT_DOUBLE_EQ(rows[1].loss2, 0.3);
  for (const auto& row : rows) {
    ClusterParams p = sc.params;
    p.eta[1] = 1.0 - row.loss1;
    p.eta[3] = 1.0 - row.loss2;
    ASSERT_TRUE(row.with_opa.has_value());
    EXPECT_DOUBLE_EQ(*row.with_opa, average_sensitivity(p, LossConvention::kPhysical));
  }
  sc.axes = {2, 2};
  EXPECT_THROW(sweep_cluster_2d(sc), std::invalid_argument);
}

TEST(ClusterSweep, SurfaceOptimumIsInterior) {
  ClusterScenario sc;
  sc.params = surface_params();
  sc.params.eta = {1.0, 1.0, 0.5, 0.5};
  sc.losses = loss_grid(0.0, 0.95, 0.05);
  sc.axes = {0, 1};
  const auto rows = sweep_cluster_2d(sc);
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return *a.with_opa < *b.with_opa;
  });
  EXPECT_GT(best->loss1, 0.0);
  EXPECT_LT(best->loss1, 0.95);
  EXPECT_GT(best->loss2, 0.0);
  EXPECT_LT(best->loss2, 0.95);
}

TEST(ClusterSweep, PhaseOneWithoutAmplifierCrossesShotNoise) {
  ClusterScenario sc;
  sc.params = surface_params();
  sc.params.alpha2 = 0.0;
  sc.params.beta4 = 0.0;
  sc.target = ClusterTarget::phase(1);
  sc.losses = loss_grid(0.0, 0.95, 0.05);
  const auto rows = sweep_cluster_1d(sc);
  EXPECT_LT(*rows.front().without_opa, *rows.front().snl);
  EXPECT_GT(*rows.back().without_opa, *rows.back().snl);
  // With the amplifier the estimate stays below shot noise everywhere.
  for (const auto& row : rows) EXPECT_LT(*row.with_opa, *row.snl);
}

}  // namespace
}  // namespace cvsense

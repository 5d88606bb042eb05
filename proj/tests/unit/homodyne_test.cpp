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

#include "cvsense/homodyne.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cvsense/errors.hpp"

namespace cvsense {
namespace {

GaussianState random_state(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GaussianState s = vacuum(n);
  for (std::size_t m = 0; m < n; ++m) {
    s = squeeze(s, m, 1.5 * std::abs(u(rng)), u(rng) > 0 ? Quadrature::kX : Quadrature::kY);
    s = displace(s, m, 3.0 * u(rng), 3.0 * u(rng));
  }
  for (std::size_t m = 0; m + 1 < n; ++m) s = beam_splitter(s, m, m + 1, 0.5 * (u(rng) + 1.0));
  for (std::size_t m = 0; m < n; ++m) s = loss(s, m, 0.5 * (u(rng) + 1.0));
  return s;
}

HomodyneReadout random_readout(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HomodyneReadout r;
  for (std::size_t m = 0; m < n; ++m) {
    r.terms.push_back({m, u(rng) > 0 ? 1.0 : -1.0, 0.1 * u(rng), std::numbers::pi * u(rng)});
  }
  return r;
}

TEST(Homodyne, ReadoutVectorSingleTerm) {
  HomodyneReadout r{{{1, 2.0, 0.0, std::numbers::pi / 2}}, 3.0};
  const Eigen::VectorXd w = readout_vector(r, 2);
  ASSERT_EQ(w.size(), 4);
  EXPECT_NEAR(w(1), 0.0, 1e-15);
  EXPECT_NEAR(w(3), 6.0, 1e-15);
  EXPECT_EQ(w(0), 0.0);
  EXPECT_EQ(w(2), 0.0);
}

TEST(Homodyne, ReadoutVectorValidation) {
  EXPECT_THROW(readout_vector(HomodyneReadout{}, 2), std::invalid_argument);
  EXPECT_THROW(readout_vector(HomodyneReadout{{{2, 1.0, 0.0, 0.0}}, 1.0}, 2),
               std::invalid_argument);
  EXPECT_THROW(readout_vector(HomodyneReadout{{{0, 1.0, 0.0, 0.0}, {0, 1.0, 0.0, 0.0}}, 1.0}, 2),
               std::invalid_argument);
  EXPECT_THROW(readout_vector(HomodyneReadout{{{0, 1.0, 0.0, 0.0}}, 0.0}, 2),
               std::invalid_argument);
}

TEST(Homodyne, MomentsOfCoherentState) {
  const GaussianState s = displace(vacuum(1), 0, 2.0, 1.0);
  const HomodyneReadout r{{{0, 1.0, 0.0, 0.0}}, 1.0};
  const EstimatorMoments m = estimator_moments(s, r);
  EXPECT_DOUBLE_EQ(m.mean, 2.0);
  EXPECT_DOUBLE_EQ(m.variance, 1.0);
}

TEST(Homodyne, CoherentStateSensitivityIsShotNoiseLimited) {
  // Phase quadrature readout at theta: slope -2 sin(theta), sigma = 1/(2 |sin theta|).
  const double theta = 0.3;
  const GaussianState s = displace(vacuum(1), 0, 0.0, 2.0);
  const HomodyneReadout r{{{0, 1.0, theta, std::numbers::pi / 2}}, 1.0};
  const std::array<std::size_t, 1> terms{0};
  const SensitivityResult res = sensitivity(s, r, terms, SlopeMethod::kAnalytic);
  EXPECT_NEAR(res.sigma, 1.0 / (2.0 * std::sin(theta)), 1e-12);
}

TEST(Homodyne, ZeroSlopeIsDegenerate) {
  const GaussianState s = vacuum(1);
  const HomodyneReadout r{{{0, 1.0, 0.1, 0.0}}, 1.0};
  const std::array<std::size_t, 1> terms{0};
  EXPECT_THROW(sensitivity(s, r, terms, SlopeMethod::kAnalytic), DegenerateEstimator);
  EXPECT_THROW(sensitivity(s, r, terms, SlopeMethod::kFiniteDifference), DegenerateEstimator);
  EXPECT_THROW(sensitivity(s, r, terms, SlopeMethod::kMonteCarlo), std::invalid_argument);
}

TEST(Homodyne, MeanIsLinearInReadoutCoefficients) {
  std::mt19937_64 rng(5);
  const GaussianState s = random_state(rng, 3);
  HomodyneReadout a = random_readout(rng, 3);
  HomodyneReadout doubled = a;
  for (auto& t : doubled.terms) t.coefficient *= 2.0;
  EXPECT_NEAR(estimator_moments(s, doubled).mean, 2.0 * estimator_moments(s, a).mean, 1e-12);
  EXPECT_NEAR(estimator_moments(s, doubled).variance, 4.0 * estimator_moments(s, a).variance,
              1e-10);
}

TEST(Homodyne, LocalOscillatorScaleCancels) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianState s = random_state(rng, 2);
    HomodyneReadout r = random_readout(rng, 2);
    const std::array<std::size_t, 1> terms{0};
    const double base = sensitivity(s, r, terms, SlopeMethod::kAnalytic).sigma;
    r.lo_scale = 1e3;
    const double scaled = sensitivity(s, r, terms, SlopeMethod::kAnalytic).sigma;
    EXPECT_LE(std::abs(scaled - base) / base, 1e-12);
  }
}

TEST(Homodyne, AnalyticSlopeMatchesFiniteDifference) {
  std::mt19937_64 rng(2026);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 1 + static_cast<std::size_t>(checked % 4);
    const GaussianState s = random_state(rng, n);
    const HomodyneReadout r = random_readout(rng, n);
    std::vector<std::size_t> terms{0};
    if (n > 1 && checked % 2 == 0) terms.push_back(n - 1);
    const auto a = sensitivity(s, r, terms, SlopeMethod::kAnalytic);
    const auto f = sensitivity(s, r, terms, SlopeMethod::kFiniteDifference);
    if (std::abs(a.slope) < 1e-3) continue;  // too flat to compare relative differences
    EXPECT_LE(std::abs(a.slope - f.slope) / std::abs(a.slope), 1e-6) << "case " << checked;
    EXPECT_LE(std::abs(a.sigma - f.sigma) / a.sigma, 1e-6) << "case " << checked;
    ++checked;
  }
}

TEST(Homodyne, BuilderFormMatchesPhaseOnState) {
  // Rotating the mode by theta is the same as rotating the detection angle.
  const GaussianState s0 = squeeze(displace(vacuum(1), 0, 3.0, 0.5), 0, 0.4, Quadrature::kY);
  const double theta0 = 0.2;
  const double phi = std::numbers::pi / 2;
  const SensitivityResult via_state = sensitivity(
      [&](double t) { return phase_shift(s0, 0, -t); },
      [&](double) { return HomodyneReadout{{{0, 1.0, 0.0, phi}}, 1.0}; }, theta0);
  const std::array<std::size_t, 1> terms{0};
  const SensitivityResult via_readout =
      sensitivity(s0, HomodyneReadout{{{0, 1.0, theta0, phi}}, 1.0}, terms,
                  SlopeMethod::kAnalytic);
  EXPECT_NEAR(via_state.sigma / via_readout.sigma, 1.0, 1e-6);
}

TEST(Homodyne, SampledMomentsAgreeWithinStandardErrors) {
  std::mt19937_64 rng(77);
  const GaussianState s = random_state(rng, 2);
  const HomodyneReadout r = random_readout(rng, 2);
  const EstimatorMoments exact = estimator_moments(s, r);
  const SampledMoments m = sample_currents(s, r, 200000, 1234);
  EXPECT_EQ(m.n_samples, 200000u);
  EXPECT_LE(std::abs(m.mean - exact.mean), 5.0 * m.mean_stderr);
  EXPECT_LE(std::abs(m.variance - exact.variance), 5.0 * m.variance_stderr);
}

TEST(Homodyne, SamplingIsDeterministicPerSeed) {
  const GaussianState s = squeeze(vacuum(1), 0, 0.5, Quadrature::kX);
  const HomodyneReadout r{{{0, 1.0, 0.0, 0.0}}, 1.0};
  const SampledMoments a = sample_currents(s, r, 1000, 42);
  const SampledMoments b = sample_currents(s, r, 1000, 42);
  const SampledMoments c = sample_currents(s, r, 1000, 43);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_NE(a.mean, c.mean);
  EXPECT_THROW(sample_currents(s, r, 1, 42), std::invalid_argument);
}

TEST(Homodyne, MonteCarloSensitivityTracksExact) {
  const GaussianState s = displace(squeeze(vacuum(1), 0, 0.5, Quadrature::kY), 0, 4.0, 0.0);
  const HomodyneReadout r{{{0, 1.0, 0.05, std::numbers::pi / 2}}, 1.0};
  const std::array<std::size_t, 1> terms{0};
  const auto exact = sensitivity(s, r, terms, SlopeMethod::kAnalytic);
  const auto mc = sensitivity_monte_carlo(s, r, terms, 200000, 99);
  EXPECT_EQ(mc.method, SlopeMethod::kMonteCarlo);
  EXPECT_NEAR(mc.sigma / exact.sigma, 1.0, 0.02);
}

}  // namespace
}  // namespace cvsense

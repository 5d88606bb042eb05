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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cvsense/gaussian_state.hpp"

namespace cvsense {

/// One balanced-homodyne channel contributing
///   coefficient * I_LO * (X cos(theta + phi) + Y sin(theta + phi))
/// to a joint photocurrent. `theta` is the unknown phase imprinted on the
/// mode, `phi` the locked local-oscillator phase.
struct HomodyneTerm {
  std::size_t mode = 0;
  double coefficient = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// A joint readout P = sum_k I_k. Each mode may appear at most once.
struct HomodyneReadout {
  std::vector<HomodyneTerm> terms;
  double lo_scale = 1.0;
};

enum class SlopeMethod { kAnalytic, kFiniteDifference, kMonteCarlo };

std::string_view to_string(SlopeMethod method);

struct EstimatorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// sigma = sqrt(variance) / |slope|.
struct SensitivityResult {
  double sigma = 0.0;
  double variance = 0.0;
  double slope = 0.0;
  SlopeMethod method = SlopeMethod::kAnalytic;
};

struct SampledMoments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
  std::size_t n_samples = 0;
};

inline constexpr double kDefaultPhaseStep = 1e-6;

/// Weight vector w with P = w^T q. Throws std::invalid_argument on an empty
/// readout, a mode outside [0, n_modes), a repeated mode or lo_scale <= 0.
Eigen::VectorXd readout_vector(const HomodyneReadout& readout, std::size_t n_modes);

/// Exact Gaussian moments: mean = w^T mu, variance = w^T Sigma w.
EstimatorMoments estimator_moments(const GaussianState& state, const HomodyneReadout& readout);

/// Sensitivity to a phase carried by the readout terms listed in
/// `phase_terms` (indices into readout.terms). The phase is the common value
/// of their `theta` fields; it enters only through the detection angle.
///
/// kAnalytic differentiates w(theta)^T mu in closed form; kFiniteDifference
/// uses a central difference with step `delta`. kMonteCarlo is rejected here,
/// see sensitivity_monte_carlo().
///
/// Throws DegenerateEstimator when the slope vanishes.
SensitivityResult sensitivity(const GaussianState& state, const HomodyneReadout& readout,
                              std::span<const std::size_t> phase_terms, SlopeMethod method,
                              double delta = kDefaultPhaseStep);

using StateBuilder = std::function<GaussianState(double theta)>;
using ReadoutBuilder = std::function<HomodyneReadout(double theta)>;

/// Builder form: the phase may act on the state, the readout, or both.
/// Always evaluated by central finite differences.
SensitivityResult sensitivity(const StateBuilder& state_builder,
                              const ReadoutBuilder& readout_builder, double theta0,
                              double delta = kDefaultPhaseStep);

/// Draws n_samples quadrature vectors from N(mu, Sigma), projects them through
/// w and returns the empirical moments with their standard errors.
/// Throws std::invalid_argument for n_samples < 2 or a non-physical state.
SampledMoments sample_currents(const GaussianState& state, const HomodyneReadout& readout,
                               std::size_t n_samples, std::uint64_t seed);

/// Sampled variance with a common-random-number central difference for the
/// slope. Statistical, so only used to cross-check the exact routes.
SensitivityResult sensitivity_monte_carlo(const GaussianState& state,
                                          const HomodyneReadout& readout,
                                          std::span<const std::size_t> phase_terms,
                                          std::size_t n_samples, std::uint64_t seed,
                                          double delta = kDefaultPhaseStep);

}  // namespace cvsense

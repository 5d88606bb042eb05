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

#include <array>
#include <optional>
#include <vector>

#include "cvsense/gaussian_state.hpp"
#include "cvsense/homodyne.hpp"
#include "cvsense/params.hpp"

namespace cvsense {

/// Loss values start, start + step, ... up to stop (inclusive within half a
/// step). Each point is start + i * step, so values do not accumulate
/// rounding. Throws std::invalid_argument for step <= 0, stop < start or
/// values outside [0, 1].
std::vector<double> loss_grid(double start, double stop, double step);

/// Two-mode state after squeezing, displacement, the 50:50 combination,
/// phase-quadrature amplification and loss (eta1, eta2 from `p`).
GaussianState build_epr_state(const EprParams& p, LossConvention convention);

/// Joint readout I_1 +/- I_2 with theta_1 = theta_2 = p.theta and phi = p.phi.
HomodyneReadout epr_readout(const EprParams& p);

struct EprSensitivity {
  SensitivityResult phase1;
  SensitivityResult phase2;
  /// Arithmetic mean of the two phase sensitivities.
  double average = 0.0;
};

/// Throws DegenerateEstimator if either phase has a vanishing slope.
EprSensitivity epr_sensitivity(const EprParams& p, LossConvention convention,
                               SlopeMethod method = SlopeMethod::kAnalytic);

enum class Variant {
  kWithOpa,
  kWithoutOpa,  ///< amplifier parameters forced to zero
  kSnl,         ///< input squeezing forced to zero, amplifiers kept
};

EprParams with_variant(EprParams p, Variant variant);

struct EprScenario {
  EprParams params;
  LossConvention convention = LossConvention::kPhysical;
  std::vector<double> losses;
  unsigned threads = 1;
};

/// A missing value marks a degenerate estimator at that point.
struct EprSweepRow {
  double loss = 0.0;
  std::optional<double> with_opa;
  std::optional<double> without_opa;
  std::optional<double> snl;
  std::optional<double> as_printed;
};

/// One row per grid point, equal losses on both modes, in grid order.
std::vector<EprSweepRow> sweep_epr(const EprScenario& scenario);

}  // namespace cvsense

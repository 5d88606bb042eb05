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
#include <cstddef>
#include <optional>
#include <vector>

#include "cvsense/analytic.hpp"
#include "cvsense/epr.hpp"
#include "cvsense/gaussian_state.hpp"
#include "cvsense/homodyne.hpp"
#include "cvsense/params.hpp"

namespace cvsense {

/// Nullifier Y_minuend - X_s1 - X_s2 of the square cluster (0-based modes).
/// Its published form is c0 e^{-r} Y_in0 + c1 e^{-r} Y_in1 over two inputs.
struct NullifierSpec {
  int k = 1;
  std::size_t minuend = 0;
  std::array<std::size_t, 2> subtrahends{};
  std::array<std::size_t, 2> input_modes{};
  std::array<double, 2> printed_coefficients{};
};

const std::array<NullifierSpec, 4>& nullifier_specs();
const NullifierSpec& nullifier_spec(int k);

/// 4x4 network that turns four phase-squeezed inputs into the square cluster.
const ComplexMatrix& square_cluster_unitary();

/// Inputs squeezed in Y with parameter r, displaced, then passed through the
/// cluster network. No amplification, no loss.
GaussianState build_cluster(const ClusterParams& p);
/// Same with an individual squeezing parameter per input mode.
GaussianState build_cluster(const std::array<double, 4>& squeezing, const ClusterParams& p);

/// Variance of the nullifier combination of `spec` in `state` (raw units).
double nullifier_check(const GaussianState& state, const NullifierSpec& spec);

struct OpaSetting {
  std::size_t mode = 0;
  Quadrature amplified = Quadrature::kY;
};

/// Amplifier layout for estimating phase k: Y amplified on the minuend mode,
/// X on both subtrahend modes; the fourth mode is left alone.
std::vector<OpaSetting> opa_configuration(int k);

/// Freshly prepared cluster with the phase-k amplifier layout and per-mode
/// loss p.eta applied.
GaussianState cluster_phase_state(int k, const ClusterParams& p, LossConvention convention);

/// Joint readout I_k - I_s1 - I_s2: phase quadrature on the minuend
/// (phi = 90 deg), amplitude quadrature on the subtrahends (phi = 0). Every
/// mode carries theta = p.theta; term 0 is the estimated phase.
HomodyneReadout cluster_readout(int k, const ClusterParams& p);

SensitivityResult phase_sensitivity(int k, const ClusterParams& p, LossConvention convention,
                                    SlopeMethod method = SlopeMethod::kAnalytic);

/// Arithmetic mean of the four phase sensitivities.
double average_sensitivity(const ClusterParams& p, LossConvention convention);

double target_sensitivity(ClusterTarget target, const ClusterParams& p,
                          LossConvention convention);

ClusterParams with_variant(ClusterParams p, Variant variant);

/// Published closed form for the target (average of the four for
/// ClusterTarget::average()).
double target_sensitivity_as_printed(ClusterTarget target, const ClusterParams& p,
                                     VacuumIndexPattern pattern);

struct ClusterScenario {
  ClusterParams params;
  LossConvention convention = LossConvention::kPhysical;
  ClusterTarget target = ClusterTarget::average();
  VacuumIndexPattern printed_pattern = VacuumIndexPattern::kAsPrinted;
  /// Loss grid, shared by both axes of a 2D sweep.
  std::vector<double> losses;
  /// Swept modes for 2D sweeps (0-based). Other modes keep params.eta.
  std::array<std::size_t, 2> axes{0, 1};
  unsigned threads = 1;
};

struct ClusterSweepRow {
  double loss1 = 0.0;
  double loss2 = 0.0;  ///< equals loss1 for 1D sweeps
  std::optional<double> with_opa;
  std::optional<double> without_opa;
  std::optional<double> snl;
  std::optional<double> as_printed;
};

/// Common loss on all four modes.
std::vector<ClusterSweepRow> sweep_cluster_1d(const ClusterScenario& scenario);
/// Rows ordered with loss1 as the outer loop.
std::vector<ClusterSweepRow> sweep_cluster_2d(const ClusterScenario& scenario);

}  // namespace cvsense

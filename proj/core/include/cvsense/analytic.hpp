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
#include <string>
#include <vector>

#include "cvsense/gaussian_state.hpp"
#include "cvsense/params.hpp"

namespace cvsense {

/// Closed-form sensitivity and correlation expressions, evaluated exactly as
/// published (including their known inconsistencies) so they can be compared
/// with the exact moment-propagation results.

struct EprCorrelations {
  double x_difference = 0.0;  ///< Var(X_1 - X_2) / shot noise
  double y_sum = 0.0;         ///< Var(Y_1 + Y_2) / shot noise
};

/// Shot-noise-normalized EPR correlations (e^{-2 r2}, e^{-2 r1}).
EprCorrelations epr_correlation_variance(double r1, double r2);

/// Published two-mode sensitivity with its (1 - eta^2) vacuum weights and the
/// bare theta in the denominator. Throws DegenerateEstimator when the
/// denominator eta1 * theta * |beta1 +/- beta2| / sqrt(2) is zero.
double epr_sensitivity_as_printed(const EprParams& p);

/// Which modes carry the (1 - eta)^2 vacuum terms in the cluster closed forms.
enum class VacuumIndexPattern {
  /// Index sets exactly as published: {1,3,4}, {1,2,3}, {1,2,3}, {1,2,4}.
  kAsPrinted,
  /// Index sets matching each joint readout: {1,3,4}, {2,3,4}, {1,2,3}, {1,2,4}.
  kCorrected,
};

/// Published cluster sensitivity of phase k (1..4). The denominator is used
/// in absolute value. Throws std::invalid_argument for k outside 1..4 and
/// DegenerateEstimator for a vanishing denominator.
double cluster_sensitivity_as_printed(int k, const ClusterParams& p,
                                      VacuumIndexPattern pattern = VacuumIndexPattern::kAsPrinted);

/// Variance of nullifier k implied by its published right-hand side, taking
/// the input quadratures as unit-variance vacuum: e.g. k = 1 gives
/// e^{-2 r_1}/2 + 5 e^{-2 r_2}/2. `r` holds r_1..r_4.
double nullifier_variance_as_printed(int k, const std::array<double, 4>& r);

/// Shot-noise reference: every input squeezing set to zero, amplifiers kept,
/// evaluated with the exact oracle. Two-mode result is the average over both
/// phases of the joint readout.
double snl_reference(const EprParams& p, LossConvention convention);
double snl_reference(ClusterTarget target, const ClusterParams& p, LossConvention convention);

struct Discrepancy {
  std::string topic;
  std::string detail;
  double printed = 0.0;
  double oracle = 0.0;
};

/// Side-by-side comparison of the published closed forms with the oracle at
/// the given parameters, one entry per known inconsistency.
std::vector<Discrepancy> discrepancy_report(const EprParams& epr, const ClusterParams& cluster);

std::string format_report(const std::vector<Discrepancy>& report);

}  // namespace cvsense

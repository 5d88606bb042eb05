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
#include <numbers>
#include <stdexcept>

namespace cvsense {

enum class JointSign { kPlus, kMinus };

/// Two-mode scenario: squeezed inputs -> 50:50 -> amplifiers -> phases ->
/// loss -> joint homodyne readout I_1 +/- I_2. Angles in radians.
struct EprParams {
  double r1 = 0.0;  ///< input squeezing, mode 1 (phase quadrature squeezed)
  double r2 = 0.0;  ///< input squeezing, mode 2 (amplitude quadrature squeezed)
  double r3 = 0.0;  ///< amplifier on mode 1 (phase quadrature amplified)
  double r4 = 0.0;  ///< amplifier on mode 2
  double eta1 = 1.0;
  double eta2 = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double theta = 0.0;
  double phi = std::numbers::pi / 2.0;
  double lo_scale = 1.0;
  JointSign sign = JointSign::kPlus;

  bool operator==(const EprParams&) const = default;
};

/// Four-mode square cluster. All inputs share the squeezing `r`; every
/// amplified quadrature uses the same `r_prime`. Displacements are applied
/// to the input modes before the cluster network.
struct ClusterParams {
  double r = 0.0;
  double r_prime = 0.0;
  std::array<double, 4> eta{1.0, 1.0, 1.0, 1.0};
  double beta1 = 0.0;
  double beta2 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double beta4 = 0.0;
  double theta = 0.0;
  double lo_scale = 1.0;

  bool operator==(const ClusterParams&) const = default;
};

/// Which cluster sensitivity a sweep reports: one phase (1..4) or the
/// arithmetic mean of all four.
class ClusterTarget {
 public:
  static constexpr ClusterTarget average() { return ClusterTarget(0); }
  static ClusterTarget phase(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("cluster phase index must be 1..4");
    return ClusterTarget(k);
  }
  constexpr bool is_average() const { return phase_ == 0; }
  constexpr int phase_index() const { return phase_; }
  bool operator==(const ClusterTarget&) const = default;

 private:
  constexpr explicit ClusterTarget(int k) : phase_(k) {}
  int phase_;
};

inline constexpr double degrees(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace cvsense

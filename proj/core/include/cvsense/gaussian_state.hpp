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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cvsense {

/// Quadrature conventions used throughout the library:
///
///   X = a + a^dagger,  Y = -i (a - a^dagger),  [X, Y] = 2i
///
/// so the vacuum has unit variance in both quadratures (shot-noise units).
/// Vectors over n modes are ordered (X_0 ... X_{n-1}, Y_0 ... Y_{n-1}).
enum class Quadrature { kX, kY };

enum class LossConvention {
  /// Beam-splitter admixture of vacuum: amplitudes scale by sqrt(eta).
  kPhysical,
  /// Linear admixture a -> eta a + (1 - eta) v. Not completely positive for
  /// 0 < eta < 1; kept only to reproduce closed forms built on it.
  kPaperLinear,
};

/// Tolerances shared by constructors and diagnostics.
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kUncertaintyTolerance = 1e-10;
inline constexpr double kUnitarityTolerance = 1e-10;

using ComplexMatrix = Eigen::MatrixXcd;

/// Symplectic form for n modes in (X-block, Y-block) ordering:
/// Omega = [[0, I], [-I, 0]].
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// Mean vector and covariance matrix of an n-mode Gaussian state.
///
/// Immutable value type. Every operation in this header returns a new state.
/// The covariance is re-symmetrized on construction.
class GaussianState {
 public:
  /// Throws std::invalid_argument on shape mismatch, odd dimension or a
  /// covariance that is not symmetric within kSymmetryTolerance (relative to
  /// its largest entry).
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  std::size_t n_modes() const { return n_modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  std::size_t x_index(std::size_t mode) const { return mode; }
  std::size_t y_index(std::size_t mode) const { return n_modes_ + mode; }

 private:
  std::size_t n_modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// A Gaussian unitary acting as q -> S q + d on quadrature vectors.
struct SymplecticOp {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd displacement;

  std::size_t n_modes() const { return static_cast<std::size_t>(matrix.rows()) / 2; }

  GaussianState apply(const GaussianState& state) const;

  /// Map equivalent to applying *this first and `next` afterwards.
  SymplecticOp then(const SymplecticOp& next) const;

  /// max |S Omega S^T - Omega|.
  double symplectic_deviation() const;

  static SymplecticOp identity(std::size_t n_modes);
  static SymplecticOp displacement_op(std::size_t n_modes, std::size_t mode,
                                      double alpha, double beta);
  /// Single-mode squeezer; the `amplified` quadrature is scaled by e^{r}, the
  /// conjugate one by e^{-r}.
  static SymplecticOp squeezer(std::size_t n_modes, std::size_t mode, double r,
                               Quadrature amplified);
  /// a -> e^{i theta} a.
  static SymplecticOp rotation(std::size_t n_modes, std::size_t mode, double theta);
  /// Passive beam splitter with real amplitude transmissivity sqrt(T):
  ///   b_i =  sqrt(T) a_i + sqrt(1-T) a_j
  ///   b_j = -sqrt(1-T) a_i + sqrt(T) a_j
  static SymplecticOp beam_splitter(std::size_t n_modes, std::size_t mode_i,
                                    std::size_t mode_j, double transmissivity);
  /// The EPR-generating 50:50 combination
  ///   b_i = (a_i + a_j)/sqrt(2),  b_j = (a_i - a_j)/sqrt(2).
  static SymplecticOp balanced_beam_splitter(std::size_t n_modes, std::size_t mode_i,
                                             std::size_t mode_j);
  /// b = U a, realized as S = [[Re U, -Im U], [Im U, Re U]].
  static SymplecticOp unitary_network(const ComplexMatrix& u);
};

struct LossChannel {
  std::size_t mode = 0;
  double eta = 1.0;
  LossConvention convention = LossConvention::kPhysical;
};

/// Output of validate(). Never throws.
struct StateDiagnostics {
  double symmetry_deviation = 0.0;
  /// Smallest eigenvalue of cov + i Omega.
  double min_uncertainty_eigenvalue = 0.0;
  /// Per-mode (Var X, Var Y) in shot-noise units.
  std::vector<std::pair<double, double>> normalized_variances;
  bool physical = false;
};

GaussianState vacuum(std::size_t n_modes);
GaussianState displace(const GaussianState& state, std::size_t mode, double alpha,
                       double beta);
GaussianState squeeze(const GaussianState& state, std::size_t mode, double r,
                      Quadrature amplified);
GaussianState phase_shift(const GaussianState& state, std::size_t mode, double theta);
GaussianState beam_splitter(const GaussianState& state, std::size_t mode_i,
                            std::size_t mode_j, double transmissivity);
GaussianState balanced_beam_splitter(const GaussianState& state, std::size_t mode_i,
                                     std::size_t mode_j);
GaussianState apply_unitary_network(const GaussianState& state, const ComplexMatrix& u);

/// Phase-sensitive amplifier: the `amplified` quadrature gains e^{r_gain}, the
/// conjugate one is de-amplified by e^{-r_gain}.
GaussianState opa(const GaussianState& state, std::size_t mode, double r_gain,
                  Quadrature amplified);
/// Amplitude gain of an amplifier with parameter r_gain (G = e^{r_gain}).
double opa_gain(double r_gain);

GaussianState loss(const GaussianState& state, const LossChannel& channel);
GaussianState loss(const GaussianState& state, std::size_t mode, double eta,
                   LossConvention convention = LossConvention::kPhysical);

StateDiagnostics validate(const GaussianState& state);

/// Relabels modes: mode k of the result is mode order[k] of the input.
GaussianState permute_modes(const GaussianState& state, const std::vector<std::size_t>& order);

/// max |U U^dagger - I|.
double unitarity_deviation(const ComplexMatrix& u);

/// Squeezing in dB below shot noise for parameter r: -10 log10(e^{-2r}).
double squeezing_db(double r);

}  // namespace cvsense

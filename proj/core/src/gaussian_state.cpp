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

#include "cvsense/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace cvsense {
namespace {

void check_mode(std::size_t n_modes, std::size_t mode) {
  if (mode >= n_modes) {
    throw std::invalid_argument("mode " + std::to_string(mode) + " out of range for " +
                                std::to_string(n_modes) + "-mode state");
  }
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// Diagonal single-mode scaling X -> sx X, Y -> sy Y.
SymplecticOp diagonal_op(std::size_t n_modes, std::size_t mode, double sx, double sy) {
  SymplecticOp op = SymplecticOp::identity(n_modes);
  op.matrix(mode, mode) = sx;
  op.matrix(n_modes + mode, n_modes + mode) = sy;
  return op;
}

}  // namespace

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(n_modes);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return omega;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : n_modes_(static_cast<std::size_t>(mean.size()) / 2),
      mean_(std::move(mean)),
      cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw std::invalid_argument("mean vector must have positive even length");
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw std::invalid_argument("covariance shape does not match mean vector");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTolerance * scale)) {
    throw std::invalid_argument("covariance is not symmetric (deviation " +
                                std::to_string(asym) + ")");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

GaussianState SymplecticOp::apply(const GaussianState& state) const {
  if (n_modes() != state.n_modes()) {
    throw std::invalid_argument("symplectic op acts on " + std::to_string(n_modes()) +
                                " modes, state has " + std::to_string(state.n_modes()));
  }
  Eigen::VectorXd mean = matrix * state.mean() + displacement;
  Eigen::MatrixXd cov = matrix * state.cov() * matrix.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return GaussianState(std::move(mean), std::move(cov));
}

SymplecticOp SymplecticOp::then(const SymplecticOp& next) const {
  if (next.n_modes() != n_modes()) {
    throw std::invalid_argument("cannot compose symplectic ops of different size");
  }
  return SymplecticOp{next.matrix * matrix, next.matrix * displacement + next.displacement};
}

double SymplecticOp::symplectic_deviation() const {
  const Eigen::MatrixXd omega = symplectic_form(n_modes());
  return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticOp SymplecticOp::identity(std::size_t n_modes) {
  if (n_modes == 0) throw std::invalid_argument("n_modes must be positive");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return SymplecticOp{Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim)};
}

SymplecticOp SymplecticOp::displacement_op(std::size_t n_modes, std::size_t mode,
                                           double alpha, double beta) {
  check_mode(n_modes, mode);
  check_finite(alpha, "alpha");
  check_finite(beta, "beta");
  SymplecticOp op = identity(n_modes);
  op.displacement(mode) = alpha;
  op.displacement(n_modes + mode) = beta;
  return op;
}

SymplecticOp SymplecticOp::squeezer(std::size_t n_modes, std::size_t mode, double r,
                                    Quadrature amplified) {
  check_mode(n_modes, mode);
  check_finite(r, "squeezing parameter");
  const double up = std::exp(r);
  const double down = std::exp(-r);
  return amplified == Quadrature::kX ? diagonal_op(n_modes, mode, up, down)
                                     : diagonal_op(n_modes, mode, down, up);
}

SymplecticOp SymplecticOp::rotation(std::size_t n_modes, std::size_t mode, double theta) {
  check_mode(n_modes, mode);
  check_finite(theta, "phase");
  SymplecticOp op = identity(n_modes);
  const auto x = static_cast<Eigen::Index>(mode);
  const auto y = static_cast<Eigen::Index>(n_modes + mode);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  op.matrix(x, x) = c;
  op.matrix(x, y) = -s;
  op.matrix(y, x) = s;
  op.matrix(y, y) = c;
  return op;
}

SymplecticOp SymplecticOp::beam_splitter(std::size_t n_modes, std::size_t mode_i,
                                         std::size_t mode_j, double transmissivity) {
  check_mode(n_modes, mode_i);
  check_mode(n_modes, mode_j);
  if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw std::invalid_argument("transmissivity must lie in [0, 1]");
  }
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  ComplexMatrix u = ComplexMatrix::Identity(static_cast<Eigen::Index>(n_modes),
                                            static_cast<Eigen::Index>(n_modes));
  const auto i = static_cast<Eigen::Index>(mode_i);
  const auto j = static_cast<Eigen::Index>(mode_j);
  u(i, i) = t;
  u(i, j) = r;
  u(j, i) = -r;
  u(j, j) = t;
  return unitary_network(u);
}

SymplecticOp SymplecticOp::balanced_beam_splitter(std::size_t n_modes, std::size_t mode_i,
                                                  std::size_t mode_j) {
  check_mode(n_modes, mode_i);
  check_mode(n_modes, mode_j);
  if (mode_i == mode_j) throw std::invalid_argument("beam splitter needs two distinct modes");
  const double h = 1.0 / std::numbers::sqrt2;
  ComplexMatrix u = ComplexMatrix::Identity(static_cast<Eigen::Index>(n_modes),
                                            static_cast<Eigen::Index>(n_modes));
  const auto i = static_cast<Eigen::Index>(mode_i);
  const auto j = static_cast<Eigen::Index>(mode_j);
  u(i, i) = h;
  u(i, j) = h;
  u(j, i) = h;
  u(j, j) = -h;
  return unitary_network(u);
}

SymplecticOp SymplecticOp::unitary_network(const ComplexMatrix& u) {
  if (u.rows() == 0 || u.rows() != u.cols()) {
    throw std::invalid_argument("unitary network must be a non-empty square matrix");
  }
  const double dev = unitarity_deviation(u);
  if (!(dev <= kUnitarityTolerance)) {
    throw std::invalid_argument("matrix is not unitary: max |U U^dagger - I| = " +
                                std::to_string(dev));
  }
  const Eigen::Index n = u.rows();
  SymplecticOp op = identity(static_cast<std::size_t>(n));
  const Eigen::MatrixXd re = u.real();
  const Eigen::MatrixXd im = u.imag();
  op.matrix.topLeftCorner(n, n) = re;
  op.matrix.topRightCorner(n, n) = -im;
  op.matrix.bottomLeftCorner(n, n) = im;
  op.matrix.bottomRightCorner(n, n) = re;
  return op;
}

GaussianState vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw std::invalid_argument("n_modes must be positive");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return GaussianState(Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState displace(const GaussianState& state, std::size_t mode, double alpha,
                       double beta) {
  return SymplecticOp::displacement_op(state.n_modes(), mode, alpha, beta).apply(state);
}

GaussianState squeeze(const GaussianState& state, std::size_t mode, double r,
                      Quadrature amplified) {
  return SymplecticOp::squeezer(state.n_modes(), mode, r, amplified).apply(state);
}

GaussianState phase_shift(const GaussianState& state, std::size_t mode, double theta) {
  return SymplecticOp::rotation(state.n_modes(), mode, theta).apply(state);
}

GaussianState beam_splitter(const GaussianState& state, std::size_t mode_i,
                            std::size_t mode_j, double transmissivity) {
  return SymplecticOp::beam_splitter(state.n_modes(), mode_i, mode_j, transmissivity)
      .apply(state);
}

GaussianState balanced_beam_splitter(const GaussianState& state, std::size_t mode_i,
                                     std::size_t mode_j) {
  return SymplecticOp::balanced_beam_splitter(state.n_modes(), mode_i, mode_j).apply(state);
}

GaussianState apply_unitary_network(const GaussianState& state, const ComplexMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != state.n_modes()) {
    throw std::invalid_argument("unitary size does not match number of modes");
  }
  return SymplecticOp::unitary_network(u).apply(state);
}

GaussianState opa(const GaussianState& state, std::size_t mode, double r_gain,
                  Quadrature amplified) {
  return SymplecticOp::squeezer(state.n_modes(), mode, r_gain, amplified).apply(state);
}

double opa_gain(double r_gain) { return std::exp(r_gain); }

GaussianState loss(const GaussianState& state, const LossChannel& channel) {
  check_mode(state.n_modes(), channel.mode);
  if (!(channel.eta >= 0.0 && channel.eta <= 1.0)) {
    throw std::invalid_argument("transmissivity eta must lie in [0, 1], got " +
                                std::to_string(channel.eta));
  }
  double amplitude = 0.0;
  double noise = 0.0;
  switch (channel.convention) {
    case LossConvention::kPhysical:
      amplitude = std::sqrt(channel.eta);
      noise = 1.0 - channel.eta;
      break;
    case LossConvention::kPaperLinear:
      amplitude = channel.eta;
      noise = (1.0 - channel.eta) * (1.0 - channel.eta);
      break;
  }
  const std::size_t n = state.n_modes();
  const auto x = static_cast<Eigen::Index>(channel.mode);
  const auto y = static_cast<Eigen::Index>(n + channel.mode);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(2 * n));
  scale(x) = amplitude;
  scale(y) = amplitude;
  Eigen::VectorXd mean = scale.cwiseProduct(state.mean());
  Eigen::MatrixXd cov = scale.asDiagonal() * state.cov() * scale.asDiagonal();
  cov(x, x) += noise;
  cov(y, y) += noise;
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState loss(const GaussianState& state, std::size_t mode, double eta,
                   LossConvention convention) {
  return loss(state, LossChannel{mode, eta, convention});
}

StateDiagnostics validate(const GaussianState& state) {
  StateDiagnostics diag;
  const Eigen::MatrixXd& cov = state.cov();
  diag.symmetry_deviation = (cov - cov.transpose()).cwiseAbs().maxCoeff();

  const std::size_t n = state.n_modes();
  const ComplexMatrix omega = symplectic_form(n).cast<std::complex<double>>();
  const ComplexMatrix bound =
      cov.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * omega;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(bound, Eigen::EigenvaluesOnly);
  diag.min_uncertainty_eigenvalue =
      solver.info() == Eigen::Success ? solver.eigenvalues().minCoeff() : -1.0;

  diag.normalized_variances.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    diag.normalized_variances.emplace_back(cov(state.x_index(k), state.x_index(k)),
                                           cov(state.y_index(k), state.y_index(k)));
  }
  diag.physical = diag.symmetry_deviation <= kSymmetryTolerance &&
                  diag.min_uncertainty_eigenvalue >= -kUncertaintyTolerance;
  return diag;
}

GaussianState permute_modes(const GaussianState& state, const std::vector<std::size_t>& order) {
  const std::size_t n = state.n_modes();
  if (order.size() != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(n, false);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(static_cast<Eigen::Index>(2 * n));
  for (std::size_t k = 0; k < n; ++k) {
    check_mode(n, order[k]);
    if (seen[order[k]]) throw std::invalid_argument("permutation repeats a mode");
    seen[order[k]] = true;
    // Row k of the result reads row order[k] of the input.
    perm.indices()[static_cast<Eigen::Index>(order[k])] = static_cast<int>(k);
    perm.indices()[static_cast<Eigen::Index>(n + order[k])] = static_cast<int>(n + k);
  }
  Eigen::VectorXd mean = perm * state.mean();
  Eigen::MatrixXd cov = perm * state.cov() * perm.transpose();
  return GaussianState(std::move(mean), std::move(cov));
}

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix prod = u * u.adjoint();
  return (prod - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double squeezing_db(double r) { return -10.0 * std::log10(std::exp(-2.0 * r)); }

}  // namespace cvsense

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

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "cvsense/errors.hpp"

namespace cvsense {
namespace {

double checked_sigma(double variance, double slope, SlopeMethod method) {
  if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) {
    throw DegenerateEstimator(std::string("estimator slope d<P>/dtheta vanishes (") +
                              std::string(to_string(method)) + " slope = " +
                              std::to_string(slope) + ")");
  }
  return std::sqrt(std::max(variance, 0.0)) / std::abs(slope);
}

HomodyneReadout shifted(HomodyneReadout readout, std::span<const std::size_t> phase_terms,
                        double shift) {
  for (std::size_t t : phase_terms) readout.terms[t].theta += shift;
  return readout;
}

void check_phase_terms(const HomodyneReadout& readout, std::span<const std::size_t> phase_terms) {
  if (phase_terms.empty()) throw std::invalid_argument("no readout term carries the phase");
  for (std::size_t t : phase_terms) {
    if (t >= readout.terms.size()) {
      throw std::invalid_argument("phase term index " + std::to_string(t) + " out of range");
    }
  }
}

// Lower factor L with L L^T = cov. Falls back to a clamped eigendecomposition
// for covariances that are only semidefinite to rounding.
Eigen::MatrixXd sampling_factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

struct ProjectedSamples {
  std::vector<double> mean;
  std::vector<double> variance;
};

// Streams n_samples draws q = mu + L z, z ~ N(0, I), and accumulates the
// moments of w_i^T q for every weight vector (Welford).
ProjectedSamples draw(const GaussianState& state, const std::vector<Eigen::VectorXd>& weights,
                      std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  if (!validate(state).physical) {
    throw std::invalid_argument("cannot sample a non-physical covariance");
  }
  const Eigen::MatrixXd factor = sampling_factor(state.cov());
  const std::size_t k = weights.size();
  std::vector<Eigen::VectorXd> projected;
  std::vector<double> offset;
  for (const auto& w : weights) {
    projected.emplace_back(factor.transpose() * w);
    offset.push_back(w.dot(state.mean()));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(state.mean().size());
  std::vector<double> mean(k, 0.0);
  std::vector<double> m2(k, 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
    const double count = static_cast<double>(s + 1);
    for (std::size_t i = 0; i < k; ++i) {
      const double p = offset[i] + projected[i].dot(z);
      const double d = p - mean[i];
      mean[i] += d / count;
      m2[i] += d * (p - mean[i]);
    }
  }
  ProjectedSamples out{mean, m2};
  for (double& v : out.variance) v /= static_cast<double>(n_samples - 1);
  return out;
}

}  // namespace

std::string_view to_string(SlopeMethod method) {
  switch (method) {
    case SlopeMethod::kAnalytic:
      return "analytic-slope";
    case SlopeMethod::kFiniteDifference:
      return "finite-difference";
    case SlopeMethod::kMonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

Eigen::VectorXd readout_vector(const HomodyneReadout& readout, std::size_t n_modes) {
  if (readout.terms.empty()) throw std::invalid_argument("readout has no terms");
  if (!(readout.lo_scale > 0.0)) throw std::invalid_argument("lo_scale must be positive");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n_modes));
  std::vector<bool> used(n_modes, false);
  for (const HomodyneTerm& term : readout.terms) {
    if (term.mode >= n_modes) {
      throw std::invalid_argument("readout mode " + std::to_string(term.mode) +
                                  " out of range");
    }
    if (used[term.mode]) {
      throw std::invalid_argument("mode " + std::to_string(term.mode) +
                                  " appears twice in readout");
    }
    used[term.mode] = true;
    const double angle = term.theta + term.phi;
    const double gain = term.coefficient * readout.lo_scale;
    w(static_cast<Eigen::Index>(term.mode)) = gain * std::cos(angle);
    w(static_cast<Eigen::Index>(n_modes + term.mode)) = gain * std::sin(angle);
  }
  return w;
}

EstimatorMoments estimator_moments(const GaussianState& state, const HomodyneReadout& readout) {
  const Eigen::VectorXd w = readout_vector(readout, state.n_modes());
  return EstimatorMoments{w.dot(state.mean()), w.dot(state.cov() * w)};
}

SensitivityResult sensitivity(const GaussianState& state, const HomodyneReadout& readout,
                              std::span<const std::size_t> phase_terms, SlopeMethod method,
                              double delta) {
  check_phase_terms(readout, phase_terms);
  const EstimatorMoments moments = estimator_moments(state, readout);
  double slope = 0.0;
  switch (method) {
    case SlopeMethod::kAnalytic: {
      const std::size_t n = state.n_modes();
      Eigen::VectorXd dw = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
      for (std::size_t t : phase_terms) {
        const HomodyneTerm& term = readout.terms[t];
        const double angle = term.theta + term.phi;
        const double gain = term.coefficient * readout.lo_scale;
        dw(static_cast<Eigen::Index>(term.mode)) = -gain * std::sin(angle);
        dw(static_cast<Eigen::Index>(n + term.mode)) = gain * std::cos(angle);
      }
      slope = dw.dot(state.mean());
      break;
    }
    case SlopeMethod::kFiniteDifference: {
      if (!(delta > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
      const double up = estimator_moments(state, shifted(readout, phase_terms, delta)).mean;
      const double down = estimator_moments(state, shifted(readout, phase_terms, -delta)).mean;
      slope = (up - down) / (2.0 * delta);
      break;
    }
    case SlopeMethod::kMonteCarlo:
      throw std::invalid_argument("use sensitivity_monte_carlo for sampled sensitivities");
  }
  return SensitivityResult{checked_sigma(moments.variance, slope, method), moments.variance,
                           slope, method};
}

SensitivityResult sensitivity(const StateBuilder& state_builder,
                              const ReadoutBuilder& readout_builder, double theta0,
                              double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  auto mean_at = [&](double theta) {
    return estimator_moments(state_builder(theta), readout_builder(theta)).mean;
  };
  const double slope = (mean_at(theta0 + delta) - mean_at(theta0 - delta)) / (2.0 * delta);
  const double variance =
      estimator_moments(state_builder(theta0), readout_builder(theta0)).variance;
  return SensitivityResult{checked_sigma(variance, slope, SlopeMethod::kFiniteDifference),
                           variance, slope, SlopeMethod::kFiniteDifference};
}

SampledMoments sample_currents(const GaussianState& state, const HomodyneReadout& readout,
                               std::size_t n_samples, std::uint64_t seed) {
  const Eigen::VectorXd w = readout_vector(readout, state.n_modes());
  const ProjectedSamples s = draw(state, {w}, n_samples, seed);
  const double n = static_cast<double>(n_samples);
  SampledMoments out;
  out.mean = s.mean[0];
  out.variance = s.variance[0];
  out.mean_stderr = std::sqrt(out.variance / n);
  out.variance_stderr = out.variance * std::sqrt(2.0 / (n - 1.0));
  out.n_samples = n_samples;
  return out;
}

SensitivityResult sensitivity_monte_carlo(const GaussianState& state,
                                          const HomodyneReadout& readout,
                                          std::span<const std::size_t> phase_terms,
                                          std::size_t n_samples, std::uint64_t seed,
                                          double delta) {
  check_phase_terms(readout, phase_terms);
  if (!(delta > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const std::size_t n = state.n_modes();
  const std::vector<Eigen::VectorXd> weights{
      readout_vector(readout, n), readout_vector(shifted(readout, phase_terms, delta), n),
      readout_vector(shifted(readout, phase_terms, -delta), n)};
  const ProjectedSamples s = draw(state, weights, n_samples, seed);
  const double slope = (s.mean[1] - s.mean[2]) / (2.0 * delta);
  return SensitivityResult{checked_sigma(s.variance[0], slope, SlopeMethod::kMonteCarlo),
                           s.variance[0], slope, SlopeMethod::kMonteCarlo};
}

}  // namespace cvsense

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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cvsense/errors.hpp"
#include "cvsense/parallel.hpp"

namespace cvsense {
namespace {

constexpr double kHalf = 1.0 / std::numbers::sqrt2;

void check_k(int k) {
  if (k < 1 || k > 4) {
    throw std::invalid_argument("cluster phase index must be 1..4, got " + std::to_string(k));
  }
}

template <typename F>
std::optional<double> unless_degenerate(F&& f) {
  try {
    return f();
  } catch (const DegenerateEstimator&) {
    return std::nullopt;
  }
}

void check_increasing(const std::vector<double>& losses) {
  for (std::size_t i = 1; i < losses.size(); ++i) {
    if (!(losses[i] > losses[i - 1])) {
      throw std::invalid_argument("loss grid must be strictly increasing");
    }
  }
}

ClusterSweepRow evaluate_row(const ClusterScenario& s, const ClusterParams& p, double loss1,
                             double loss2) {
  auto sigma = [&](Variant v) {
    return unless_degenerate(
        [&] { return target_sensitivity(s.target, with_variant(p, v), s.convention); });
  };
  ClusterSweepRow row;
  row.loss1 = loss1;
  row.loss2 = loss2;
  row.with_opa = sigma(Variant::kWithOpa);
  row.without_opa = sigma(Variant::kWithoutOpa);
  row.snl = sigma(Variant::kSnl);
  row.as_printed =
      unless_degenerate([&] { return target_sensitivity_as_printed(s.target, p, s.printed_pattern); });
  return row;
}

}  // namespace

const std::array<NullifierSpec, 4>& nullifier_specs() {
  static const double kFive = std::sqrt(5.0) / std::numbers::sqrt2;
  static const std::array<NullifierSpec, 4> specs{{
      {1, 0, {2, 3}, {0, 1}, {-kHalf, -kFive}},
      {2, 1, {2, 3}, {0, 1}, {kHalf, -kFive}},
      {3, 2, {0, 1}, {2, 3}, {-kFive, -kHalf}},
      {4, 3, {0, 1}, {2, 3}, {-kFive, kHalf}},
  }};
  return specs;
}

const NullifierSpec& nullifier_spec(int k) {
  check_k(k);
  return nullifier_specs()[static_cast<std::size_t>(k - 1)];
}

const ComplexMatrix& square_cluster_unitary() {
  static const ComplexMatrix u = [] {
    const double a = 1.0 / std::numbers::sqrt2;
    const double b = 1.0 / std::sqrt(10.0);
    const std::complex<double> c(0.0, -2.0 * b);
    ComplexMatrix m(4, 4);
    m << -a, -b, c, 0.0,
          a, -b, c, 0.0,
         0.0, c, -b, -a,
         0.0, c, -b, a;
    return m;
  }();
  return u;
}

GaussianState build_cluster(const ClusterParams& p) {
  return build_cluster({p.r, p.r, p.r, p.r}, p);
}

GaussianState build_cluster(const std::array<double, 4>& squeezing, const ClusterParams& p) {
  GaussianState state = vacuum(4);
  for (std::size_t m = 0; m < 4; ++m) state = squeeze(state, m, squeezing[m], Quadrature::kX);
  state = displace(state, 0, 0.0, p.beta1);
  state = displace(state, 1, p.alpha2, p.beta2);
  state = displace(state, 2, p.alpha3, 0.0);
  state = displace(state, 3, 0.0, p.beta4);
  return apply_unitary_network(state, square_cluster_unitary());
}

double nullifier_check(const GaussianState& state, const NullifierSpec& spec) {
  HomodyneReadout readout;
  readout.terms.push_back({spec.minuend, 1.0, 0.0, std::numbers::pi / 2.0});
  for (std::size_t m : spec.subtrahends) readout.terms.push_back({m, -1.0, 0.0, 0.0});
  return estimator_moments(state, readout).variance;
}

std::vector<OpaSetting> opa_configuration(int k) {
  const NullifierSpec& spec = nullifier_spec(k);
  return {OpaSetting{spec.minuend, Quadrature::kY},
          OpaSetting{spec.subtrahends[0], Quadrature::kX},
          OpaSetting{spec.subtrahends[1], Quadrature::kX}};
}

GaussianState cluster_phase_state(int k, const ClusterParams& p, LossConvention convention) {
  GaussianState state = build_cluster(p);
  for (const OpaSetting& setting : opa_configuration(k)) {
    state = opa(state, setting.mode, p.r_prime, setting.amplified);
  }
  for (std::size_t m = 0; m < 4; ++m) state = loss(state, m, p.eta[m], convention);
  return state;
}

HomodyneReadout cluster_readout(int k, const ClusterParams& p) {
  const NullifierSpec& spec = nullifier_spec(k);
  HomodyneReadout readout;
  readout.lo_scale = p.lo_scale;
  readout.terms.push_back({spec.minuend, 1.0, p.theta, std::numbers::pi / 2.0});
  for (std::size_t m : spec.subtrahends) readout.terms.push_back({m, -1.0, p.theta, 0.0});
  return readout;
}

SensitivityResult phase_sensitivity(int k, const ClusterParams& p, LossConvention convention,
                                    SlopeMethod method) {
  const std::array<std::size_t, 1> estimated{0};
  return sensitivity(cluster_phase_state(k, p, convention), cluster_readout(k, p), estimated,
                     method);
}

double average_sensitivity(const ClusterParams& p, LossConvention convention) {
  double total = 0.0;
  for (int k = 1; k <= 4; ++k) total += phase_sensitivity(k, p, convention).sigma;
  return total / 4.0;
}

double target_sensitivity(ClusterTarget target, const ClusterParams& p,
                          LossConvention convention) {
  if (target.is_average()) return average_sensitivity(p, convention);
  return phase_sensitivity(target.phase_index(), p, convention).sigma;
}

ClusterParams with_variant(ClusterParams p, Variant variant) {
  switch (variant) {
    case Variant::kWithOpa:
      break;
    case Variant::kWithoutOpa:
      p.r_prime = 0.0;
      break;
    case Variant::kSnl:
      p.r = 0.0;
      break;
  }
  return p;
}

double target_sensitivity_as_printed(ClusterTarget target, const ClusterParams& p,
                                     VacuumIndexPattern pattern) {
  if (!target.is_average()) {
    return cluster_sensitivity_as_printed(target.phase_index(), p, pattern);
  }
  double total = 0.0;
  for (int k = 1; k <= 4; ++k) total += cluster_sensitivity_as_printed(k, p, pattern);
  return total / 4.0;
}

std::vector<ClusterSweepRow> sweep_cluster_1d(const ClusterScenario& scenario) {
  check_increasing(scenario.losses);
  std::vector<ClusterSweepRow> rows(scenario.losses.size());
  parallel_for(rows.size(), scenario.threads, [&](std::size_t i) {
    const double l = scenario.losses[i];
    ClusterParams p = scenario.params;
    p.eta.fill(1.0 - l);
    rows[i] = evaluate_row(scenario, p, l, l);
  });
  return rows;
}

std::vector<ClusterSweepRow> sweep_cluster_2d(const ClusterScenario& scenario) {
  check_increasing(scenario.losses);
  const auto [a, b] = scenario.axes;
  if (a >= 4 || b >= 4 || a == b) {
    throw std::invalid_argument("2D sweep needs two distinct modes in 0..3");
  }
  const std::size_t n = scenario.losses.size();
  std::vector<ClusterSweepRow> rows(n * n);
  parallel_for(rows.size(), scenario.threads, [&](std::size_t idx) {
    const double l1 = scenario.losses[idx / n];
    const double l2 = scenario.losses[idx % n];
    ClusterParams p = scenario.params;
    p.eta[a] = 1.0 - l1;
    p.eta[b] = 1.0 - l2;
    rows[idx] = evaluate_row(scenario, p, l1, l2);
  });
  return rows;
}

}  // namespace cvsense

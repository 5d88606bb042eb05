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

#include "cvsense/epr.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cvsense/analytic.hpp"
#include "cvsense/errors.hpp"
#include "cvsense/parallel.hpp"

namespace cvsense {
namespace {

template <typename F>
std::optional<double> unless_degenerate(F&& f) {
  try {
    return f();
  } catch (const DegenerateEstimator&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<double> loss_grid(double start, double stop, double step) {
  if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step))) {
    throw std::invalid_argument("loss grid bounds must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("loss grid step must be positive");
  if (stop < start) throw std::invalid_argument("loss grid stop must not be below start");
  if (start < 0.0 || stop > 1.0) throw std::invalid_argument("loss grid must lie in [0, 1]");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(std::min(start + static_cast<double>(i) * step, stop));
  }
  return grid;
}

GaussianState build_epr_state(const EprParams& p, LossConvention convention) {
  GaussianState state = vacuum(2);
  state = squeeze(state, 0, p.r1, Quadrature::kX);
  state = squeeze(state, 1, p.r2, Quadrature::kY);
  state = displace(state, 0, p.alpha1, p.beta1);
  state = displace(state, 1, p.alpha2, p.beta2);
  state = balanced_beam_splitter(state, 0, 1);
  state = opa(state, 0, p.r3, Quadrature::kY);
  state = opa(state, 1, p.r4, Quadrature::kY);
  state = loss(state, 0, p.eta1, convention);
  state = loss(state, 1, p.eta2, convention);
  return state;
}

HomodyneReadout epr_readout(const EprParams& p) {
  const double second = p.sign == JointSign::kPlus ? 1.0 : -1.0;
  return HomodyneReadout{{HomodyneTerm{0, 1.0, p.theta, p.phi},
                          HomodyneTerm{1, second, p.theta, p.phi}},
                         p.lo_scale};
}

EprSensitivity epr_sensitivity(const EprParams& p, LossConvention convention,
                               SlopeMethod method) {
  const GaussianState state = build_epr_state(p, convention);
  const HomodyneReadout readout = epr_readout(p);
  const std::array<std::size_t, 1> first{0};
  const std::array<std::size_t, 1> second{1};
  EprSensitivity out;
  out.phase1 = sensitivity(state, readout, first, method);
  out.phase2 = sensitivity(state, readout, second, method);
  out.average = 0.5 * (out.phase1.sigma + out.phase2.sigma);
  return out;
}

EprParams with_variant(EprParams p, Variant variant) {
  switch (variant) {
    case Variant::kWithOpa:
      break;
    case Variant::kWithoutOpa:
      p.r3 = 0.0;
      p.r4 = 0.0;
      break;
    case Variant::kSnl:
      p.r1 = 0.0;
      p.r2 = 0.0;
      break;
  }
  return p;
}

std::vector<EprSweepRow> sweep_epr(const EprScenario& scenario) {
  for (std::size_t i = 1; i < scenario.losses.size(); ++i) {
    if (!(scenario.losses[i] > scenario.losses[i - 1])) {
      throw std::invalid_argument("loss grid must be strictly increasing");
    }
  }
  std::vector<EprSweepRow> rows(scenario.losses.size());
  parallel_for(rows.size(), scenario.threads, [&](std::size_t i) {
    EprParams p = scenario.params;
    p.eta1 = 1.0 - scenario.losses[i];
    p.eta2 = p.eta1;
    auto average = [&](Variant v) {
      return unless_degenerate(
          [&] { return epr_sensitivity(with_variant(p, v), scenario.convention).average; });
    };
    EprSweepRow& row = rows[i];
    row.loss = scenario.losses[i];
    row.with_opa = average(Variant::kWithOpa);
    row.without_opa = average(Variant::kWithoutOpa);
    row.snl = average(Variant::kSnl);
    row.as_printed = unless_degenerate([&] { return epr_sensitivity_as_printed(p); });
  });
  return rows;
}

}  // namespace cvsense

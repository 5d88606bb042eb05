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

#include "cvsense/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "cvsense/cluster.hpp"
#include "cvsense/epr.hpp"
#include "cvsense/errors.hpp"

namespace cvsense {
namespace {

constexpr double kRoot2 = std::numbers::sqrt2;
const double kRoot10 = std::sqrt(10.0);

double sq(double x) { return x * x; }

double checked_ratio(double variance, double denominator, const char* what) {
  if (denominator == 0.0 || !std::isfinite(denominator)) {
    throw DegenerateEstimator(std::string(what) + ": closed-form denominator vanishes");
  }
  return std::sqrt(variance) / std::abs(denominator);
}

double or_nan(const auto& f) {
  try {
    return f();
  } catch (const DegenerateEstimator&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

EprCorrelations epr_correlation_variance(double r1, double r2) {
  return EprCorrelations{std::exp(-2.0 * r2), std::exp(-2.0 * r1)};
}

double epr_sensitivity_as_printed(const EprParams& p) {
  const double e1 = p.eta1;
  const double e2 = p.eta2;
  const double squeezed = std::exp(-2.0 * p.r1);
  const double anti = std::exp(2.0 * p.r2);
  const double variance = (e1 * e1 + e2 * e2) * (squeezed + anti) +
                          2.0 * e1 * e2 * (squeezed - anti) +
                          ((1.0 - e1 * e1) + (1.0 - e2 * e2)) * std::exp(-2.0 * p.r3);
  const double displacement =
      p.sign == JointSign::kPlus ? p.beta1 + p.beta2 : p.beta1 - p.beta2;
  const double denominator = e1 * p.theta * std::abs(displacement) / kRoot2;
  return checked_ratio(variance, denominator, "two-mode closed form");
}

double cluster_sensitivity_as_printed(int k, const ClusterParams& p, VacuumIndexPattern pattern) {
  const auto& [e1, e2, e3, e4] = p.eta;
  const double squeezed = std::exp(-2.0 * p.r);
  const double anti = std::exp(2.0 * p.r);
  const double amp = std::exp(-2.0 * p.r_prime);
  double variance = 0.0;
  double denominator = 0.0;
  switch (k) {
    case 1:
      variance = squeezed * (0.5 * sq(e1) + 0.1 * sq(e1 + 2.0 * e3 + 2.0 * e4)) +
                 anti * (0.1 * sq(2.0 * e1 - e3 - e4) + 0.5 * sq(e3 - e4)) +
                 amp * (sq(1.0 - e1) + sq(1.0 - e3) + sq(1.0 - e4));
      denominator =
          p.theta * e1 * (p.beta1 / kRoot2 + p.beta2 / kRoot10 + 2.0 * p.alpha3 / kRoot10);
      break;
    case 2: {
      const double vacuum_terms = pattern == VacuumIndexPattern::kAsPrinted
                                      ? sq(1.0 - e1) + sq(1.0 - e2) + sq(1.0 - e3)
                                      : sq(1.0 - e2) + sq(1.0 - e3) + sq(1.0 - e4);
      variance = squeezed * (0.5 * sq(e2) + 0.1 * sq(e2 + 2.0 * e3 + 2.0 * e4)) +
                 anti * (0.1 * sq(2.0 * e2 - e3 - e4) + 0.5 * sq(e3 - e4)) +
                 amp * vacuum_terms;
      denominator =
          p.theta * e2 * (p.beta1 / kRoot2 - p.beta2 / kRoot10 - 2.0 * p.alpha3 / kRoot10);
      break;
    }
    case 3:
      variance = squeezed * (0.5 * sq(e3) + 0.1 * sq(2.0 * e1 + 2.0 * e2 + e3)) +
                 anti * (0.1 * sq(e1 + e2 - 2.0 * e3) + 0.5 * sq(e1 - e2)) +
                 amp * (sq(1.0 - e1) + sq(1.0 - e2) + sq(1.0 - e3));
      denominator =
          p.theta * e3 * (2.0 * p.alpha2 / kRoot10 + p.beta2 / kRoot10 + p.beta4 / kRoot2);
      break;
    case 4:
      variance = squeezed * (0.5 * sq(e4) + 0.1 * sq(2.0 * e1 + 2.0 * e2 + e4)) +
                 anti * (0.1 * sq(e1 + e2 - 2.0 * e4) + 0.5 * sq(e1 - e2)) +
                 amp * (sq(1.0 - e1) + sq(1.0 - e2) + sq(1.0 - e4));
      denominator =
          p.theta * e4 * (2.0 * p.alpha2 / kRoot10 + p.beta2 / kRoot10 - p.beta4 / kRoot2);
      break;
    default:
      throw std::invalid_argument("cluster phase index must be 1..4, got " + std::to_string(k));
  }
  return checked_ratio(variance, denominator, "cluster closed form");
}

double nullifier_variance_as_printed(int k, const std::array<double, 4>& r) {
  auto term = [&](double weight, std::size_t mode) { return weight * std::exp(-2.0 * r[mode]); };
  switch (k) {
    case 1:
    case 2:
      return term(0.5, 0) + term(2.5, 1);
    case 3:
    case 4:
      return term(2.5, 2) + term(0.5, 3);
    default:
      throw std::invalid_argument("nullifier index must be 1..4, got " + std::to_string(k));
  }
}

double snl_reference(const EprParams& p, LossConvention convention) {
  return epr_sensitivity(with_variant(p, Variant::kSnl), convention).average;
}

double snl_reference(ClusterTarget target, const ClusterParams& p, LossConvention convention) {
  return target_sensitivity(target, with_variant(p, Variant::kSnl), convention);
}

std::vector<Discrepancy> discrepancy_report(const EprParams& epr, const ClusterParams& cluster) {
  std::vector<Discrepancy> out;
  const LossConvention physical = LossConvention::kPhysical;

  {
    const GaussianState state = build_epr_state(
        EprParams{.r1 = epr.r1, .r2 = epr.r2}, physical);
    const HomodyneReadout diff{{{0, 1.0, 0.0, 0.0}, {1, -1.0, 0.0, 0.0}}, 1.0};
    out.push_back({"two-mode correlation normalization",
                   "published Var(X1 - X2) omits the factor 2 of the raw beam-splitter output; "
                   "it equals the raw value divided by the two-mode vacuum variance",
                   epr_correlation_variance(epr.r1, epr.r2).x_difference,
                   estimator_moments(state, diff).variance});
  }
  {
    EprParams lossless = epr;
    lossless.eta1 = lossless.eta2 = 1.0;
    out.push_back({"two-mode slope denominator",
                   "published denominator carries a bare theta and no amplifier gain; the exact "
                   "slope is gain * sin(theta) * mean, and the published numerator is sqrt(2) "
                   "times the exact one at eta = 1",
                   or_nan([&] { return epr_sensitivity_as_printed(lossless); }),
                   or_nan([&] { return epr_sensitivity(lossless, physical).phase1.sigma; })});
  }
  {
    EprParams half = epr;
    half.eta1 = half.eta2 = 0.5;
    out.push_back({"two-mode vacuum weights",
                   "published vacuum terms use (1 - eta^2) while linear loss admixture gives "
                   "(1 - eta)^2; oracle column uses the linear convention at eta = 0.5",
                   or_nan([&] { return epr_sensitivity_as_printed(half); }),
                   or_nan([&] {
                     return epr_sensitivity(half, LossConvention::kPaperLinear).phase1.sigma;
                   })});
  }
  out.push_back({"cluster phase-2 vacuum indices",
                 "published phase-2 vacuum terms use modes {1,2,3}; its readout uses modes "
                 "{2,3,4} (corrected value in oracle column)",
                 or_nan([&] {
                   return cluster_sensitivity_as_printed(2, cluster, VacuumIndexPattern::kAsPrinted);
                 }),
                 or_nan([&] {
                   return cluster_sensitivity_as_printed(2, cluster, VacuumIndexPattern::kCorrected);
                 })});
  {
    ClusterParams lossless = cluster;
    lossless.eta.fill(1.0);
    for (int k = 1; k <= 4; ++k) {
      std::string detail = "published denominator carries a bare theta and no amplifier gain";
      if (k == 2) detail += "; its displacement combination can be negative and is used in absolute value";
      if (k >= 3) {
        detail += "; it contains beta2 where the exact mean of the phase quadrature has "
                  "-beta3/sqrt(10) and a negative alpha2 term";
      }
      out.push_back({fmt::format("cluster phase-{} slope denominator", k), detail,
                     or_nan([&] { return cluster_sensitivity_as_printed(k, lossless); }),
                     or_nan([&] { return phase_sensitivity(k, lossless, physical).sigma; })});
    }
  }
  return out;
}

std::string format_report(const std::vector<Discrepancy>& report) {
  std::ostringstream os;
  for (const Discrepancy& d : report) {
    os << fmt::format("[{}]\n  {}\n  published: {:.10g}\n  oracle:    {:.10g}\n", d.topic,
                      d.detail, d.printed, d.oracle);
  }
  return os.str();
}

}  // namespace cvsense

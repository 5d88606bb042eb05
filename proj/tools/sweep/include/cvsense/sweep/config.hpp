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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvsense/analytic.hpp"
#include "cvsense/gaussian_state.hpp"
#include "cvsense/params.hpp"

namespace cvsense::sweep {

enum class Scenario { kEpr, kCluster1d, kCluster2d };
enum class OutputFormat { kCsv, kSvg };

struct GridSpec {
  double start = 0.0;
  double stop = 0.95;
  double step = 0.01;
  bool operator==(const GridSpec&) const = default;
};

struct ColumnToggles {
  bool opa = true;
  bool noopa = true;
  bool snl = true;
  bool printed = true;
  bool operator==(const ColumnToggles&) const = default;
};

/// Everything needed to reproduce one sweep. The theta/phi/lo_scale/eta
/// fields inside `epr` and `cluster` are not read; resolved_epr() and
/// resolved_cluster() fill them from the detection settings.
struct SweepConfig {
  std::string name = "sweep";
  Scenario scenario = Scenario::kEpr;
  LossConvention convention = LossConvention::kPhysical;
  OutputFormat format = OutputFormat::kCsv;
  bool log_scale = false;

  double theta_deg = 1.5;
  double phi_deg = 90.0;
  double lo_scale = 1.0;

  EprParams epr;
  ClusterParams cluster;
  ClusterTarget target = ClusterTarget::average();
  VacuumIndexPattern printed_pattern = VacuumIndexPattern::kAsPrinted;
  /// 1-based swept modes for cluster-2d; the remaining modes keep cluster.eta.
  std::array<int, 2> axes{1, 2};

  GridSpec grid;
  ColumnToggles columns;

  bool operator==(const SweepConfig&) const = default;
};

/// Parse or validation failure. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, std::size_t line, const std::string& message);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

/// Parses a YAML document on top of `base` (defaults when omitted), rejects
/// unknown keys and validates the result.
SweepConfig parse_config(std::string_view text, const SweepConfig& base = SweepConfig{});

/// Canonical YAML with every field present; parse_config(print_config(c)) == c.
std::string print_config(const SweepConfig& config);

/// Throws ConfigError naming the offending field and bound.
void validate_config(const SweepConfig& config);

EprParams resolved_epr(const SweepConfig& config);
ClusterParams resolved_cluster(const SweepConfig& config);

std::string_view to_string(Scenario scenario);
std::string_view to_string(OutputFormat format);
std::string_view to_string(LossConvention convention);
Scenario parse_scenario(std::string_view text);
/// Throws std::invalid_argument for anything but "csv" or "svg".
OutputFormat parse_format(std::string_view text);
LossConvention parse_convention(std::string_view text);

}  // namespace cvsense::sweep

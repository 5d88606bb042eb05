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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cvsense/sweep/config.hpp"

namespace cvsense::sweep {

/// Column-oriented sweep output. The first `coordinate_columns` columns are
/// loss coordinates; a missing value marks a degenerate estimator.
struct Table {
  std::vector<std::string> header;
  std::size_t coordinate_columns = 1;
  std::vector<std::vector<std::optional<double>>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

struct ColumnStats {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t missing = 0;
};

struct RunSummary {
  std::size_t rows = 0;
  std::size_t warnings = 0;
  std::vector<ColumnStats> columns;
  /// Loss at which the unamplified curve first rises above the shot-noise
  /// curve (linear interpolation between grid points, 1D sweeps only).
  std::optional<double> crossover_loss;
  /// Grid location of the smallest amplified sensitivity (2D sweeps only).
  std::optional<std::pair<double, double>> optimum;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
};

struct RunResult {
  std::filesystem::path output;
  RunSummary summary;
};

/// Evaluates the configured sweep.
Table compute_table(const SweepConfig& config, unsigned threads = 1);

RunSummary summarize(const SweepConfig& config, const Table& table);

/// First upward crossing of `above` over `below` along `x`, interpolated
/// linearly between samples.
std::optional<double> find_crossover(const std::vector<double>& x,
                                     const std::vector<double>& above,
                                     const std::vector<double>& below);

/// Computes the table, writes <out_dir>/<name>.<csv|svg> and returns the
/// summary. Throws std::runtime_error naming the path on I/O failure.
RunResult run(const SweepConfig& config, const RunOptions& options);

std::string format_summary(const RunResult& result);

}  // namespace cvsense::sweep

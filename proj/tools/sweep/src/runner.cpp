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

#include "cvsense/sweep/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cvsense/cluster.hpp"
#include "cvsense/epr.hpp"
#include "cvsense/sweep/plotdata.hpp"

namespace cvsense::sweep {
namespace {

using Cell = std::optional<double>;

std::optional<double> db_ratio(const Cell& sigma, const Cell& reference) {
  if (!sigma || !reference || *reference <= 0.0 || *sigma <= 0.0) return std::nullopt;
  return 20.0 * std::log10(*sigma / *reference);
}

struct Columns {
  Cell opa, noopa, snl, printed;
};

// Appends the enabled sigma columns followed by the dB-relative-to-SNL ones.
void append_header(const ColumnToggles& on, std::vector<std::string>& header) {
  if (on.opa) header.emplace_back("sigma_opa");
  if (on.noopa) header.emplace_back("sigma_noopa");
  if (on.snl) header.emplace_back("sigma_snl");
  if (on.printed) header.emplace_back("sigma_closed_form");
  if (on.snl && on.opa) header.emplace_back("opa_db_vs_snl");
  if (on.snl && on.noopa) header.emplace_back("noopa_db_vs_snl");
}

void append_cells(const ColumnToggles& on, const Columns& v, std::vector<Cell>& row) {
  if (on.opa) row.push_back(v.opa);
  if (on.noopa) row.push_back(v.noopa);
  if (on.snl) row.push_back(v.snl);
  if (on.printed) row.push_back(v.printed);
  if (on.snl && on.opa) row.push_back(db_ratio(v.opa, v.snl));
  if (on.snl && on.noopa) row.push_back(db_ratio(v.noopa, v.snl));
}

ClusterScenario cluster_scenario(const SweepConfig& config, unsigned threads) {
  ClusterScenario s;
  s.params = resolved_cluster(config);
  s.convention = config.convention;
  s.target = config.target;
  s.printed_pattern = config.printed_pattern;
  s.losses = loss_grid(config.grid.start, config.grid.stop, config.grid.step);
  s.axes = {static_cast<std::size_t>(config.axes[0] - 1),
            static_cast<std::size_t>(config.axes[1] - 1)};
  s.threads = threads;
  return s;
}

}  // namespace

std::optional<std::size_t> Table::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

Table compute_table(const SweepConfig& config, unsigned threads) {
  validate_config(config);
  Table table;
  switch (config.scenario) {
    case Scenario::kEpr: {
      EprScenario s;
      s.params = resolved_epr(config);
      s.convention = config.convention;
      s.losses = loss_grid(config.grid.start, config.grid.stop, config.grid.step);
      s.threads = threads;
      table.header = {"loss"};
      table.coordinate_columns = 1;
      append_header(config.columns, table.header);
      for (const EprSweepRow& r : sweep_epr(s)) {
        std::vector<Cell> row{r.loss};
        append_cells(config.columns, {r.with_opa, r.without_opa, r.snl, r.as_printed}, row);
        table.rows.push_back(std::move(row));
      }
      break;
    }
    case Scenario::kCluster1d:
    case Scenario::kCluster2d: {
      const bool surface = config.scenario == Scenario::kCluster2d;
      const ClusterScenario s = cluster_scenario(config, threads);
      table.header = surface ? std::vector<std::string>{"loss1", "loss2"}
                             : std::vector<std::string>{"loss"};
      table.coordinate_columns = table.header.size();
      append_header(config.columns, table.header);
      for (const ClusterSweepRow& r : surface ? sweep_cluster_2d(s) : sweep_cluster_1d(s)) {
        std::vector<Cell> row{r.loss1};
        if (surface) row.emplace_back(r.loss2);
        append_cells(config.columns, {r.with_opa, r.without_opa, r.snl, r.as_printed}, row);
        table.rows.push_back(std::move(row));
      }
      break;
    }
  }
  return table;
}

std::optional<double> find_crossover(const std::vector<double>& x,
                                     const std::vector<double>& above,
                                     const std::vector<double>& below) {
  const std::size_t n = std::min({x.size(), above.size(), below.size()});
  for (std::size_t i = 0; i < n; ++i) {
    const double d = above[i] - below[i];
    if (d <= 0.0) continue;
    if (i == 0) return x[0];
    const double prev = above[i - 1] - below[i - 1];
    return x[i - 1] + (x[i] - x[i - 1]) * (-prev) / (d - prev);
  }
  return std::nullopt;
}

RunSummary summarize(const SweepConfig& config, const Table& table) {
  RunSummary summary;
  summary.rows = table.rows.size();
  for (std::size_t c = table.coordinate_columns; c < table.header.size(); ++c) {
    ColumnStats stats{table.header[c], std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(), 0};
    for (const auto& row : table.rows) {
      if (!row[c]) {
        ++stats.missing;
        continue;
      }
      stats.min = std::min(stats.min, *row[c]);
      stats.max = std::max(stats.max, *row[c]);
    }
    if (table.header[c].rfind("sigma_", 0) == 0) summary.warnings += stats.missing;
    summary.columns.push_back(std::move(stats));
  }

  const auto noopa = table.column("sigma_noopa");
  const auto snl = table.column("sigma_snl");
  const auto opa = table.column("sigma_opa");
  if (config.scenario != Scenario::kCluster2d && noopa && snl) {
    std::vector<double> x, above, below;
    for (const auto& row : table.rows) {
      if (!row[*noopa] || !row[*snl]) continue;
      x.push_back(*row[0]);
      above.push_back(*row[*noopa]);
      below.push_back(*row[*snl]);
    }
    summary.crossover_loss = find_crossover(x, above, below);
  }
  if (config.scenario == Scenario::kCluster2d && opa) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
      if (row[*opa] && *row[*opa] < best) {
        best = *row[*opa];
        summary.optimum = std::make_pair(*row[0], *row[1]);
      }
    }
  }
  return summary;
}

RunResult run(const SweepConfig& config, const RunOptions& options) {
  const Table table = compute_table(config, options.threads);
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + options.out_dir.string() +
                             ": " + ec.message());
  }
  RunResult result;
  result.output = options.out_dir / (config.name + "." + std::string(to_string(config.format)));
  emit_plotdata(table, config.format, result.output,
                config.name + " (" + std::string(to_string(config.scenario)) + ")",
                config.log_scale);
  result.summary = summarize(config, table);
  return result;
}

std::string format_summary(const RunResult& result) {
  std::ostringstream os;
  const RunSummary& s = result.summary;
  os << fmt::format("wrote {} ({} rows)\n", result.output.string(), s.rows);
  for (const ColumnStats& c : s.columns) {
    if (c.missing == s.rows) {
      os << fmt::format("  {:<18} no values\n", c.name);
    } else {
      os << fmt::format("  {:<18} min {:.6g}  max {:.6g}{}\n", c.name, c.min, c.max,
                        c.missing ? fmt::format("  ({} missing)", c.missing) : "");
    }
  }
  if (s.crossover_loss) os << fmt::format("  unamplified curve crosses shot noise at loss {:.4f}\n", *s.crossover_loss);
  if (s.optimum) {
    os << fmt::format("  amplified optimum at loss ({:.2f}, {:.2f})\n", s.optimum->first,
                      s.optimum->second);
  }
  if (s.warnings) os << fmt::format("  {} degenerate estimator value(s) left empty\n", s.warnings);
  return os.str();
}

}  // namespace cvsense::sweep

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

#include "cvsense/sweep/plotdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace cvsense::sweep {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#ff7f0e", "#2ca02c",
                                             "#d62728", "#9467bd", "#8c564b"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<Series> line_series(const Table& table) {
  std::vector<Series> series;
  if (table.coordinate_columns == 1) {
    for (std::size_t c = 1; c < table.header.size(); ++c) {
      if (table.header[c].rfind("sigma_", 0) != 0) continue;
      Series s{table.header[c], {}};
      for (const auto& row : table.rows) {
        if (row[0] && row[c]) s.points.emplace_back(*row[0], *row[c]);
      }
      series.push_back(std::move(s));
    }
    return series;
  }
  const auto opa = table.column("sigma_opa");
  const std::size_t col = opa ? *opa : table.coordinate_columns;
  std::set<double> second;
  for (const auto& row : table.rows) second.insert(*row[1]);
  const std::vector<double> levels(second.begin(), second.end());
  std::set<std::size_t> picks;
  for (std::size_t q = 0; q <= 4; ++q) picks.insert(q * (levels.size() - 1) / 4);
  for (std::size_t idx : picks) {
    Series s{fmt::format("{} at {}={:.2f}", table.header[col], table.header[1], levels[idx]), {}};
    for (const auto& row : table.rows) {
      if (*row[1] == levels[idx] && row[col]) s.points.emplace_back(*row[0], *row[col]);
    }
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += fmt::format("{:.17g}", *row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_svg(const Table& table, const std::string& title, bool log_scale) {
  const std::vector<Series> series = line_series(table);
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  auto ty = [&](double y) { return log_scale ? std::log10(y) : y; };
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (log_scale && !(y > 0.0)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, ty(y));
      y_max = std::max(y_max, ty(y));
    }
  }
  if (!std::isfinite(x_min)) x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{:.1f}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     kLeft + plot_w / 2, escape(title));
  out += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      kLeft, kTop, plot_w, plot_h);
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>"
        "<text x=\"{0:.1f}\" y=\"{3:.1f}\" text-anchor=\"middle\">{4:.2f}</text>\n",
        px(xv), kTop + plot_h, kTop + plot_h + 5, kTop + plot_h + 20, xv);
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>"
        "<text x=\"{3:.1f}\" y=\"{4:.1f}\" text-anchor=\"end\">{5:.4g}</text>\n",
        kLeft - 5, py(yv), kLeft, kLeft - 8, py(yv) + 4, log_scale ? std::pow(10.0, yv) : yv);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 15, escape(table.header.front()));
  out += fmt::format(
      "<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1f})\">"
      "sigma{1}</text>\n",
      kTop + plot_h / 2, log_scale ? " (log scale)" : "");

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % kColors.size()];
    std::string points;
    for (const auto& [x, y] : series[i].points) {
      if (log_scale && !(y > 0.0)) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(x), py(ty(y)));
    }
    if (!points.empty()) points.pop_back();
    out += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color,
        points);
    const double ly = kTop + 15.0 + 18.0 * static_cast<double>(i);
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" "
        "stroke-width=\"2\"/><text x=\"{4:.1f}\" y=\"{5:.1f}\">{6}</text>\n",
        kWidth - kRight + 10, ly, kWidth - kRight + 30, color, kWidth - kRight + 35, ly + 4,
        escape(series[i].label));
  }
  out += "</svg>\n";
  return out;
}

void emit_plotdata(const Table& table, OutputFormat format, const std::filesystem::path& path,
                   const std::string& title, bool log_scale) {
  if (table.rows.empty()) throw std::invalid_argument("cannot emit an empty table");
  std::string text;
  switch (format) {
    case OutputFormat::kCsv:
      text = to_csv(table);
      break;
    case OutputFormat::kSvg:
      text = to_svg(table, title, log_scale);
      break;
    default:
      throw std::invalid_argument("unsupported output format");
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cvsense::sweep

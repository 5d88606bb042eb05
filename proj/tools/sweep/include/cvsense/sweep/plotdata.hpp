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

#include <filesystem>
#include <string>

#include "cvsense/sweep/config.hpp"
#include "cvsense/sweep/runner.hpp"

namespace cvsense::sweep {

/// Header row plus one line per row, comma separated, '\n' line endings,
/// numbers with 17 significant digits, empty field for missing values.
std::string to_csv(const Table& table);

/// Minimal SVG line chart of every sigma column against the first coordinate.
/// 2D tables are drawn as slices of the amplified column at a few values of
/// the second coordinate.
std::string to_svg(const Table& table, const std::string& title, bool log_scale);

/// Writes the table in `format` to `path`. Throws std::invalid_argument for an
/// empty table and std::runtime_error on I/O failure.
void emit_plotdata(const Table& table, OutputFormat format, const std::filesystem::path& path,
                   const std::string& title = "", bool log_scale = false);

}  // namespace cvsense::sweep

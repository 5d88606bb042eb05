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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cvsense/sweep/config.hpp"

namespace cvsense::sweep {

struct Preset {
  std::string_view name;
  std::string_view description;
};

/// Bundled figure presets, in listing order.
std::span<const Preset> presets();

/// Throws std::invalid_argument for an unknown name.
SweepConfig preset_config(std::string_view name);

}  // namespace cvsense::sweep

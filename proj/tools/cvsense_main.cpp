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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvsense/analytic.hpp"
#include "cvsense/sweep/config.hpp"
#include "cvsense/sweep/presets.hpp"
#include "cvsense/sweep/runner.hpp"

namespace {

using namespace cvsense::sweep;

constexpr const char* kOutDirEnv = "CVSENSE_OUT_DIR";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Preset (if any) is the base; a config file overrides it key by key.
SweepConfig load(const std::string& config_path, const std::string& preset) {
  SweepConfig base = preset.empty() ? SweepConfig{} : preset_config(preset);
  if (config_path.empty()) return base;
  try {
    return parse_config(read_file(config_path), base);
  } catch (const ConfigError& e) {
    throw std::runtime_error(config_path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loss-tolerant multi-phase estimation sweeps for amplified CV entangled states"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::string format;
  std::string convention;
  unsigned threads = 1;
  bool log_scale = false;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a sweep and write CSV or SVG output");
  run_cmd->add_option("config", config_path, "YAML sweep configuration")->check(CLI::ExistingFile);
  run_cmd->add_option("--preset", preset, "Start from a bundled preset (see `presets list`)");
  run_cmd->add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  run_cmd->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  run_cmd->add_option("--convention", convention, "physical or paper-linear")
      ->check(CLI::IsMember({"physical", "paper-linear"}));
  run_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run_cmd->add_flag("--log-scale", log_scale, "Logarithmic sigma axis for SVG output");

  CLI::App* presets_cmd = app.add_subcommand("presets", "List or print bundled presets");
  presets_cmd->require_subcommand(1);
  CLI::App* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  std::string show_name;
  CLI::App* show_cmd = presets_cmd->add_subcommand("show", "Print a preset as YAML");
  show_cmd->add_option("name", show_name)->required();

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a configuration and echo it with defaults");
  validate_cmd->add_option("config", validate_path)->required()->check(CLI::ExistingFile);

  std::string report_preset_epr = "fig2";
  std::string report_preset_cluster = "fig5a";
  CLI::App* report_cmd =
      app.add_subcommand("report", "Compare published closed forms with the exact oracle");
  report_cmd->add_option("--epr-preset", report_preset_epr, "Two-mode preset");
  report_cmd->add_option("--cluster-preset", report_preset_cluster, "Cluster preset");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (config_path.empty() && preset.empty()) {
        std::cerr << "run: give a config file, --preset, or both\n";
        return 2;
      }
      SweepConfig config = load(config_path, preset);
      if (!format.empty()) config.format = parse_format(format);
      if (!convention.empty()) config.convention = parse_convention(convention);
      if (log_scale) config.log_scale = true;
      RunOptions options;
      options.threads = threads;
      if (!out_dir.empty()) {
        options.out_dir = out_dir;
      } else if (const char* env = std::getenv(kOutDirEnv); env && *env) {
        options.out_dir = env;
      }
      const RunResult result = run(config, options);
      std::cout << format_summary(result);
      if (result.summary.warnings) {
        std::cerr << fmt::format("warning: {} degenerate estimator value(s)\n",
                                 result.summary.warnings);
      }
      return 0;
    }
    if (*list_cmd) {
      for (const Preset& p : presets()) std::cout << fmt::format("{:<8} {}\n", p.name, p.description);
      return 0;
    }
    if (*show_cmd) {
      std::cout << print_config(preset_config(show_name));
      return 0;
    }
    if (*validate_cmd) {
      std::cout << print_config(load(validate_path, ""));
      return 0;
    }
    if (*report_cmd) {
      const cvsense::EprParams epr = resolved_epr(preset_config(report_preset_epr));
      const cvsense::ClusterParams cluster = resolved_cluster(preset_config(report_preset_cluster));
      std::cout << cvsense::format_report(cvsense::discrepancy_report(epr, cluster));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

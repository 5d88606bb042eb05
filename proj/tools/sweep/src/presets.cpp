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

#include "cvsense/sweep/presets.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace cvsense::sweep {
namespace {

constexpr std::array<Preset, 8> kPresets{{
    {"fig2", "two-mode EPR, average of both phases vs equal loss (r=1, r'=4.6, beta=(1,5))"},
    {"fig4", "alias of fig4a"},
    {"fig4a", "square cluster, phase 1 vs common loss (r=1, r'=3, beta1=1, beta2=alpha3=2)"},
    {"fig4b", "square cluster, average of four phases vs common loss"},
    {"fig5a", "square cluster average vs losses on modes 1 and 2, eta3=eta4=0.5"},
    {"fig5b", "square cluster average vs losses on modes 2 and 3, eta1=eta4=0.5"},
    {"fig5c", "square cluster average vs losses on modes 2 and 4, eta1=eta3=0.5"},
    {"fig5d", "square cluster average vs losses on modes 3 and 4, eta1=eta2=0.5"},
}};

SweepConfig cluster_base(std::string name) {
  SweepConfig c;
  c.name = std::move(name);
  c.scenario = Scenario::kCluster1d;
  c.theta_deg = 1.5;
  c.cluster.r = 1.0;
  c.cluster.r_prime = 3.0;
  c.cluster.beta1 = 1.0;
  c.cluster.beta2 = 2.0;
  c.cluster.alpha3 = 2.0;
  return c;
}

SweepConfig surface(std::string name, int a, int b) {
  SweepConfig c = cluster_base(std::move(name));
  c.scenario = Scenario::kCluster2d;
  c.cluster.alpha2 = 1.0;
  c.cluster.beta4 = 3.0;
  c.target = ClusterTarget::average();
  c.axes = {a, b};
  c.cluster.eta = {0.5, 0.5, 0.5, 0.5};
  c.cluster.eta[static_cast<std::size_t>(a - 1)] = 1.0;
  c.cluster.eta[static_cast<std::size_t>(b - 1)] = 1.0;
  return c;
}

}  // namespace

std::span<const Preset> presets() { return kPresets; }

SweepConfig preset_config(std::string_view name) {
  if (name == "fig2") {
    SweepConfig c;
    c.name = "fig2";
    c.scenario = Scenario::kEpr;
    c.theta_deg = 1.5;
    c.phi_deg = 90.0;
    c.epr.r1 = 1.0;
    c.epr.r2 = 1.0;
    c.epr.r3 = 4.6;
    c.epr.r4 = 4.6;
    c.epr.beta1 = 1.0;
    c.epr.beta2 = 5.0;
    return c;
  }
  if (name == "fig4" || name == "fig4a") {
    SweepConfig c = cluster_base(std::string(name));
    c.target = ClusterTarget::phase(1);
    return c;
  }
  if (name == "fig4b") {
    // Phases 3 and 4 need alpha2 and beta4; take them from the surface presets.
    SweepConfig c = cluster_base("fig4b");
    c.cluster.alpha2 = 1.0;
    c.cluster.beta4 = 3.0;
    c.target = ClusterTarget::average();
    return c;
  }
  if (name == "fig5a") return surface("fig5a", 1, 2);
  if (name == "fig5b") return surface("fig5b", 2, 3);
  if (name == "fig5c") return surface("fig5c", 2, 4);
  if (name == "fig5d") return surface("fig5d", 3, 4);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace cvsense::sweep

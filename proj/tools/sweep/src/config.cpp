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

#include "cvsense/sweep/config.hpp"

#include <cctype>
#include <cmath>
#include <initializer_list>
#include <map>
#include <string>

#include <yaml-cpp/yaml.h>

namespace cvsense::sweep {
namespace {

using LineMap = std::map<std::string, std::size_t>;

std::size_t line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

class Reader {
 public:
  explicit Reader(LineMap& lines) : lines_(lines) {}

  // Rejects keys outside `allowed`; returns false when the section is absent.
  bool section(const YAML::Node& node, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
    if (!node) return false;
    if (!node.IsMap()) throw ConfigError(path, line_of(node), "expected a mapping");
    for (const auto& entry : node) {
      const std::string key = entry.first.as<std::string>();
      bool known = false;
      for (std::string_view a : allowed) known = known || key == a;
      if (!known) {
        const std::string field = path.empty() ? key : path + "." + key;
        throw ConfigError(field, line_of(entry.first), "unknown key '" + key + "'");
      }
    }
    return true;
  }

  void number(const YAML::Node& parent, const char* key, const std::string& field, double& out) {
    const YAML::Node node = parent[key];
    if (!node) return;
    lines_[field] = line_of(node);
    try {
      out = node.as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field, line_of(node), "expected a number");
    }
  }

  void boolean(const YAML::Node& parent, const char* key, const std::string& field, bool& out) {
    const YAML::Node node = parent[key];
    if (!node) return;
    lines_[field] = line_of(node);
    try {
      out = node.as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field, line_of(node), "expected true or false");
    }
  }

  template <typename Parse>
  void word(const YAML::Node& parent, const char* key, const std::string& field, Parse&& parse) {
    const YAML::Node node = parent[key];
    if (!node) return;
    lines_[field] = line_of(node);
    try {
      parse(node.as<std::string>());
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(field, line_of(node), e.what());
    }
  }

  template <typename T, std::size_t N>
  void array(const YAML::Node& parent, const char* key, const std::string& field,
             std::array<T, N>& out) {
    const YAML::Node node = parent[key];
    if (!node) return;
    lines_[field] = line_of(node);
    if (!node.IsSequence() || node.size() != N) {
      throw ConfigError(field, line_of(node), "expected a list of " + std::to_string(N) + " values");
    }
    for (std::size_t i = 0; i < N; ++i) {
      try {
        out[i] = node[i].as<T>();
      } catch (const YAML::Exception&) {
        throw ConfigError(field, line_of(node[i]), "expected a number");
      }
    }
  }

 private:
  LineMap& lines_;
};

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, 0, message);
}

void require_finite(double value, const std::string& field) {
  require(std::isfinite(value), field, "must be a finite number");
}

}  // namespace

ConfigError::ConfigError(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + field + ": " + message
                                  : field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kEpr:
      return "epr";
    case Scenario::kCluster1d:
      return "cluster-1d";
    case Scenario::kCluster2d:
      return "cluster-2d";
  }
  return "epr";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "svg";
}

std::string_view to_string(LossConvention convention) {
  return convention == LossConvention::kPhysical ? "physical" : "paper-linear";
}

Scenario parse_scenario(std::string_view text) {
  if (text == "epr") return Scenario::kEpr;
  if (text == "cluster-1d") return Scenario::kCluster1d;
  if (text == "cluster-2d") return Scenario::kCluster2d;
  throw std::invalid_argument("unknown scenario '" + std::string(text) +
                              "' (expected epr, cluster-1d or cluster-2d)");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "svg") return OutputFormat::kSvg;
  throw std::invalid_argument("unsupported output format '" + std::string(text) +
                              "' (expected csv or svg)");
}

LossConvention parse_convention(std::string_view text) {
  if (text == "physical") return LossConvention::kPhysical;
  if (text == "paper-linear") return LossConvention::kPaperLinear;
  throw std::invalid_argument("unknown loss convention '" + std::string(text) +
                              "' (expected physical or paper-linear)");
}

SweepConfig parse_config(std::string_view text, const SweepConfig& base) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", static_cast<std::size_t>(e.mark.line) + 1, e.msg);
  }
  SweepConfig c = base;
  if (!root || root.IsNull()) {
    validate_config(c);
    return c;
  }
  LineMap lines;
  Reader r(lines);
  r.section(root, "", {"name", "scenario", "convention", "output", "detection", "epr",
                       "cluster", "grid", "columns"});

  r.word(root, "name", "name", [&](const std::string& s) { c.name = s; });
  r.word(root, "scenario", "scenario", [&](const std::string& s) { c.scenario = parse_scenario(s); });
  r.word(root, "convention", "convention",
         [&](const std::string& s) { c.convention = parse_convention(s); });

  if (const YAML::Node out = root["output"]; r.section(out, "output", {"format", "log_scale"})) {
    r.word(out, "format", "output.format", [&](const std::string& s) { c.format = parse_format(s); });
    r.boolean(out, "log_scale", "output.log_scale", c.log_scale);
  }
  if (const YAML::Node det = root["detection"];
      r.section(det, "detection", {"theta_deg", "phi_deg", "lo_scale"})) {
    r.number(det, "theta_deg", "detection.theta_deg", c.theta_deg);
    r.number(det, "phi_deg", "detection.phi_deg", c.phi_deg);
    r.number(det, "lo_scale", "detection.lo_scale", c.lo_scale);
  }
  if (const YAML::Node e = root["epr"];
      r.section(e, "epr", {"r1", "r2", "r3", "r4", "alpha1", "alpha2", "beta1", "beta2", "sign"})) {
    r.number(e, "r1", "epr.r1", c.epr.r1);
    r.number(e, "r2", "epr.r2", c.epr.r2);
    r.number(e, "r3", "epr.r3", c.epr.r3);
    r.number(e, "r4", "epr.r4", c.epr.r4);
    r.number(e, "alpha1", "epr.alpha1", c.epr.alpha1);
    r.number(e, "alpha2", "epr.alpha2", c.epr.alpha2);
    r.number(e, "beta1", "epr.beta1", c.epr.beta1);
    r.number(e, "beta2", "epr.beta2", c.epr.beta2);
    r.word(e, "sign", "epr.sign", [&](const std::string& s) {
      if (s == "plus") {
        c.epr.sign = JointSign::kPlus;
      } else if (s == "minus") {
        c.epr.sign = JointSign::kMinus;
      } else {
        throw std::invalid_argument("expected plus or minus");
      }
    });
  }
  if (const YAML::Node cl = root["cluster"];
      r.section(cl, "cluster", {"r", "r_prime", "beta1", "beta2", "alpha2", "alpha3", "beta4",
                                "target", "vacuum_indices", "eta", "axes"})) {
    r.number(cl, "r", "cluster.r", c.cluster.r);
    r.number(cl, "r_prime", "cluster.r_prime", c.cluster.r_prime);
    r.number(cl, "beta1", "cluster.beta1", c.cluster.beta1);
    r.number(cl, "beta2", "cluster.beta2", c.cluster.beta2);
    r.number(cl, "alpha2", "cluster.alpha2", c.cluster.alpha2);
    r.number(cl, "alpha3", "cluster.alpha3", c.cluster.alpha3);
    r.number(cl, "beta4", "cluster.beta4", c.cluster.beta4);
    r.word(cl, "target", "cluster.target", [&](const std::string& s) {
      if (s == "average") {
        c.target = ClusterTarget::average();
        return;
      }
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(s, &used);
        if (used != s.size()) k = 0;
      } catch (const std::exception&) {
        k = 0;
      }
      if (k < 1 || k > 4) throw std::invalid_argument("expected average or a phase index 1..4");
      c.target = ClusterTarget::phase(k);
    });
    r.word(cl, "vacuum_indices", "cluster.vacuum_indices", [&](const std::string& s) {
      if (s == "as-printed") {
        c.printed_pattern = VacuumIndexPattern::kAsPrinted;
      } else if (s == "corrected") {
        c.printed_pattern = VacuumIndexPattern::kCorrected;
      } else {
        throw std::invalid_argument("expected as-printed or corrected");
      }
    });
    r.array(cl, "eta", "cluster.eta", c.cluster.eta);
    r.array(cl, "axes", "cluster.axes", c.axes);
  }
  if (const YAML::Node g = root["grid"]; r.section(g, "grid", {"start", "stop", "step"})) {
    r.number(g, "start", "grid.start", c.grid.start);
    r.number(g, "stop", "grid.stop", c.grid.stop);
    r.number(g, "step", "grid.step", c.grid.step);
  }
  if (const YAML::Node col = root["columns"];
      r.section(col, "columns", {"opa", "noopa", "snl", "printed"})) {
    r.boolean(col, "opa", "columns.opa", c.columns.opa);
    r.boolean(col, "noopa", "columns.noopa", c.columns.noopa);
    r.boolean(col, "snl", "columns.snl", c.columns.snl);
    r.boolean(col, "printed", "columns.printed", c.columns.printed);
  }

  try {
    validate_config(c);
  } catch (const ConfigError& e) {
    const auto it = lines.find(e.field());
    const std::string message = e.what();
    const std::string prefix = e.field() + ": ";
    throw ConfigError(e.field(), it == lines.end() ? 0 : it->second,
                      message.substr(message.find(prefix) == 0 ? prefix.size() : 0));
  }
  return c;
}

void validate_config(const SweepConfig& c) {
  require(!c.name.empty(), "name", "must not be empty");
  for (char ch : c.name) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    require(ok, "name", "may only contain letters, digits, '-', '_' and '.'");
  }
  require_finite(c.theta_deg, "detection.theta_deg");
  require_finite(c.phi_deg, "detection.phi_deg");
  require(std::isfinite(c.lo_scale) && c.lo_scale > 0.0, "detection.lo_scale", "must be > 0");

  const std::pair<double, const char*> epr_fields[] = {
      {c.epr.r1, "epr.r1"},         {c.epr.r2, "epr.r2"},         {c.epr.r3, "epr.r3"},
      {c.epr.r4, "epr.r4"},         {c.epr.alpha1, "epr.alpha1"}, {c.epr.alpha2, "epr.alpha2"},
      {c.epr.beta1, "epr.beta1"},   {c.epr.beta2, "epr.beta2"}};
  for (const auto& [v, f] : epr_fields) require_finite(v, f);
  const std::pair<double, const char*> cluster_fields[] = {
      {c.cluster.r, "cluster.r"},           {c.cluster.r_prime, "cluster.r_prime"},
      {c.cluster.beta1, "cluster.beta1"},   {c.cluster.beta2, "cluster.beta2"},
      {c.cluster.alpha2, "cluster.alpha2"}, {c.cluster.alpha3, "cluster.alpha3"},
      {c.cluster.beta4, "cluster.beta4"}};
  for (const auto& [v, f] : cluster_fields) require_finite(v, f);
  for (double eta : c.cluster.eta) {
    require(eta >= 0.0 && eta <= 1.0, "cluster.eta", "each transmissivity must lie in [0, 1]");
  }
  for (int a : c.axes) require(a >= 1 && a <= 4, "cluster.axes", "modes must lie in 1..4");
  require(c.axes[0] != c.axes[1], "cluster.axes", "modes must be distinct");

  require(std::isfinite(c.grid.start) && c.grid.start >= 0.0, "grid.start", "must be >= 0");
  require(std::isfinite(c.grid.stop) && c.grid.stop <= 1.0, "grid.stop", "must be <= 1");
  require(std::isfinite(c.grid.step) && c.grid.step > 0.0, "grid.step", "must be > 0");
  require(c.grid.stop >= c.grid.start, "grid.stop", "must be >= grid.start");
  require(c.columns.opa || c.columns.noopa || c.columns.snl || c.columns.printed, "columns",
          "at least one column must be enabled");
}

std::string print_config(const SweepConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << c.name;
  out << YAML::Key << "scenario" << YAML::Value << std::string(to_string(c.scenario));
  out << YAML::Key << "convention" << YAML::Value << std::string(to_string(c.convention));

  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "format" << YAML::Value << std::string(to_string(c.format));
  out << YAML::Key << "log_scale" << YAML::Value << c.log_scale;
  out << YAML::EndMap;

  out << YAML::Key << "detection" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "theta_deg" << YAML::Value << c.theta_deg;
  out << YAML::Key << "phi_deg" << YAML::Value << c.phi_deg;
  out << YAML::Key << "lo_scale" << YAML::Value << c.lo_scale;
  out << YAML::EndMap;

  out << YAML::Key << "epr" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r1" << YAML::Value << c.epr.r1;
  out << YAML::Key << "r2" << YAML::Value << c.epr.r2;
  out << YAML::Key << "r3" << YAML::Value << c.epr.r3;
  out << YAML::Key << "r4" << YAML::Value << c.epr.r4;
  out << YAML::Key << "alpha1" << YAML::Value << c.epr.alpha1;
  out << YAML::Key << "alpha2" << YAML::Value << c.epr.alpha2;
  out << YAML::Key << "beta1" << YAML::Value << c.epr.beta1;
  out << YAML::Key << "beta2" << YAML::Value << c.epr.beta2;
  out << YAML::Key << "sign" << YAML::Value
      << (c.epr.sign == JointSign::kPlus ? "plus" : "minus");
  out << YAML::EndMap;

  out << YAML::Key << "cluster" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r" << YAML::Value << c.cluster.r;
  out << YAML::Key << "r_prime" << YAML::Value << c.cluster.r_prime;
  out << YAML::Key << "beta1" << YAML::Value << c.cluster.beta1;
  out << YAML::Key << "beta2" << YAML::Value << c.cluster.beta2;
  out << YAML::Key << "alpha2" << YAML::Value << c.cluster.alpha2;
  out << YAML::Key << "alpha3" << YAML::Value << c.cluster.alpha3;
  out << YAML::Key << "beta4" << YAML::Value << c.cluster.beta4;
  out << YAML::Key << "target" << YAML::Value
      << (c.target.is_average() ? std::string("average") : std::to_string(c.target.phase_index()));
  out << YAML::Key << "vacuum_indices" << YAML::Value
      << (c.printed_pattern == VacuumIndexPattern::kAsPrinted ? "as-printed" : "corrected");
  out << YAML::Key << "eta" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double eta : c.cluster.eta) out << eta;
  out << YAML::EndSeq;
  out << YAML::Key << "axes" << YAML::Value << YAML::Flow << YAML::BeginSeq << c.axes[0]
      << c.axes[1] << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << c.grid.start;
  out << YAML::Key << "stop" << YAML::Value << c.grid.stop;
  out << YAML::Key << "step" << YAML::Value << c.grid.step;
  out << YAML::EndMap;

  out << YAML::Key << "columns" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "opa" << YAML::Value << c.columns.opa;
  out << YAML::Key << "noopa" << YAML::Value << c.columns.noopa;
  out << YAML::Key << "snl" << YAML::Value << c.columns.snl;
  out << YAML::Key << "printed" << YAML::Value << c.columns.printed;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

EprParams resolved_epr(const SweepConfig& config) {
  EprParams p = config.epr;
  p.theta = degrees(config.theta_deg);
  p.phi = degrees(config.phi_deg);
  p.lo_scale = config.lo_scale;
  return p;
}

ClusterParams resolved_cluster(const SweepConfig& config) {
  ClusterParams p = config.cluster;
  p.theta = degrees(config.theta_deg);
  p.lo_scale = config.lo_scale;
  return p;
}

}  // namespace cvsense::sweep

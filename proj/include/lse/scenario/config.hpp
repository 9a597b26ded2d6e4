// Copyright 2026 The lsechain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lse/errors.hpp"
#include "lse/model_params.hpp"

namespace lse::scenario {

enum class ScenarioKind { Fig2, Fig3a, Fig3b, Fig4, Verify, BaeScan, Custom };

std::string_view to_string(ScenarioKind kind);
/// Throws ArgumentError on an unknown name.
ScenarioKind parse_scenario_kind(std::string_view text);

/// Particle-number rule: "L/<d>" or a fixed integer "<m>".
struct MRule {
  int divisor = 0;  // > 0 for "L/<d>"
  int fixed = 0;    // used when divisor == 0

  /// Number of particles at length L; -1 when L is not divisible by the
  /// divisor.
  int evaluate(int L) const;
  std::string text() const;
  bool operator==(const MRule&) const = default;
};
MRule parse_m_rule(std::string_view text);

/// Boundary-coupling rule: "<c>", "<c>*J_L", "<c>*J_R", "J_L" or "J_R".
/// J_L and J_R are evaluated at the grid point's phi.
struct DeltaRule {
  enum class Scale { Absolute, JLeft, JRight };
  double coefficient = 0.0;
  Scale scale = Scale::Absolute;

  double evaluate(double J, double phi) const;
  std::string text() const;
  bool operator==(const DeltaRule&) const = default;
};
DeltaRule parse_delta_rule(std::string_view text);

/// Fully resolved scenario configuration.
///
/// Text grammar (one assignment per line):
///   line    := blank | '#' comment | key '=' value
///   value   := item (',' item)* ; optional surrounding double quotes
///   range   := start ':' step ':' stop  (numeric lists only, inclusive)
/// Keys absent from the file take scenario-specific defaults.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Verify;
  std::vector<int> L;
  MRule M_rule;
  std::vector<double> phi;
  std::vector<DeltaRule> deltaL;
  std::vector<DeltaRule> deltaR;
  Boundary bc = Boundary::Open;
  double J = 1.0;
  // Solver options.
  double steady_tolerance = 1e-9;
  int steady_max_iterations = 4000;
  std::size_t steady_dense_limit = 2500;
  std::size_t dense_cap = 2000;
  double root_tolerance = 1e-10;
  double match_tolerance = 1e-8;
  /// custom: also write the full spectrum of every grid point.
  bool spectrum = false;
  std::string output_dir = "lse-out";

  bool operator==(const ScenarioConfig&) const = default;
};

/// Scenario defaults before any key is applied.
ScenarioConfig default_config(ScenarioKind kind);

/// All validation problems, one message per entry.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates; throws ConfigError listing every problem found.
ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Checks grid/rule consistency; returns the problems (empty when valid).
std::vector<std::string> validate(const ScenarioConfig& config);

/// Canonical text form: every key, lists written out, doubles with 17
/// significant digits. parse_config_text(serialize(c)) == c.
std::string serialize(const ScenarioConfig& config);

}  // namespace lse::scenario

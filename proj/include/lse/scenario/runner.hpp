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

#include <filesystem>
#include <string>

#include "lse/scenario/config.hpp"

namespace lse::scenario {

struct RunOptions {
  /// Concurrent grid points; 0 reads LSE_WORKERS (default 1).
  int workers = 0;
};

/// Outcome of one scenario run.
///
/// exit_code 0: all outputs written. 1: invalid configuration or parameters.
/// 2: a solver failed (nothing written) or, for `verify`, some invariant
/// failed (outputs written, manifest status "checks_failed").
struct RunReport {
  int exit_code = 0;
  std::filesystem::path output_dir;
  std::string manifest_json;
  /// Machine-readable failure report naming the operation and parameters.
  std::string error_json;
};

/// LSE_WORKERS as a positive integer; 1 when unset. Throws ArgumentError on
/// anything else.
int workers_from_environment();

/// Runs every grid point, then writes all files into a temporary sibling of
/// config.output_dir and renames it into place. Output bytes depend only on
/// the configuration, never on the worker count.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace lse::scenario

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
#include <vector>

namespace lse::scenario {

/// Ordinary least squares y = slope * x + intercept with Pearson r.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  std::size_t points = 0;
};

/// Throws ArgumentError for fewer than two points, mismatched lengths or
/// constant x. r is NaN when y is constant.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lse::scenario

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


#include "lse/bethe/series.hpp"

#include <cmath>

#include "lse/errors.hpp"

namespace lse::bethe {

double root_density(double lambda, double phi, int m_max) {
  if (!(phi > 0.0)) throw ArgumentError("root density needs phi > 0");
  if (m_max < 1) throw ArgumentError("root density needs m_max >= 1");
  double s = 0.5;
  for (int m = 1; m <= m_max; ++m) {
    const double c = std::cosh(m * phi);
    if (!std::isfinite(c)) break;
    s += std::cos(m * phi * lambda) / c;
  }
  return s;
}

double critical_phi_residual(double phi, int m_max) {
  if (phi < 0.0) throw ArgumentError("critical_phi_residual needs phi >= 0");
  if (m_max < 1) throw ArgumentError("critical_phi_residual needs m_max >= 1");
  double s = 0.0;
  for (int m = 1; m <= m_max; ++m) s += (m % 2 == 0 ? 1.0 : -1.0) * std::tanh(m * phi) / m;
  return s;
}

}  // namespace lse::bethe

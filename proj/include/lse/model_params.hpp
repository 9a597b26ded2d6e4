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

#include <cmath>
#include <string>
#include <string_view>

namespace lse {

enum class Boundary { Periodic, Open, Generalized };

/// "pbc", "obc", "gbc".
std::string_view to_string(Boundary bc);
/// Case-insensitive inverse of to_string; throws ArgumentError.
Boundary parse_boundary(std::string_view text);

/// Parameterization of one chain instance.
///
/// Hopping rates are derived from the overall scale J and the asymmetry phi:
/// left hops occur at J_L = J e^{-phi}, right hops at J_R = J e^{phi}.
/// phi > 0 means right hopping dominates.
///
/// delta_L multiplies the counter-flow boundary hop (site 1 -> site L) and
/// delta_R the co-flow boundary hop (site L -> site 1). They only enter for
/// Boundary::Generalized; a periodic chain ignores them and an open chain
/// requires them to be zero.
struct ModelParams {
  int L = 2;
  int M = 1;
  double J = 1.0;
  double phi = 0.0;
  double delta_L = 0.0;
  double delta_R = 0.0;
  Boundary bc = Boundary::Periodic;
  // Optional coherent couplings H = sum J' Sz Sz + h Sz. Diagonal only.
  double J_prime = 0.0;
  double h = 0.0;

  double J_left() const { return J * std::exp(-phi); }
  double J_right() const { return J * std::exp(phi); }

  /// Boundary couplings as they enter the operator: (J_L, J_R) for PBC,
  /// (0, 0) for OBC, (delta_L, delta_R) for GBC.
  double effective_delta_L() const;
  double effective_delta_R() const;

  /// Throws ArgumentError on L < 2, M outside [0, L], J <= 0, negative
  /// deltas, non-finite values, or OBC with nonzero deltas.
  void validate() const;

  static ModelParams periodic(int L, int M, double phi, double J = 1.0);
  static ModelParams open(int L, int M, double phi, double J = 1.0);
  static ModelParams generalized(int L, int M, double phi, double delta_L, double delta_R,
                                 double J = 1.0);

  /// Compact identifier used in error reports and manifests.
  std::string describe() const;
};

}  // namespace lse

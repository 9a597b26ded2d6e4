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

#include <iosfwd>
#include <string>
#include <vector>

#include "lse/model_params.hpp"

namespace lse::scenario {

/// One invariant evaluated at one parameter point. `value` is the measured
/// defect (a max-norm or a distance); the check passes when value <= tolerance.
struct CheckResult {
  std::string check;
  ModelParams params;
  /// Sector of the check; -1 for the full double space.
  int M = -1;
  double value = 0.0;
  double tolerance = 0.0;

  bool passed() const { return value <= tolerance; }
};

/// Structural invariant suite at one (L, phi), L <= 4, for PBC, OBC and GBC
/// (boundary couplings delta_L, delta_R):
///   projector_completeness, projector_orthogonality, commutator,
///   trace_preservation   (full double space)
///   projection_equality, column_sums, steady_eigenvalue, real_part_nonpositive,
///   null_vector_nonnegative  (every sector M = 0..L)
///   gauge_hermitian, gauge_spectrum  (OBC sectors)
///   pbc_gbc_closure  (GBC at delta = (J_L, J_R) against PBC)
std::vector<CheckResult> invariant_suite(int L, double phi, double delta_L, double delta_R, double J = 1.0);

/// "check,L,M,phi,deltaL,deltaR,bc,value,tolerance,pass".
void write_check_csv_header(std::ostream& out);
void write_check_row(std::ostream& out, const CheckResult& row);

}  // namespace lse::scenario

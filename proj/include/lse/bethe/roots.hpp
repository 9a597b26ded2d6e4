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

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "lse/model_params.hpp"

namespace lse::bethe {

using cplx = std::complex<double>;

/// One Bethe eigenstate.
///
/// k holds all M quasimomenta. For OBC the last `boundary_roots` entries sit
/// exactly at k = -i phi: these carry zero energy and leave the equations of
/// the other roots unchanged, and label descendants of a lower sector under
/// the quantum-group symmetry of the open chain. Distinctness is required
/// among the remaining (finite) roots only.
struct BetheRoots {
  ModelParams params;
  std::vector<cplx> k;
  /// PBC only: lambda_j with e^{ik - phi} = -sin[phi(lambda+i)/2] / sin[phi(lambda-i)/2].
  std::vector<cplx> rapidities;
  /// PBC: integers from the logarithmic equations (principal branch).
  /// OBC: nearest integer of L Re k / pi. GBC: nearest integer of L Re k / (2 pi).
  std::vector<double> quantum_numbers;
  /// OBC only: +1 for every finite root after canonicalization (Re k > 0),
  /// 0 for boundary roots.
  std::vector<int> reflection_signs;
  int boundary_roots = 0;
  /// Max residual of the boundary mode's equations over finite roots.
  double residual = 0.0;
  cplx energy;
};

/// PBC: 2J sum [cos(k + i phi) - cosh phi].
cplx pbc_energy(std::span<const cplx> k, const ModelParams& params);
/// OBC: 2J sum [cos k - cosh phi].
cplx obc_energy(std::span<const cplx> k, const ModelParams& params);
/// GBC with the modified plane wave z' = (J_R / delta_R)^{1/L} e^{ik}:
/// sum [J_R / z' + J_L z' - 2 J cosh phi]. Reduces to pbc_energy when
/// delta_R = J_R.
cplx gbc_energy(std::span<const cplx> k, const ModelParams& params);
/// Dispatch on params.bc.
cplx bethe_energy(std::span<const cplx> k, const ModelParams& params);

/// CSV "bc,L,M,phi,deltaL,deltaR,j,re_k,im_k,I_j,residual,re_E,im_E".
/// One row per root; j restarts at 1 for every state, so a row with j = 1
/// opens a new root set. Boundary roots (k = -i phi) carry I_j = 0.
void write_roots_csv_header(std::ostream& out);
void write_roots_rows(std::ostream& out, const BetheRoots& roots);

}  // namespace lse::bethe

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

#include <Eigen/Dense>
#include <vector>

#include "lse/bethe/roots.hpp"
#include "lse/sector_basis.hpp"
#include "lse/sparse_operator.hpp"

namespace lse::bethe {

/// Plane-wave label: permutation P of the roots and, for OBC, the
/// propagation sign r_j of every particle.
struct WaveLabel {
  std::vector<int> permutation;
  std::vector<int> signs;
};

struct BetheWavefunction {
  BetheRoots roots;
  std::vector<WaveLabel> labels;
  std::vector<cplx> amplitudes;
  /// phi(x_1 < ... < x_M) in basis order, unit norm.
  Eigen::VectorXcd vector;
};

/// A_21 / A_12 of the periodic two-magnon wave
/// A_12 e^{i(k_1 x_1 + k_2 x_2)} + A_21 e^{i(k_2 x_1 + k_1 x_2)}:
/// -s(k_1, k_2) / s(k_2, k_1).
cplx pbc_amplitude_ratio(cplx k1, cplx k2, double phi);

/// Coordinate wavefunction of a root set for M <= 2.
///
/// PBC: plane waves with amplitudes from pbc_amplitude_ratio.
/// OBC: the ansatz sum_{P,r} A_P(r) exp[sum_j (i r_j k_{P_j} x_j + phi x_j)];
/// the 2^M M! amplitudes are the null vector (smallest singular vector) of
/// (A - E) applied to the plane-wave family.
/// Throws ArgumentError for M > 2, for GBC, and for OBC states with
/// boundary roots (descendants are not single plane-wave families).
BetheWavefunction bethe_wavefunction(const BetheRoots& roots, const SectorBasis& basis);

/// ||A v - E v|| / ||v||.
double eigen_residual(const SparseOperator& op, const Eigen::VectorXcd& v, cplx E);

}  // namespace lse::bethe

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

#include "lse/model_params.hpp"
#include "lse/sector_basis.hpp"
#include "lse/sparse_operator.hpp"

namespace lse {

// ---------------------------------------------------------------------------
// Double-space superoperator
//
// A density matrix rho = sum_ij rho_ij |i><j| is vectorized as
// |rho> = sum_ij rho_ij |i> (x) |j>, row-major: the double-space index of
// (ket i, bra j) is (i << L) | j. The first factor is the "right" space of
// the local projectors, the second factor the "left" space.
// ---------------------------------------------------------------------------

inline constexpr int kMaxFullSites = 6;

inline std::size_t double_space_index(Word ket, Word bra, int L) {
  return (static_cast<std::size_t>(ket) << L) | static_cast<std::size_t>(bra);
}

/// How the jump term of the dissipator is weighted.
///
/// Standard:    D[rho] = sum_k L rho L^dag - 1/2 {L^dag L, rho}
/// DoubledJump: D[rho] = sum_k 2 L rho L^dag - {L^dag L, rho}
///
/// DoubledJump is exactly twice Standard. Projecting the Standard form onto
/// the diagonal subspace reproduces the effective Liouvillians below entry by
/// entry.
enum class DissipatorNormalization { Standard, DoubledJump };

/// A single jump operator sqrt(rate) S+_to S-_from.
struct JumpOperator {
  int from = 1;
  int to = 2;
  double rate = 0.0;
};

/// Jump operators of the dissipative chain: sqrt(J_L) S+_j S-_{j+1} and
/// sqrt(J_R) S+_{j+1} S-_j on every bond (ring bonds for PBC, open bonds for
/// OBC). GBC adds sqrt(delta_L) S+_L S-_1 and sqrt(delta_R) S+_1 S-_L.
std::vector<JumpOperator> jump_operators(const ModelParams& params);

/// Full 4^L-dimensional Lindblad superoperator, including the optional
/// coherent part -i(H (x) I - I (x) H^T) with H = sum J' Sz Sz + h Sz.
/// Throws CapacityError for L > kMaxFullSites.
SparseOperator build_full_liouvillian(const ModelParams& params,
                                      DissipatorNormalization norm = DissipatorNormalization::Standard);

/// Local projectors at site j on the double space.
///   P1: right factor up, left factor down.
///   P2: right factor down, left factor up.
///   P0 = 1 - P1 - P2 (both factors equal).
struct ProjectorSet {
  int site = 1;
  SparseOperator P0;
  SparseOperator P1;
  SparseOperator P2;
};

ProjectorSet build_projectors(int L, int site);

/// Product of P0_j over all sites: projector onto the diagonal subspace.
SparseOperator diagonal_projector(int L);

/// Rows and columns (c, c) of a double-space operator, for c in `basis`.
SparseOperator restrict_to_diagonal_sector(const SparseOperator& full, const SectorBasis& basis);

// ---------------------------------------------------------------------------
// Effective (diagonal-subspace) Liouvillians in a magnetization sector
//
// Matrix convention: column = source configuration, row = target, so the
// operator generates d p / dt = A p for a probability vector p over the
// sector.
//
// PBC:  2J sum_{j=1}^{L} [ e^{-phi}/2 S+_j S-_{j+1} + e^{phi}/2 S+_{j+1} S-_j
//                          + cosh(phi) (Sz_j Sz_{j+1} - 1/4) ]        (j+1 wraps)
// OBC:  J sum_{j=1}^{L-1} [ e^{phi} S+_{j+1} S-_j + e^{-phi} S+_j S-_{j+1}
//                          + 2 cosh(phi) (Sz_j Sz_{j+1} - 1/4) ]
//       + J sinh(phi) (Sz_L - Sz_1)
// GBC:  OBC + delta_L [ S+_L S-_1 + (Sz_L - 1/2)(Sz_1 + 1/2) ]
//           + delta_R [ S+_1 S-_L + (Sz_1 - 1/2)(Sz_L + 1/2) ]
//
// At L = 2 the periodic sum visits the single bond twice (j = 1 and j = 2).
// Negative phi is assembled at |phi| and mapped by site inversion
// j -> L + 1 - j, which also exchanges the roles of delta_L and delta_R.
// Coherent terms vanish identically on the diagonal subspace.
// ---------------------------------------------------------------------------

SparseOperator build_effective_liouvillian(const ModelParams& params, const SectorBasis& basis);

/// D^{-1} op D with D(c) = exp(phi * sum of occupied positions of c).
/// Equivalent to S+_j -> e^{-j phi} S+_j, S-_j -> e^{j phi} S-_j.
SparseOperator gauge_transform(const SparseOperator& op, const SectorBasis& basis, double phi);

/// Hermitian counterpart of the OBC operator: unit hopping J in both
/// directions with the same Sz Sz and boundary-field terms.
SparseOperator build_hermitian_open(const ModelParams& params, const SectorBasis& basis);

/// phi -> infinity limit of the OBC operator in units of e^{phi}:
/// J sum [ S+_{j+1} S-_j + (Sz_j Sz_{j+1} - 1/4) ] + J/2 (Sz_L - Sz_1).
SparseOperator build_strong_drive_open(double J, const SectorBasis& basis);

/// Ordering by decreasing position sum (ties: decreasing word). In this
/// order the strong-drive operator is upper triangular; entry 0 is the
/// right-packed domain wall. perm[k] = basis index placed at position k.
std::vector<std::size_t> strong_drive_ordering(const SectorBasis& basis);

/// P^T op P for the permutation `perm` (new index k <- old perm[k]).
SparseOperator permute(const SparseOperator& op, const std::vector<std::size_t>& perm);

/// Conjugation by the site-inversion permutation j -> L + 1 - j.
SparseOperator invert_sites(const SparseOperator& op, const SectorBasis& basis);

/// Right-packed configuration: sites L-M+1 .. L occupied.
Word domain_wall(int L, int M);

}  // namespace lse

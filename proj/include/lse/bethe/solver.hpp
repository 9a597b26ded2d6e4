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
#include <string>
#include <vector>

#include "lse/bethe/newton.hpp"
#include "lse/spectra.hpp"

namespace lse::bethe {

struct SolverOptions {
  RootOptions roots;
  /// Real seeds per unit pi in the open two-magnon search: the grid has
  /// seed_density * L + 7 points in (0, pi).
  int seed_density = 3;
  /// Accepted states must reproduce an eigenvector of the sector operator
  /// to this tolerance when an explicit wavefunction exists.
  double wavefunction_tolerance = 1e-8;
  int homotopy_steps = 20;
};

struct SectorSolution {
  ModelParams params;
  std::vector<BetheRoots> states;
  std::size_t sector_dimension = 0;
  std::size_t seeds_tried = 0;
  std::size_t seeds_rejected = 0;
  /// Human-readable remarks about what the enumeration does not cover.
  std::vector<std::string> notes;
};

/// Enumerates Bethe states of one sector.
///
/// PBC  M = 1: k = 2 pi n / L. M = 2: for every total momentum K = 2 pi n / L
///      the pair equations reduce to a degree-L polynomial in e^{ik_1};
///      its roots are polished by Newton and filtered (collisions, explicit
///      wavefunction residual). M >= 3: the symmetric quantum-number set
///      I_j = -(M-1)/2 .. (M-1)/2 only.
/// OBC  M <= 2: highest-weight states from a grid of real and complex seeds,
///      validated by the explicit wavefunction, plus descendants built from
///      lower-sector states with roots at k = -i phi.
/// GBC  M = 1: roots of z^L + c z - 1 = 0 (c from kappa). M = 2:
///      continuation in (delta_L, delta_R) from the periodic states.
/// Throws ArgumentError for unsupported (bc, M) and for GBC with delta_R = 0.
SectorSolution solve_sector(const ModelParams& params, const SolverOptions& options = {});

struct CoverageReport {
  std::size_t levels = 0;
  std::size_t matched = 0;
  std::size_t unmatched_states = 0;
  double coverage = 0.0;
  /// Largest energy distance among matched states.
  double max_matched_distance = 0.0;
  /// Largest distance from any state to its nearest level.
  double max_distance = 0.0;
};

/// Greedy matching of Bethe energies against a dense spectrum.
CoverageReport evaluate_coverage(const SectorSolution& solution, const SpectrumResult& dense, double tolerance);

/// Roots of sum_i c_i z^i (c back = leading) via the companion matrix.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coefficients);

}  // namespace lse::bethe

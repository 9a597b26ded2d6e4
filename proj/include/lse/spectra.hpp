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
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lse/model_params.hpp"
#include "lse/sector_basis.hpp"
#include "lse/sparse_operator.hpp"

namespace lse {

inline constexpr std::size_t kDenseCap = 4096;
inline constexpr double kEigenResidualTolerance = 1e-8;

enum class VectorRequest { None, Right, RightAndLeft };

/// Complete eigendecomposition of a sector operator.
///
/// right_vectors: column n is the unit-norm right eigenvector of eigenvalues[n].
/// left_vectors:  row n is the left eigenvector normalized so that
///                left_vectors * right_vectors = identity (biorthogonal).
struct SpectrumResult {
  std::optional<ModelParams> params;
  Eigen::VectorXcd eigenvalues;
  std::optional<Eigen::MatrixXcd> right_vectors;
  std::optional<Eigen::MatrixXcd> left_vectors;
  /// Indices of eigenvalues sorted by (Re, Im) ascending.
  std::vector<std::size_t> sorted_order;
  /// max_n ||A v_n - E_n v_n|| / ||v_n||; zero when vectors were not requested.
  double max_residual = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  /// Eigenvalues in sorted_order.
  std::vector<cplx> sorted_eigenvalues() const;
};

/// Dense eigendecomposition. Real operators go through the real
/// nonsymmetric solver (or the symmetric one when the Hermitian flag is set),
/// everything else through the complex solver.
/// Throws CapacityError above kDenseCap and NumericError (with a matrix
/// fingerprint) when the solver fails or a residual exceeds the tolerance.
SpectrumResult dense_spectrum(const SparseOperator& op, VectorRequest vectors = VectorRequest::None);

/// Short description of a matrix used in error messages: dimension, nnz,
/// sum of |entries| and trace.
std::string fingerprint(const SparseOperator& op);

// ---------------------------------------------------------------------------
// Steady states
// ---------------------------------------------------------------------------

struct SteadyStateOptions {
  /// Column scaling exp(2 * gauge_phi * position_sum). For detailed-balance
  /// operators (OBC) this makes the scaled null vector constant; it only
  /// affects conditioning, never the answer.
  double gauge_phi = 0.0;
  /// Dimension up to which the reduced system is solved by dense LU.
  std::size_t dense_limit = 2500;
  double tolerance = 1e-9;
  int max_iterations = 4000;
  /// Incomplete LU parameters for the sparse path.
  double ilu_drop_tolerance = 1e-2;
  int ilu_fill_factor = 2;
};

struct SteadyState {
  std::optional<ModelParams> params;
  std::vector<double> probabilities;
  /// ||A p||_inf after normalization and clipping.
  double residual = 0.0;
  /// "dense-lu" or "bicgstab-ilut".
  std::string method;
  int iterations = 0;
};

/// Probability-normalized right null vector of a classical generator
/// (nonnegative off-diagonal, zero column sums).
///
/// One configuration (the one with the smallest |diagonal|, ties broken
/// towards the largest index) is pinned to 1 and the remaining rows and
/// columns are solved. Absorbing configurations have a zero diagonal and are
/// therefore chosen as the pin.
/// Throws ConvergenceError when ||A p||_inf >= tolerance or when a component
/// is below -1e-12; components in [-1e-12, 0) are clipped to 0.
SteadyState steady_state(const SparseOperator& op, const SectorBasis& basis,
                         const SteadyStateOptions& options = {});

/// Builds the effective operator of `params` and solves for its steady state.
/// gauge_phi is set to phi for OBC and for GBC with delta_R = 0, else 0.
SteadyState steady_state(const ModelParams& params, SteadyStateOptions options = {});

// ---------------------------------------------------------------------------
// Spectrum statistics
// ---------------------------------------------------------------------------

/// sum_j (E_j - E_min) / (E_max - E_min) over real parts. Warns when the
/// spectrum has an imaginary part above 1e-8; throws DomainError when
/// E_max = E_min.
double normalized_mean_energy(const SpectrumResult& spec);

/// normalized_mean_energy divided by the number of levels, in [0, 1].
double mean_normalized_level(const SpectrumResult& spec);

/// Index-by-index differences a_sorted[n] - b_sorted[n]; throws
/// ArgumentError on a dimension mismatch.
std::vector<cplx> sorted_level_differences(const SpectrumResult& a, const SpectrumResult& b);

/// Greedy nearest matching: each candidate claims the closest unclaimed
/// reference eigenvalue when within `tolerance`.
struct LevelMatch {
  /// For each candidate, the claimed reference index (nullopt if none).
  std::vector<std::optional<std::size_t>> assignment;
  /// Distance to the claimed level (or to the nearest level when unmatched).
  std::vector<double> distance;
  std::size_t matched = 0;
  /// matched / reference size.
  double coverage = 0.0;
};

LevelMatch match_levels(const std::vector<cplx>& candidates, const Eigen::VectorXcd& reference,
                        double tolerance);

/// CSV "index,re,im" in sorted order.
void write_spectrum_csv(std::ostream& out, const SpectrumResult& spec);
/// CSV "config_bits,probability" in basis order.
void write_steady_state_csv(std::ostream& out, const SteadyState& state, const SectorBasis& basis);

}  // namespace lse

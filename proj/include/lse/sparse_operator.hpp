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
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace lse {

using cplx = std::complex<double>;

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  cplx value;
};

inline constexpr double kDropTolerance = 1e-14;
inline constexpr double kHermitianTolerance = 1e-12;

/// Square complex sparse matrix in coalesced triplet form.
///
/// Entries are sorted by (row, col), duplicates are summed, and anything with
/// |value| <= kDropTolerance is dropped. The Hermitian flag is computed once
/// at construction.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::size_t dim, std::vector<Entry> triplets);

  static SparseOperator zero(std::size_t dim) { return SparseOperator(dim, {}); }
  static SparseOperator identity(std::size_t dim);
  static SparseOperator from_dense(const Eigen::MatrixXcd& dense);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  bool hermitian() const { return hermitian_; }

  /// Value at (row, col); zero when not stored. O(log nnz).
  cplx coeff(std::size_t row, std::size_t col) const;

  /// True when every stored entry has |Im| <= tol.
  bool is_real(double tol = kDropTolerance) const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::SparseMatrix<cplx> to_eigen() const;
  /// Real part only; callers check is_real() first.
  Eigen::SparseMatrix<double> to_eigen_real() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  SparseOperator adjoint() const;
  SparseOperator scaled(cplx factor) const;

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
  bool hermitian_ = true;
};

/// max_{ij} |a_ij - b_ij|; throws ArgumentError on dimension mismatch.
double max_abs_difference(const SparseOperator& a, const SparseOperator& b);

/// max_{ij} |a_ij|.
double max_abs(const SparseOperator& a);

/// Sum over rows of each column (length dim).
std::vector<cplx> column_sums(const SparseOperator& a);

/// Text format: header "dim nnz", then one "row col re im" line per entry,
/// values printed with 17 significant digits.
void write_text(std::ostream& out, const SparseOperator& op);
SparseOperator read_text(std::istream& in);

}  // namespace lse

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

#include "lse/sparse_operator.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "lse/errors.hpp"

namespace lse {

namespace {

bool entry_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim, std::vector<Entry> triplets) : dim_(dim) {
  for (const auto& e : triplets) {
    if (e.row >= dim || e.col >= dim) {
      throw ArgumentError("sparse entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                          ") outside dimension " + std::to_string(dim));
    }
  }
  std::sort(triplets.begin(), triplets.end(), entry_less);
  entries_.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    Entry acc = triplets[i];
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == acc.row && triplets[j].col == acc.col) {
      acc.value += triplets[j].value;
      ++j;
    }
    if (std::abs(acc.value) > kDropTolerance) entries_.push_back(acc);
    i = j;
  }

  hermitian_ = true;
  for (const auto& e : entries_) {
    if (std::abs(e.value - std::conj(coeff(e.col, e.row))) > kHermitianTolerance) {
      hermitian_ = false;
      break;
    }
  }
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  std::vector<Entry> t;
  t.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) t.push_back({i, i, 1.0});
  return SparseOperator(dim, std::move(t));
}

SparseOperator SparseOperator::from_dense(const Eigen::MatrixXcd& dense) {
  if (dense.rows() != dense.cols()) throw ArgumentError("from_dense: matrix not square");
  std::vector<Entry> t;
  for (Eigen::Index c = 0; c < dense.cols(); ++c) {
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
      if (dense(r, c) != cplx{}) {
        t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), dense(r, c)});
      }
    }
  }
  return SparseOperator(static_cast<std::size_t>(dense.rows()), std::move(t));
}

cplx SparseOperator::coeff(std::size_t row, std::size_t col) const {
  const Entry key{row, col, {}};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, entry_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return {};
}

bool SparseOperator::is_real(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Entry& e) { return std::abs(e.value.imag()) <= tol; });
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : entries_) {
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return m;
}

Eigen::SparseMatrix<cplx> SparseOperator::to_eigen() const {
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) {
    t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::SparseMatrix<cplx> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::SparseMatrix<double> SparseOperator::to_eigen_real() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) {
    t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value.real());
  }
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim_) throw ArgumentError("apply: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const auto& e : entries_) {
    out(static_cast<Eigen::Index>(e.row)) += e.value * v(static_cast<Eigen::Index>(e.col));
  }
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, std::conj(e.value)});
  return SparseOperator(dim_, std::move(t));
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  std::vector<Entry> t = entries_;
  for (auto& e : t) e.value *= factor;
  return SparseOperator(dim_, std::move(t));
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim_ != b.dim_) throw ArgumentError("operator+: dimension mismatch");
  std::vector<Entry> t = a.entries_;
  t.insert(t.end(), b.entries_.begin(), b.entries_.end());
  return SparseOperator(a.dim_, std::move(t));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  return a + b.scaled(-1.0);
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim_ != b.dim_) throw ArgumentError("operator*: dimension mismatch");
  const Eigen::SparseMatrix<cplx> prod = (a.to_eigen() * b.to_eigen()).pruned();
  std::vector<Entry> t;
  t.reserve(static_cast<std::size_t>(prod.nonZeros()));
  for (int k = 0; k < prod.outerSize(); ++k) {
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(prod, k); it; ++it) {
      t.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
    }
  }
  return SparseOperator(a.dim_, std::move(t));
}

double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw ArgumentError("max_abs_difference: dimension mismatch");
  return max_abs(a - b);
}

double max_abs(const SparseOperator& a) {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e.value));
  return m;
}

std::vector<cplx> column_sums(const SparseOperator& a) {
  std::vector<cplx> s(a.dim());
  for (const auto& e : a.entries()) s[e.col] += e.value;
  return s;
}

void write_text(std::ostream& out, const SparseOperator& op) {
  out << op.dim() << ' ' << op.nnz() << '\n';
  char buf[128];
  for (const auto& e : op.entries()) {
    std::snprintf(buf, sizeof buf, "%zu %zu %.16e %.16e\n", e.row, e.col, e.value.real(), e.value.imag());
    out << buf;
  }
}

SparseOperator read_text(std::istream& in) {
  std::size_t dim = 0;
  std::size_t nnz = 0;
  if (!(in >> dim >> nnz)) throw ArgumentError("operator text: missing 'dim nnz' header");
  std::vector<Entry> t;
  t.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    Entry e;
    double re = 0;
    double im = 0;
    if (!(in >> e.row >> e.col >> re >> im)) {
      throw ArgumentError("operator text: truncated at entry " + std::to_string(k));
    }
    e.value = {re, im};
    t.push_back(e);
  }
  return SparseOperator(dim, std::move(t));
}

}  // namespace lse

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


#include "lse/scenario/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lse/errors.hpp"
#include "lse/format.hpp"
#include "lse/liouvillian.hpp"
#include "lse/spectra.hpp"

namespace lse::scenario {

namespace {

constexpr double kExact = 1e-12;
constexpr double kSpectral = 1e-10;

ModelParams with_bc(int L, int M, double phi, double J, Boundary bc, double dl, double dr) {
  ModelParams p;
  p.L = L;
  p.M = M;
  p.J = J;
  p.phi = phi;
  p.bc = bc;
  if (bc == Boundary::Generalized) {
    p.delta_L = dl;
    p.delta_R = dr;
  }
  return p;
}

double commutator_norm(const SparseOperator& a, const SparseOperator& b) { return max_abs(a * b - b * a); }

void full_space_checks(int L, double phi, double J, double dl, double dr, std::vector<CheckResult>& out) {
  const ModelParams base = with_bc(L, 0, phi, J, Boundary::Periodic, 0.0, 0.0);
  const auto identity = SparseOperator::identity(std::size_t{1} << (2 * L));
  double completeness = 0.0;
  double orthogonality = 0.0;
  std::vector<ProjectorSet> sets;
  for (int j = 1; j <= L; ++j) {
    sets.push_back(build_projectors(L, j));
    const ProjectorSet& s = sets.back();
    completeness = std::max(completeness, max_abs(s.P0 + s.P1 + s.P2 - identity));
    const SparseOperator* P[3] = {&s.P0, &s.P1, &s.P2};
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const SparseOperator prod = *P[k] * *P[l];
        orthogonality = std::max(orthogonality, k == l ? max_abs(prod - *P[k]) : max_abs(prod));
      }
    }
  }
  out.push_back({"projector_completeness", base, -1, completeness, kExact});
  out.push_back({"projector_orthogonality", base, -1, orthogonality, kExact});

  for (Boundary bc : {Boundary::Periodic, Boundary::Open, Boundary::Generalized}) {
    const ModelParams p = with_bc(L, 0, phi, J, bc, dl, dr);
    const SparseOperator full = build_full_liouvillian(p);
    double comm = 0.0;
    for (const auto& s : sets) {
      comm = std::max({comm, commutator_norm(full, s.P0), commutator_norm(full, s.P1), commutator_norm(full, s.P2)});
    }
    out.push_back({"commutator", p, -1, comm, kExact});

    // <I| L = 0 with |I> = sum_i |i>|i>.
    const std::size_t n = std::size_t{1} << L;
    Eigen::VectorXcd id = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n * n));
    for (std::size_t i = 0; i < n; ++i) id(static_cast<Eigen::Index>(double_space_index(static_cast<Word>(i), static_cast<Word>(i), L))) = 1.0;
    out.push_back({"trace_preservation", p, -1, full.adjoint().apply(id).lpNorm<Eigen::Infinity>(), kExact});

    const SparseOperator P0 = diagonal_projector(L);
    const SparseOperator projected = P0 * full * P0;
    for (int M = 0; M <= L; ++M) {
      ModelParams pm = p;
      pm.M = M;
      const SectorBasis basis = build_sector(L, M);
      const SparseOperator eff = build_effective_liouvillian(pm, basis);
      out.push_back({"projection_equality", pm, M, max_abs_difference(restrict_to_diagonal_sector(projected, basis), eff),
                     kExact});
    }
  }
}

void sector_checks(int L, double phi, double J, double dl, double dr, std::vector<CheckResult>& out) {
  for (Boundary bc : {Boundary::Periodic, Boundary::Open, Boundary::Generalized}) {
    for (int M = 0; M <= L; ++M) {
      const ModelParams p = with_bc(L, M, phi, J, bc, dl, dr);
      const SectorBasis basis = build_sector(L, M);
      const SparseOperator op = build_effective_liouvillian(p, basis);
      double colsum = 0.0;
      for (const cplx& s : column_sums(op)) colsum = std::max(colsum, std::abs(s));
      out.push_back({"column_sums", p, M, colsum, kExact});

      const SpectrumResult spec = dense_spectrum(op, VectorRequest::Right);
      Eigen::Index zero = 0;
      spec.eigenvalues.cwiseAbs().minCoeff(&zero);
      out.push_back({"steady_eigenvalue", p, M, std::abs(spec.eigenvalues(zero)), kSpectral});
      out.push_back({"real_part_nonpositive", p, M, std::max(0.0, spec.eigenvalues.real().maxCoeff()), kSpectral});
      const Eigen::VectorXcd v = spec.right_vectors->col(zero);
      const Eigen::VectorXcd w = v / v.sum();
      out.push_back({"null_vector_nonnegative", p, M,
                     std::max({0.0, -w.real().minCoeff(), w.imag().cwiseAbs().maxCoeff()}), kSpectral});

      if (bc == Boundary::Open) {
        const SparseOperator gauged = gauge_transform(op, basis, phi);
        const SparseOperator herm = build_hermitian_open(p, basis);
        out.push_back({"gauge_hermitian", p, M, max_abs_difference(gauged, herm), kExact});
        const auto a = spec.sorted_eigenvalues();
        const auto b = dense_spectrum(herm).sorted_eigenvalues();
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        out.push_back({"gauge_spectrum", p, M, d, kSpectral});
      }
      if (bc == Boundary::Periodic) {
        const ModelParams g = with_bc(L, M, phi, J, Boundary::Generalized, p.J_left(), p.J_right());
        out.push_back({"pbc_gbc_closure", g, M, max_abs_difference(build_effective_liouvillian(g, basis), op), kExact});
      }
    }
  }
}

}  // namespace

std::vector<CheckResult> invariant_suite(int L, double phi, double delta_L, double delta_R, double J) {
  if (L < 1 || L > 4) throw ArgumentError("invariant_suite supports 1 <= L <= 4");
  std::vector<CheckResult> out;
  full_space_checks(L, phi, J, delta_L, delta_R, out);
  sector_checks(L, phi, J, delta_L, delta_R, out);
  return out;
}

void write_check_csv_header(std::ostream& out) { out << "check,L,M,phi,deltaL,deltaR,bc,value,tolerance,pass\n"; }

void write_check_row(std::ostream& out, const CheckResult& row) {
  const ModelParams& p = row.params;
  out << row.check << ',' << p.L << ',' << row.M << ',' << format_double(p.phi) << ','
      << format_double(p.delta_L) << ',' << format_double(p.delta_R) << ',' << to_string(p.bc)
      << ',' << format_double(row.value) << ',' << format_double(row.tolerance) << ',' << (row.passed() ? "true" : "false")
      << '\n';
}

}  // namespace lse::scenario

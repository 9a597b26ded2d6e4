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


#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lse/errors.hpp"
#include "lse/liouvillian.hpp"
#include "lse/spectra.hpp"
#include "oracle.hpp"

using namespace lse;

namespace {

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::vector<double> sorted_real(const Eigen::VectorXcd& v) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("effective operators match Kronecker assembly of the printed generators") {
  for (int L = 2; L <= 6; ++L) {
    for (int M = 0; M <= L; ++M) {
      const SectorBasis basis = build_sector(L, M);
      for (double phi : {-0.9, 0.0, 0.5, 1.3}) {
        for (const ModelParams& p : {ModelParams::periodic(L, M, phi, 0.8), ModelParams::open(L, M, phi, 1.1)}) {
          CAPTURE(p.describe());
          CHECK(max_diff(build_effective_liouvillian(p, basis).to_dense(), oracle::effective(p, basis)) < 1e-12);
        }
        if (phi < 0) continue;
        const ModelParams g = ModelParams::generalized(L, M, phi, 0.3, 0.7, 1.2);
        CAPTURE(g.describe());
        CHECK(max_diff(build_effective_liouvillian(g, basis).to_dense(), oracle::effective(g, basis)) < 1e-12);
      }
    }
  }
}

TEST_CASE("negative phi is the site inversion with boundary couplings exchanged") {
  const int L = 5;
  const SectorBasis basis = build_sector(L, 2);
  const ModelParams neg = ModelParams::generalized(L, 2, -0.6, 0.3, 0.9);
  const ModelParams pos = ModelParams::generalized(L, 2, 0.6, 0.9, 0.3);
  const SparseOperator a = build_effective_liouvillian(neg, basis);
  const SparseOperator b = invert_sites(build_effective_liouvillian(pos, basis), basis);
  CHECK(max_abs_difference(a, b) < 1e-12);
}

TEST_CASE("L=2 periodic sector visits the bond twice") {
  const SectorBasis basis = build_sector(2, 1);
  const Eigen::MatrixXcd A = build_effective_liouvillian(ModelParams::periodic(2, 1, 0.0), basis).to_dense();
  Eigen::MatrixXcd expected(2, 2);
  expected << -2.0, 2.0, 2.0, -2.0;
  CHECK(max_diff(A, expected) < 1e-15);
}

TEST_CASE("full Liouvillian matches direct dense Lindblad assembly") {
  for (int L = 2; L <= 3; ++L) {
    for (double phi : {0.0, 0.7}) {
      for (ModelParams p : {ModelParams::periodic(L, 1, phi), ModelParams::open(L, 1, phi),
                            ModelParams::generalized(L, 1, phi, 0.4, 0.2)}) {
        p.J_prime = 0.35;
        p.h = -0.8;
        CAPTURE(p.describe());
        CHECK(max_diff(build_full_liouvillian(p).to_dense(), oracle::full_liouvillian(p)) < 1e-12);
      }
    }
  }
}

TEST_CASE("L=2 periodic trace equals the hand-counted diagonal sum") {
  // Each jump sqrt(r) S+ S- contributes -r/2 (<L^dag L> on ket) - r/2 (on bra);
  // L^dag L is a number projector with trace 1 on the 4-dim space, so the
  // superoperator trace is sum_k r_k (|tr L_k|^2 - 4) = -4 sum_k r_k.
  // Two ring bonds of rate J each direction: sum r = 2 (e^phi + e^-phi) J.
  for (double phi : {0.0, 0.4}) {
    const ModelParams p = ModelParams::periodic(2, 1, phi);
    const double expected = -4.0 * 2.0 * (std::exp(phi) + std::exp(-phi));
    CHECK(build_full_liouvillian(p).to_dense().trace().real() == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("vanishing dissipators and no coherent part give the zero operator") {
  // Rates must stay positive, so take them below the drop tolerance.
  for (const Boundary bc : {Boundary::Periodic, Boundary::Open}) {
    ModelParams p = ModelParams::periodic(2, 1, 0.0, 1e-300);
    p.bc = bc;
    CHECK(build_full_liouvillian(p).nnz() == 0);
  }
}

TEST_CASE("full Liouvillian preserves the trace") {
  for (int L = 2; L <= 4; ++L) {
    for (ModelParams p : {ModelParams::periodic(L, 1, 0.5), ModelParams::generalized(L, 1, 1.3, 0.2, 0.6)}) {
      p.J_prime = 0.5;
      p.h = 0.25;
      const SparseOperator full = build_full_liouvillian(p);
      std::vector<cplx> row(full.dim());
      for (const auto& e : full.entries()) {
        const Word ket = static_cast<Word>(e.row >> L);
        const Word bra = static_cast<Word>(e.row & ((std::size_t{1} << L) - 1));
        if (ket == bra) row[e.col] += e.value;
      }
      double worst = 0.0;
      for (cplx v : row) worst = std::max(worst, std::abs(v));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("full Liouvillian capacity") {
  CHECK_THROWS_AS(build_full_liouvillian(ModelParams::periodic(kMaxFullSites + 1, 1, 0.1)), CapacityError);
}

TEST_CASE("projectors: single site ranks, completeness and orthogonality") {
  const ProjectorSet s = build_projectors(1, 1);
  CHECK(s.P1.dim() == 4);
  CHECK(s.P1.nnz() == 1);
  CHECK(s.P2.nnz() == 1);
  // P1 keeps ket up, bra down: index (1 << 1) | 0 = 2.
  CHECK(s.P1.coeff(2, 2) == cplx{1.0, 0.0});
  CHECK(s.P2.coeff(1, 1) == cplx{1.0, 0.0});

  for (int L = 1; L <= 3; ++L) {
    const auto I = SparseOperator::identity(std::size_t{1} << (2 * L));
    for (int j = 1; j <= L; ++j) {
      const ProjectorSet p = build_projectors(L, j);
      CHECK(max_abs_difference(p.P0 + p.P1 + p.P2, I) < 1e-12);
      const SparseOperator* all[3] = {&p.P0, &p.P1, &p.P2};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const SparseOperator prod = *all[a] * *all[b];
          const SparseOperator expected = a == b ? *all[a] : SparseOperator::zero(I.dim());
          CHECK(max_abs_difference(prod, expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("projectors commute with the Liouvillian") {
  for (int L = 2; L <= 4; ++L) {
    for (double phi : {0.0, 0.5, 0.7, 1.3}) {
      for (const ModelParams& p : {ModelParams::periodic(L, 1, phi), ModelParams::open(L, 1, phi),
                                   ModelParams::generalized(L, 1, phi, 0.3, 0.2)}) {
        const SparseOperator full = build_full_liouvillian(p);
        for (int j = 1; j <= L; ++j) {
          const ProjectorSet s = build_projectors(L, j);
          for (const SparseOperator* P : {&s.P0, &s.P1, &s.P2}) {
            CHECK(max_abs(full * *P - *P * full) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("diagonal projection reproduces the effective operator") {
  for (int L = 2; L <= 4; ++L) {
    const SparseOperator P0 = diagonal_projector(L);
    for (double phi : {0.0, 0.5, 1.3}) {
      for (const ModelParams& base : {ModelParams::periodic(L, 0, phi), ModelParams::open(L, 0, phi),
                                      ModelParams::generalized(L, 0, phi, 0.3, 0.2)}) {
        ModelParams p = base;
        p.J_prime = 0.4;
        p.h = 0.3;
        const SparseOperator projected = P0 * build_full_liouvillian(p) * P0;
        for (int M = 0; M <= L; ++M) {
          p.M = M;
          const SectorBasis basis = build_sector(L, M);
          CAPTURE(p.describe());
          CHECK(max_abs_difference(restrict_to_diagonal_sector(projected, basis),
                                   build_effective_liouvillian(p, basis)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("generalized boundary with bulk rates closes to the periodic ring") {
  const SectorBasis basis = build_sector(6, 3);
  const double phi = 0.5;
  const ModelParams pbc = ModelParams::periodic(6, 3, phi);
  const ModelParams gbc = ModelParams::generalized(6, 3, phi, pbc.J_left(), pbc.J_right());
  CHECK(max_abs_difference(build_effective_liouvillian(pbc, basis), build_effective_liouvillian(gbc, basis)) < 1e-12);
}

TEST_CASE("column sums vanish") {
  for (int L = 2; L <= 8; ++L) {
    for (int M = 0; M <= L; ++M) {
      const SectorBasis basis = build_sector(L, M);
      for (double phi : {-0.4, 0.0, 0.5, 1.3}) {
        for (const ModelParams& p : {ModelParams::periodic(L, M, phi), ModelParams::open(L, M, phi),
                                     ModelParams::generalized(L, M, phi, 0.5 * std::exp(-phi), 0.0),
                                     ModelParams::generalized(L, M, phi, 0.5 * std::exp(-phi), 0.5 * std::exp(phi))}) {
          double worst = 0.0;
          for (cplx s : column_sums(build_effective_liouvillian(p, basis))) worst = std::max(worst, std::abs(s));
          CHECK(worst < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("gauge transform of the open chain is the Hermitian chain") {
  const ModelParams p = ModelParams::open(6, 2, 0.8);
  const SectorBasis basis = build_sector(6, 2);
  const SparseOperator A = build_effective_liouvillian(p, basis);
  CHECK_FALSE(A.hermitian());
  const SparseOperator G = gauge_transform(A, basis, p.phi);
  CHECK(G.hermitian());
  CHECK(max_abs_difference(G, build_hermitian_open(p, basis)) < 1e-12);
}

TEST_CASE("gauge at phi=0 is the identity map") {
  const SectorBasis basis = build_sector(5, 2);
  const SparseOperator A = build_effective_liouvillian(ModelParams::generalized(5, 2, 0.3, 0.2, 0.1), basis);
  CHECK(max_abs_difference(gauge_transform(A, basis, 0.0), A) == 0.0);
}

TEST_CASE("gauge transform does not symmetrize the ring") {
  const ModelParams p = ModelParams::periodic(4, 1, 0.5);
  const SectorBasis basis = build_sector(4, 1);
  CHECK_FALSE(gauge_transform(build_effective_liouvillian(p, basis), basis, p.phi).hermitian());
}

TEST_CASE("open spectrum equals the Hermitian counterpart spectrum") {
  for (int L = 2; L <= 8; ++L) {
    for (int M = 1; M <= L / 2; ++M) {
      const SectorBasis basis = build_sector(L, M);
      const ModelParams p = ModelParams::open(L, M, 0.7);
      const auto a = sorted_real(dense_spectrum(build_effective_liouvillian(p, basis)).eigenvalues);
      const Eigen::MatrixXcd H = build_hermitian_open(p, basis).to_dense();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
      const Eigen::VectorXd ev = es.eigenvalues();
      REQUIRE(a.size() == static_cast<std::size_t>(ev.size()));
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - ev(static_cast<Eigen::Index>(i))) < 1e-10);
    }
  }
}

TEST_CASE("strong-drive operator is triangular with the domain wall as null vector") {
  for (int L = 2; L <= 8; ++L) {
    for (int M = 0; M <= L; ++M) {
      const SectorBasis basis = build_sector(L, M);
      const SparseOperator B = build_strong_drive_open(1.0, basis);
      const auto perm = strong_drive_ordering(basis);
      const SparseOperator T = permute(B, perm);
      for (const auto& e : T.entries()) CHECK(e.row <= e.col);
      CHECK(basis[perm[0]] == domain_wall(L, M));
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
      v(static_cast<Eigen::Index>(basis.at(domain_wall(L, M)))) = 1.0;
      CHECK(B.apply(v).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("strong-drive operator is the scaled large-phi limit of the open chain") {
  const SectorBasis basis = build_sector(6, 3);
  const double phi = 18.0;
  const SparseOperator A = build_effective_liouvillian(ModelParams::open(6, 3, phi), basis).scaled(std::exp(-phi));
  CHECK(max_abs_difference(A, build_strong_drive_open(1.0, basis)) < 1e-7);
}

TEST_CASE("operator text format round trip") {
  const SectorBasis basis = build_sector(5, 2);
  const SparseOperator A = build_effective_liouvillian(ModelParams::generalized(5, 2, 0.3, 0.2, 0.1), basis);
  std::stringstream ss;
  write_text(ss, A);
  const SparseOperator B = read_text(ss);
  CHECK(B.nnz() == A.nnz());
  CHECK(max_abs_difference(A, B) == 0.0);
  std::istringstream bad("3 2\n0 0 1 0\n");
  CHECK_THROWS_AS(read_text(bad), ArgumentError);
}

TEST_CASE("sparse operator invariants") {
  const SparseOperator a(3, {{0, 1, 1.0}, {0, 1, -1.0}, {2, 2, 1e-15}, {1, 0, 2.0}});
  CHECK(a.nnz() == 1);
  CHECK_THROWS_AS(SparseOperator(2, {{2, 0, 1.0}}), ArgumentError);
  const SparseOperator h(2, {{0, 1, cplx{1.0, 2.0}}, {1, 0, cplx{1.0, -2.0}}});
  CHECK(h.hermitian());
  CHECK_FALSE(SparseOperator(2, {{0, 1, 1.0}}).hermitian());
}

TEST_CASE("mismatched basis is rejected") {
  CHECK_THROWS_AS(build_effective_liouvillian(ModelParams::open(6, 3, 0.5), build_sector(6, 2)), ArgumentError);
}

TEST_CASE("doubled jump weighting is twice the standard dissipator") {
  const ModelParams p = ModelParams::generalized(3, 1, 0.6, 0.2, 0.5);
  const SparseOperator a = build_full_liouvillian(p, DissipatorNormalization::Standard);
  const SparseOperator b = build_full_liouvillian(p, DissipatorNormalization::DoubledJump);
  CHECK(max_abs_difference(b, a.scaled(2.0)) < 1e-12);
}

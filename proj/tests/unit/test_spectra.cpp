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

SpectrumResult from_values(std::vector<cplx> values) {
  SpectrumResult s;
  s.eigenvalues = Eigen::Map<Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) s.sorted_order.push_back(i);
  std::sort(s.sorted_order.begin(), s.sorted_order.end(), [&](std::size_t a, std::size_t b) {
    return values[a].real() != values[b].real() ? values[a].real() < values[b].real() : values[a].imag() < values[b].imag();
  });
  return s;
}

// Null vector of a dense matrix by full-pivot LU kernel, independent of the
// library's pinned solve.
Eigen::VectorXd dense_null_vector(const Eigen::MatrixXcd& A) {
  const Eigen::MatrixXd R = A.real();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd ker = lu.kernel();
  REQUIRE(ker.cols() == 1);
  Eigen::VectorXd v = ker.col(0);
  return v / v.sum();
}

}  // namespace

TEST_CASE("open spectrum is real") {
  const SectorBasis basis = build_sector(6, 3);
  const SpectrumResult s = dense_spectrum(build_effective_liouvillian(ModelParams::open(6, 3, 0.5), basis));
  REQUIRE(s.size() == 20);
  CHECK(s.eigenvalues.imag().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("two-site ring spectrum") {
  const SectorBasis basis = build_sector(2, 1);
  const SpectrumResult s =
      dense_spectrum(build_effective_liouvillian(ModelParams::periodic(2, 1, 0.0), basis), VectorRequest::Right);
  const auto e = s.sorted_eigenvalues();
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - cplx{-4.0, 0.0}) < 1e-14);
  CHECK(std::abs(e[1]) < 1e-14);
  CHECK(s.max_residual < 1e-12);
}

TEST_CASE("zero matrix spectrum") {
  const SpectrumResult s = dense_spectrum(SparseOperator::zero(5), VectorRequest::RightAndLeft);
  CHECK(s.size() == 5);
  CHECK(s.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigenpair residuals and biorthogonality") {
  for (const ModelParams& p : {ModelParams::periodic(6, 3, 0.7), ModelParams::open(6, 2, 0.5),
                               ModelParams::generalized(7, 3, 0.5, 0.3, 0.8)}) {
    const SectorBasis basis = build_sector(p.L, p.M);
    const SparseOperator A = build_effective_liouvillian(p, basis);
    const SpectrumResult s = dense_spectrum(A, VectorRequest::RightAndLeft);
    REQUIRE(s.right_vectors.has_value());
    REQUIRE(s.left_vectors.has_value());
    const Eigen::MatrixXcd D = A.to_dense();
    for (Eigen::Index n = 0; n < s.eigenvalues.size(); ++n) {
      const Eigen::VectorXcd v = s.right_vectors->col(n);
      CHECK((D * v - s.eigenvalues(n) * v).norm() / v.norm() < 1e-8);
    }
    const Eigen::MatrixXcd id = *s.left_vectors * *s.right_vectors;
    CHECK((id - Eigen::MatrixXcd::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff() < 1e-8);
    for (std::size_t i = 1; i < s.sorted_order.size(); ++i) {
      const cplx a = s.eigenvalues(static_cast<Eigen::Index>(s.sorted_order[i - 1]));
      const cplx b = s.eigenvalues(static_cast<Eigen::Index>(s.sorted_order[i]));
      CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
    }
  }
}

TEST_CASE("dense spectrum capacity") {
  CHECK_THROWS_AS(dense_spectrum(SparseOperator::identity(kDenseCap + 1)), CapacityError);
}

TEST_CASE("strong-drive steady state sits on the right domain wall") {
  const SectorBasis basis = build_sector(6, 3);
  const SteadyState s = steady_state(build_strong_drive_open(1.0, basis), basis);
  const std::size_t wall = basis.at(0b111000u);
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(s.probabilities[i] == doctest::Approx(i == wall ? 1.0 : 0.0));
}

TEST_CASE("ring steady state is uniform") {
  const SteadyState s = steady_state(ModelParams::periodic(4, 2, 0.9));
  REQUIRE(s.probabilities.size() == 6);
  for (double p : s.probabilities) CHECK(p == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(s.residual < 1e-9);
}

TEST_CASE("two-site open steady state ratio") {
  for (double phi : {-1.0, 0.0, 0.3, 2.0}) {
    const SteadyState s = steady_state(ModelParams::open(2, 1, phi));
    // Basis {01, 10}: index 0 has the particle on site 1.
    CHECK(s.probabilities[1] / s.probabilities[0] == doctest::Approx(std::exp(2.0 * phi)).epsilon(1e-12));
  }
}

TEST_CASE("steady state matches the dense null vector") {
  for (int L = 2; L <= 10; L += 2) {
    for (const ModelParams& p : {ModelParams::open(L, L / 2, 0.6), ModelParams::periodic(L, L / 2, 0.6),
                                 ModelParams::generalized(L, L / 2, 0.6, 0.5 * std::exp(-0.6), 0.0),
                                 ModelParams::generalized(L, L / 2, 0.6, 0.2, 0.9)}) {
      CAPTURE(p.describe());
      const SectorBasis basis = build_sector(p.L, p.M);
      const SparseOperator A = build_effective_liouvillian(p, basis);
      const SteadyState s = steady_state(p);
      const Eigen::VectorXd p_lib = Eigen::Map<const Eigen::VectorXd>(s.probabilities.data(),
                                                                       static_cast<Eigen::Index>(s.probabilities.size()));
      CHECK(p_lib.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p_lib.minCoeff() >= 0.0);
      CHECK(s.residual < 1e-9);
      const Eigen::VectorXd p_ref = dense_null_vector(A.to_dense());
      CHECK(p_lib.dot(p_ref) / (p_lib.norm() * p_ref.norm()) > 1.0 - 1e-9);
    }
  }
}

TEST_CASE("sparse steady-state path agrees with the dense path") {
  const ModelParams p = ModelParams::open(12, 6, 0.5);
  SteadyStateOptions sparse;
  sparse.dense_limit = 0;
  const SteadyState a = steady_state(p);
  const SteadyState b = steady_state(p, sparse);
  CHECK(a.method == "dense-lu");
  CHECK(b.method == "bicgstab-ilut");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
    worst = std::max(worst, std::abs(a.probabilities[i] - b.probabilities[i]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("normalized mean energy") {
  CHECK(normalized_mean_energy(from_values({0.0, -1.0, -2.0})) == doctest::Approx(1.5));
  CHECK(mean_normalized_level(from_values({0.0, -1.0, -2.0})) == doctest::Approx(0.5));
  for (double c : {1e-3, 0.7, 42.0}) {
    CHECK(normalized_mean_energy(from_values({0.0, -1.0 * c, -2.0 * c, -0.3 * c})) ==
          doctest::Approx(normalized_mean_energy(from_values({0.0, -1.0, -2.0, -0.3}))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(normalized_mean_energy(from_values({-1.0, -1.0})), DomainError);
}

TEST_CASE("open spectrum is even in phi") {
  for (int L = 3; L <= 7; ++L) {
    const SectorBasis basis = build_sector(L, 2);
    const auto a = dense_spectrum(build_effective_liouvillian(ModelParams::open(L, 2, 0.9), basis)).sorted_eigenvalues();
    const auto b = dense_spectrum(build_effective_liouvillian(ModelParams::open(L, 2, -0.9), basis)).sorted_eigenvalues();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
  }
}

TEST_CASE("every sector has a zero mode with nonpositive real spectrum") {
  for (int L = 2; L <= 8; ++L) {
    for (int M = 0; M <= L; ++M) {
      const SectorBasis basis = build_sector(L, M);
      for (const ModelParams& p : {ModelParams::periodic(L, M, 0.5), ModelParams::open(L, M, 1.3),
                                   ModelParams::generalized(L, M, 0.5, 0.3, 0.4)}) {
        const SpectrumResult s = dense_spectrum(build_effective_liouvillian(p, basis));
        CHECK(s.eigenvalues.cwiseAbs().minCoeff() < 1e-10);
        CHECK(s.eigenvalues.real().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("level matching and differences") {
  Eigen::VectorXcd ref(3);
  ref << 0.0, -1.0, -2.0;
  const LevelMatch m = match_levels({cplx{-1.0 + 1e-10, 0.0}, cplx{-1.0, 0.0}, cplx{-5.0, 0.0}}, ref, 1e-8);
  CHECK(m.matched == 1);
  CHECK(m.assignment[0] == std::optional<std::size_t>{1});
  CHECK_FALSE(m.assignment[1].has_value());
  CHECK_FALSE(m.assignment[2].has_value());
  CHECK(m.coverage == doctest::Approx(1.0 / 3.0));

  const auto d = sorted_level_differences(from_values({0.0, -1.0}), from_values({-0.5, -1.5}));
  REQUIRE(d.size() == 2);
  CHECK(d[0].real() == doctest::Approx(0.5));
  CHECK_THROWS_AS(sorted_level_differences(from_values({0.0}), from_values({0.0, 1.0})), ArgumentError);
}

TEST_CASE("spectrum and steady-state CSV") {
  std::ostringstream a;
  write_spectrum_csv(a, from_values({cplx{-1.0, 0.5}, 0.0}));
  CHECK(a.str().rfind("index,re,im\n", 0) == 0);
  std::ostringstream b;
  const SectorBasis basis = build_sector(2, 1);
  write_steady_state_csv(b, steady_state(ModelParams::open(2, 1, 0.0)), basis);
  std::istringstream lines(b.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "config_bits,probability");
  std::getline(lines, line);
  CHECK(line.rfind("01,", 0) == 0);
}

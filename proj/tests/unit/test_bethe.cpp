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
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "lse/bethe/newton.hpp"
#include "lse/bethe/residuals.hpp"
#include "lse/bethe/roots.hpp"
#include "lse/bethe/series.hpp"
#include "lse/bethe/solver.hpp"
#include "lse/bethe/wavefunction.hpp"
#include "lse/errors.hpp"
#include "lse/liouvillian.hpp"
#include "lse/spectra.hpp"

using namespace lse;
using namespace lse::bethe;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

SpectrumResult dense(const ModelParams& p, VectorRequest v = VectorRequest::None) {
  return dense_spectrum(build_effective_liouvillian(p, build_sector(p.L, p.M)), v);
}

double nearest_level(cplx E, const Eigen::VectorXcd& levels) {
  return (levels.array() - E).abs().minCoeff();
}

double circular(cplx a, cplx b) {
  const double dr = std::remainder((a - b).real(), 2.0 * kPi);
  return std::hypot(dr, (a - b).imag());
}

}  // namespace

TEST_CASE("single magnon ring momenta solve the periodic equations") {
  for (int L = 2; L <= 12; ++L) {
    const ModelParams p = ModelParams::periodic(L, 1, 0.5);
    for (int n = -L; n <= 2 * L; ++n) {
      const cplx k = 2.0 * kPi * n / L;
      CHECK(pbc_bae_residual(std::span<const cplx>(&k, 1), p)[0] < 1e-12);
    }
  }
}

TEST_CASE("single magnon ring energy matches the dense spectrum") {
  const ModelParams p = ModelParams::periodic(4, 1, 0.5);
  const cplx k = kPi / 2.0;
  const cplx E = pbc_energy(std::span<const cplx>(&k, 1), p);
  CHECK(E.real() == doctest::Approx(-2.2553).epsilon(1e-4));
  CHECK(E.imag() == doctest::Approx(-1.0422).epsilon(1e-4));
  CHECK(nearest_level(E, dense(p).eigenvalues) < 1e-12);
}

TEST_CASE("rapidity map round trip") {
  std::mt19937_64 rng(20261016);
  for (double phi : {0.3, 0.5, 1.2}) {
    std::uniform_real_distribution<double> re(-kPi + 0.05, kPi - 0.05);
    std::uniform_real_distribution<double> im(-0.95 * phi, 0.95 * phi);
    for (int n = 0; n < 50; ++n) {
      const cplx k{re(rng), im(rng)};
      const cplx back = momentum_from_rapidity(rapidity_from_momentum(k, phi), phi);
      CHECK(circular(back, k) < 1e-12);
    }
  }
}

TEST_CASE("logarithmic form requires phi != 0 and one quantum number per root") {
  const std::vector<cplx> k = {0.1, 0.2};
  const std::vector<double> I = {0.0, 1.0};
  CHECK_THROWS_AS(pbc_bae_residual(k, ModelParams::periodic(6, 2, 0.0), I, BaeForm::Logarithmic), ArgumentError);
  CHECK_THROWS_AS(pbc_bae_residual(k, ModelParams::periodic(6, 2, 0.5), std::vector<double>{0.0},
                                   BaeForm::Logarithmic),
                  ArgumentError);
}

TEST_CASE("logarithmic and exponential forms agree on single magnons") {
  const ModelParams p = ModelParams::periodic(8, 1, 0.5);
  for (int n = 0; n < 8; ++n) {
    if (n == 4) continue;  // k = pi sits at infinite rapidity
    const cplx k = 2.0 * kPi * n / 8;
    const auto counting = pbc_log_counting(std::span<const cplx>(&k, 1), p);
    const double I = std::round(counting[0].real());
    CHECK(std::abs(counting[0].imag()) < 1e-10);
    CHECK(pbc_bae_residual(std::span<const cplx>(&k, 1), p, std::span<const double>(&I, 1), BaeForm::Logarithmic)[0] <
          1e-10);
  }
}

TEST_CASE("open single magnons reproduce the dense spectrum") {
  const ModelParams p = ModelParams::open(6, 1, 0.7);
  const SectorSolution sol = solve_sector(p);
  const SpectrumResult d = dense(p);
  const CoverageReport c = evaluate_coverage(sol, d, 1e-9);
  CHECK(c.coverage == 1.0);
  CHECK(c.unmatched_states == 0);
  for (const BetheRoots& r : sol.states) {
    CHECK(r.residual < 1e-10);
    CHECK(r.energy.real() <= 0.0);
    if (r.boundary_roots > 0) continue;
    for (cplx k : r.k) CHECK(std::abs(k.imag()) < 1e-12);
  }
}

TEST_CASE("open energies are even in phi") {
  const ModelParams p = ModelParams::open(5, 2, 0.6);
  ModelParams q = p;
  q.phi = -p.phi;
  const SectorSolution sol = solve_sector(p);
  const Eigen::VectorXcd levels = dense(q).eigenvalues;
  REQUIRE_FALSE(sol.states.empty());
  const LevelMatch m = match_levels([&] {
    std::vector<cplx> e;
    for (const auto& r : sol.states) e.push_back(r.energy);
    return e;
  }(), levels, 1e-8);
  CHECK(m.matched == sol.states.size());
}

TEST_CASE("open solutions are invariant under single-root reflection") {
  const ModelParams p = ModelParams::open(6, 2, 0.4);
  std::size_t checked = 0;
  for (const BetheRoots& r : solve_sector(p).states) {
    if (r.boundary_roots > 0) continue;
    for (std::size_t j = 0; j < r.k.size(); ++j) {
      std::vector<cplx> flipped = r.k;
      flipped[j] = -flipped[j];
      for (double v : obc_bae_residual(flipped, p)) CHECK(v < 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("open equations exclude k = 0 and k = pi") {
  const ModelParams p = ModelParams::open(6, 1, 0.5);
  for (cplx k : {cplx{0.0, 0.0}, cplx{kPi, 0.0}}) {
    CHECK_THROWS_AS(obc_bae_residual(std::span<const cplx>(&k, 1), p), DomainError);
  }
}

TEST_CASE("generalized equations close to the periodic ones") {
  const double phi = 0.45;
  const ModelParams pbc = ModelParams::periodic(7, 3, phi);
  const ModelParams gbc = ModelParams::generalized(7, 3, phi, pbc.J_left(), pbc.J_right());
  const std::vector<cplx> k = {cplx{0.3, 0.1}, cplx{1.1, -0.3}, cplx{-2.0, 0.2}};
  for (cplx x : k) CHECK(std::abs(gbc_kappa(x, gbc) - 1.0) < 1e-15);
  const auto a = pbc_bae_residual(k, pbc);
  const auto b = gbc_bae_residual(k, gbc);
  for (std::size_t j = 0; j < k.size(); ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-14));
  CHECK(std::abs(gbc_energy(k, gbc) - pbc_energy(k, pbc)) < 1e-13);

  // kappa -> 1 continuously as the couplings approach the bulk rates.
  double last = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const ModelParams g = ModelParams::generalized(7, 3, phi, pbc.J_left() * (1 + eps), pbc.J_right() * (1 - eps));
    const double gap = std::abs(gbc_kappa(k[0], g) - 1.0);
    CHECK(gap < last);
    last = gap;
  }
  CHECK(last < 1e-3);
  CHECK_THROWS_AS(gbc_bae_residual(k, ModelParams::generalized(7, 3, phi, 0.2, 0.0)), ArgumentError);
}

TEST_CASE("single magnon ring Newton converges in three iterations") {
  for (int L : {4, 7, 10}) {
    const ModelParams p = ModelParams::periodic(L, 1, 0.8);
    for (int n = 0; n < L; ++n) {
      const NewtonResult r = newton_solve(bae_system(p), {2.0 * kPi * n / L + 1e-3});
      CHECK(r.iterations <= 3);
      CHECK(circular(r.x[0], 2.0 * kPi * n / L) < 1e-12);
    }
  }
}

TEST_CASE("Newton reports non-convergence") {
  // One step from a distant start cannot reach a root of z^2 + 1.
  NewtonOptions o;
  o.max_iterations = 1;
  const SystemFn f = [](std::span<const cplx> x) { return std::vector<cplx>{x[0] * x[0] + 1.0}; };
  CHECK_THROWS_AS(newton_solve(f, {cplx{3.0, 0.1}}, o), ConvergenceError);
}

TEST_CASE("open two-magnon sector is fully covered at L=6") {
  const ModelParams p = ModelParams::open(6, 2, 0.5);
  const SectorSolution sol = solve_sector(p);
  const CoverageReport c = evaluate_coverage(sol, dense(p), 1e-8);
  CHECK(c.levels == 15);
  CHECK(c.unmatched_states == 0);
  CHECK(c.coverage == 1.0);
  CHECK(c.max_matched_distance < 1e-8);
}

TEST_CASE("accepted roots match dense levels for all boundaries") {
  for (int L = 4; L <= 8; ++L) {
    for (int M = 1; M <= 2; ++M) {
      for (double phi : {0.1, 0.5, 1.3}) {
        for (const ModelParams& p : {ModelParams::periodic(L, M, phi), ModelParams::open(L, M, phi)}) {
          CAPTURE(p.describe());
          const SectorSolution sol = solve_sector(p);
          const CoverageReport c = evaluate_coverage(sol, dense(p), 1e-8);
          CHECK(c.unmatched_states == 0);
          if (M == 1) CHECK(c.coverage == 1.0);
          for (const BetheRoots& r : sol.states) CHECK(r.residual < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("periodic energies obey the dispersion relation") {
  const ModelParams p = ModelParams::periodic(7, 2, 0.5);
  for (const BetheRoots& r : solve_sector(p).states) {
    cplx E = 0.0;
    for (cplx k : r.k) E += 2.0 * p.J * (std::cos(k + kI * p.phi) - std::cosh(p.phi));
    CHECK(std::abs(E - r.energy) < 1e-12);
    CHECK(std::abs(bethe_energy(r.k, p) - r.energy) < 1e-12);
  }
}

TEST_CASE("continuation from the symmetric chain to phi = 1") {
  ModelParams p = ModelParams::periodic(6, 2, 0.0);
  const SectorSolution start = solve_sector(p);
  // Pick a state with two distinct real momenta.
  std::vector<cplx> seed;
  for (const BetheRoots& r : start.states) {
    if (std::abs(r.k[0].imag()) < 1e-12 && std::abs(r.k[1].imag()) < 1e-12 && circular(r.k[0], r.k[1]) > 0.5) {
      seed = r.k;
      break;
    }
  }
  REQUIRE(seed.size() == 2);
  p.phi = 1.0;
  const HomotopyResult h = continue_in_phi(p, seed, 0.0, 20);
  REQUIRE(h.residuals.size() == 20);
  for (double r : h.residuals) CHECK(r < 1e-10);
  CHECK(h.parameters.back() == doctest::Approx(1.0));
  CHECK(nearest_level(pbc_energy(h.path.back(), p), dense(p).eigenvalues) < 1e-8);
}

TEST_CASE("generalized single magnons approach the dense levels as 1/L") {
  double last = 1e300;
  for (int L = 8; L <= 16; L += 2) {
    const double phi = 0.5;
    const ModelParams p = ModelParams::generalized(L, 1, phi, 0.5 * std::exp(-phi), 0.5 * std::exp(phi));
    const SectorSolution sol = solve_sector(p);
    const CoverageReport c = evaluate_coverage(sol, dense(p), 1e-8);
    CHECK(sol.states.size() == static_cast<std::size_t>(L));
    CHECK(c.max_distance < last);
    CHECK(c.max_distance * L < 1.5);
    last = c.max_distance;
  }
  CHECK_THROWS_AS(solve_sector(ModelParams::generalized(6, 1, 0.5, 0.3, 0.0)), ArgumentError);
}

TEST_CASE("root density series") {
  for (double phi : {0.3, 0.5, 1.0}) {
    for (double lambda : {0.0, 0.37, 1.9, -4.2}) {
      CHECK(root_density(lambda, phi, 200) == doctest::Approx(root_density(-lambda, phi, 200)).epsilon(1e-14));
      CHECK(root_density(lambda + 2.0 * kPi / phi, phi, 200) ==
            doctest::Approx(root_density(lambda, phi, 200)).epsilon(1e-10));
    }
    // Trapezoid rule is exact for trigonometric polynomials over one period.
    const int n = 4096;
    const double period = 2.0 * kPi / phi;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += root_density(period * i / n, phi, 200);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("critical phi series has only the trivial root") {
  CHECK(critical_phi_residual(0.0, 200) == 0.0);
  for (int i = 1; i <= 300; ++i) {
    const double phi = 0.01 + (3.0 - 0.01) * i / 300.0;
    CHECK(critical_phi_residual(phi, 200) < 0.0);
  }
  CHECK(critical_phi_residual(20.0, 4000) == doctest::Approx(-std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("ring single magnon wavefunction is a plane wave eigenvector") {
  const ModelParams p = ModelParams::periodic(6, 1, 0.5);
  const SectorBasis basis = build_sector(6, 1);
  const SparseOperator A = build_effective_liouvillian(p, basis);
  for (int n = 0; n < 6; ++n) {
    const BetheRoots r = solve_roots(p, {2.0 * kPi * n / 6});
    const BetheWavefunction w = bethe_wavefunction(r, basis);
    CHECK(eigen_residual(A, w.vector, r.energy) < 1e-10);
    for (int x = 1; x < 6; ++x) {
      const cplx ratio = w.vector(x) / w.vector(x - 1);
      CHECK(std::abs(ratio - std::exp(kI * r.k[0])) < 1e-12);
    }
  }
}

TEST_CASE("open single magnon wavefunction overlaps the dense eigenvector") {
  const ModelParams p = ModelParams::open(6, 1, 0.8);
  const SectorBasis basis = build_sector(6, 1);
  const SpectrumResult d = dense(p, VectorRequest::Right);
  for (const BetheRoots& r : solve_sector(p).states) {
    if (r.boundary_roots > 0) continue;
    const BetheWavefunction w = bethe_wavefunction(r, basis);
    Eigen::Index n = 0;
    (d.eigenvalues.array() - r.energy).abs().minCoeff(&n);
    const Eigen::VectorXcd v = d.right_vectors->col(n).normalized();
    CHECK(std::abs(v.dot(w.vector.normalized())) > 1.0 - 1e-8);
  }
}

TEST_CASE("ring two-magnon wavefunctions and amplitude ratio") {
  const ModelParams p = ModelParams::periodic(6, 2, 0.5);
  const SectorBasis basis = build_sector(6, 2);
  const SparseOperator A = build_effective_liouvillian(p, basis);
  const SectorSolution sol = solve_sector(p);
  REQUIRE(sol.states.size() >= 10);
  for (const BetheRoots& r : sol.states) {
    const BetheWavefunction w = bethe_wavefunction(r, basis);
    CHECK(eigen_residual(A, w.vector, r.energy) < 1e-8);
    const cplx ratio = pbc_amplitude_ratio(r.k[0], r.k[1], p.phi);
    CHECK(std::abs(ratio + pbc_scattering(r.k[0], r.k[1], p.phi) / pbc_scattering(r.k[1], r.k[0], p.phi)) < 1e-12);
    // Independent plane-wave assembly with that ratio.
    Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int x[2];
      int m = 0;
      for (int s = 1; s <= 6; ++s) {
        if (occupied(basis[i], s)) x[m++] = s;
      }
      v(static_cast<Eigen::Index>(i)) = std::exp(kI * (r.k[0] * double(x[0]) + r.k[1] * double(x[1]))) +
                                        ratio * std::exp(kI * (r.k[1] * double(x[0]) + r.k[0] * double(x[1])));
    }
    CHECK(eigen_residual(A, v, r.energy) < 1e-8);
  }
}

TEST_CASE("wavefunctions beyond two magnons are unsupported") {
  const ModelParams p = ModelParams::periodic(6, 3, 0.5);
  BetheRoots r;
  r.params = p;
  r.k = {0.1, 0.2, 0.3};
  CHECK_THROWS_AS(bethe_wavefunction(r, build_sector(6, 3)), ArgumentError);
}

TEST_CASE("coincident momenta are rejected") {
  const ModelParams p = ModelParams::periodic(6, 2, 0.5);
  CHECK_THROWS_AS(solve_roots(p, {0.0, 0.0}), RejectedRootError);
}

TEST_CASE("polynomial roots via the companion matrix") {
  auto roots = polynomial_roots({2.0, -3.0, 1.0});
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - 1.0) < 1e-13);
  CHECK(std::abs(roots[1] - 2.0) < 1e-13);
}

TEST_CASE("roots CSV schema") {
  const ModelParams p = ModelParams::open(4, 2, 0.5);
  std::ostringstream out;
  write_roots_csv_header(out);
  const SectorSolution sol = solve_sector(p);
  for (const auto& r : sol.states) write_roots_rows(out, r);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "bc,L,M,phi,deltaL,deltaR,j,re_k,im_k,I_j,residual,re_E,im_E");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
    ++rows;
  }
  CHECK(rows == 2 * sol.states.size());
}

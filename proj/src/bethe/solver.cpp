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


#include "lse/bethe/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "lse/bethe/residuals.hpp"
#include "lse/bethe/wavefunction.hpp"
#include "lse/errors.hpp"
#include "lse/liouvillian.hpp"

namespace lse::bethe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double circular_distance(cplx a, cplx b) {
  const cplx d = a - b;
  return std::abs(cplx{std::remainder(d.real(), 2.0 * kPi), d.imag()});
}

bool same_state(const BetheRoots& a, const BetheRoots& b) {
  if (a.boundary_roots != b.boundary_roots || a.k.size() != b.k.size()) return false;
  // Multiset comparison: root order is not canonical for near-equal real parts.
  std::vector<bool> used(b.k.size(), false);
  for (const cplx& ka : a.k) {
    bool found = false;
    for (std::size_t j = 0; j < b.k.size() && !found; ++j) {
      if (!used[j] && circular_distance(ka, b.k[j]) <= 1e-7) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool is_new(const SectorSolution& sol, const BetheRoots& r) {
  return std::none_of(sol.states.begin(), sol.states.end(), [&](const BetheRoots& s) { return same_state(s, r); });
}

class Enumerator {
 public:
  Enumerator(const ModelParams& params, const SolverOptions& options)
      : params_(params), options_(options), basis_(build_sector(params.L, params.M)) {
    sol_.params = params;
    sol_.sector_dimension = basis_.size();
    if (params.M <= 2 && params.bc != Boundary::Generalized) {
      op_ = build_effective_liouvillian(params, basis_);
    }
  }

  // Newton from `seed`; keeps the state when it is new and, where an
  // explicit wavefunction exists, an eigenvector of the sector operator.
  void try_seed(std::vector<cplx> seed) {
    ++sol_.seeds_tried;
    try {
      BetheRoots r = solve_roots(params_, std::move(seed), options_.roots);
      if (!is_new(sol_, r)) return;
      if (params_.M <= 2 && params_.bc != Boundary::Generalized) {
        const auto wf = bethe_wavefunction(r, basis_);
        if (!(eigen_residual(op_, wf.vector, r.energy) < options_.wavefunction_tolerance)) {
          ++sol_.seeds_rejected;
          return;
        }
      }
      sol_.states.push_back(std::move(r));
    } catch (const NumericError&) {
      ++sol_.seeds_rejected;
    } catch (const DomainError&) {
      ++sol_.seeds_rejected;
    }
  }

  void add(BetheRoots r) {
    if (is_new(sol_, r)) sol_.states.push_back(std::move(r));
  }

  SectorSolution& solution() { return sol_; }

 private:
  ModelParams params_;
  SolverOptions options_;
  SectorBasis basis_;
  SparseOperator op_;
  SectorSolution sol_;
};

void solve_periodic(const ModelParams& p, const SolverOptions& options, Enumerator& en) {
  const int L = p.L;
  if (p.M == 1) {
    for (int n = 0; n < L; ++n) en.try_seed({2.0 * kPi * n / L});
    return;
  }
  if (p.M == 2) {
    const double ch = std::cosh(p.phi);
    const double a = 2.0 * ch * std::exp(-p.phi);
    for (int n = 0; n < L; ++n) {
      const double K = 2.0 * kPi * n / L;
      const cplx eK = std::exp(kI * K);
      const cplx c = eK * std::exp(-2.0 * p.phi) + 1.0;
      // c z^L - a e^{iK} z^{L-1} - a z + c = 0 with z = e^{i k_1}, k_2 = K - k_1.
      std::vector<cplx> coeff(static_cast<std::size_t>(L) + 1, 0.0);
      coeff[0] += c;
      coeff[1] += -a;
      coeff[static_cast<std::size_t>(L) - 1] += -a * eK;
      coeff[static_cast<std::size_t>(L)] += c;
      for (const cplx& z : polynomial_roots(coeff)) {
        if (!(std::abs(z) > 1e-12) || !std::isfinite(std::abs(z))) continue;
        const cplx k1 = -kI * std::log(z);
        en.try_seed({k1, K - k1});
      }
    }
    en.solution().notes.push_back(
        "states whose two quasimomenta coincide (k_1 = k_2, e.g. the uniform steady state) are not representable");
    return;
  }
  std::vector<cplx> seed;
  for (int j = 0; j < p.M; ++j) seed.push_back(2.0 * kPi * (j - 0.5 * (p.M - 1)) / L);
  en.try_seed(seed);
  (void)options;
  en.solution().notes.push_back("M >= 3: only the symmetric quantum-number set is attempted");
}

std::vector<BetheRoots> open_highest_weight(const ModelParams& p, const SolverOptions& options, SectorSolution& tally) {
  if (p.M == 0) {
    BetheRoots r;
    r.params = p;
    finalize_roots(r);
    return {r};
  }
  Enumerator en(p, options);
  const int L = p.L;
  if (p.M == 1) {
    for (int n = 1; n < L; ++n) en.try_seed({kPi * n / L});
  } else {
    const int n = options.seed_density * L + 7;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = 0.05 + (kPi - 0.1) * i / (n - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.size(); ++j) en.try_seed({grid[i], grid[j]});
    }
    for (int i = 0; i < 20; ++i) {
      const double x = 0.05 + (kPi - 0.1) * i / 19.0;
      for (double y : {0.1, 0.2, 0.4, 0.8, 1.2, 2.0}) en.try_seed({cplx{x, -y}, cplx{x, y}});
    }
  }
  tally.seeds_tried += en.solution().seeds_tried;
  tally.seeds_rejected += en.solution().seeds_rejected;
  return en.solution().states;
}

void solve_open(const ModelParams& p, const SolverOptions& options, Enumerator& en) {
  if (p.M > 2) throw ArgumentError("open-chain enumeration supports M <= 2");
  const cplx boundary_root = -kI * p.phi;
  for (int n_boundary = 0; n_boundary <= p.M; ++n_boundary) {
    ModelParams lower = p;
    lower.M = p.M - n_boundary;
    std::vector<BetheRoots> hw = open_highest_weight(lower, options, en.solution());
    for (auto& s : hw) {
      if (n_boundary == 0) {
        en.add(std::move(s));
        continue;
      }
      BetheRoots r;
      r.params = p;
      r.k = s.k;
      for (int i = 0; i < n_boundary; ++i) r.k.push_back(boundary_root);
      r.boundary_roots = n_boundary;
      finalize_roots(r);
      en.add(std::move(r));
    }
  }
}

void solve_generalized(const ModelParams& p, const SolverOptions& options, Enumerator& en) {
  if (!(p.delta_R > 0.0)) throw ArgumentError("generalized equations need delta_R > 0 (use the open chain)");
  const int L = p.L;
  if (p.M == 1) {
    const double c = (p.J_left() - p.delta_L) * std::pow(p.J_right() / p.delta_R, 1.0 / L) / p.J_right();
    std::vector<cplx> coeff(static_cast<std::size_t>(L) + 1, 0.0);
    coeff[0] = -1.0;
    coeff[1] += c;
    coeff[static_cast<std::size_t>(L)] += 1.0;
    for (const cplx& z : polynomial_roots(coeff)) en.try_seed({-kI * std::log(z)});
    return;
  }
  if (p.M != 2) throw ArgumentError("generalized enumeration supports M <= 2");
  ModelParams ring = p;
  ring.bc = Boundary::Periodic;
  ring.delta_L = 0.0;
  ring.delta_R = 0.0;
  const SectorSolution periodic = solve_sector(ring, options);
  auto family = [p](double t) {
    ModelParams q = p;
    q.delta_L = (1.0 - t) * p.J_left() + t * p.delta_L;
    q.delta_R = (1.0 - t) * p.J_right() + t * p.delta_R;
    return bae_system(q);
  };
  for (const BetheRoots& s : periodic.states) {
    ++en.solution().seeds_tried;
    try {
      const HomotopyResult h = homotopy_solve(family, s.k, 0.0, 1.0, options.homotopy_steps, options.roots.newton);
      --en.solution().seeds_tried;
      en.try_seed(h.path.back());
    } catch (const NumericError&) {
      ++en.solution().seeds_rejected;
    }
  }
  en.solution().notes.push_back("M = 2 states continued from the periodic enumeration in (delta_L, delta_R)");
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coefficients) {
  std::size_t n = coefficients.size();
  while (n > 0 && coefficients[n - 1] == cplx{}) --n;
  if (n <= 1) return {};
  const auto deg = static_cast<Eigen::Index>(n - 1);
  const cplx lead = coefficients[n - 1];
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index j = 0; j < deg; ++j) C(0, j) = -coefficients[static_cast<std::size_t>(deg - 1 - j)] / lead;
  for (Eigen::Index i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw NumericError("companion-matrix eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SectorSolution solve_sector(const ModelParams& params, const SolverOptions& options) {
  params.validate();
  if (params.M < 1) throw ArgumentError("Bethe enumeration needs M >= 1");
  if (params.bc == Boundary::Generalized && !(params.delta_R > 0.0)) {
    throw ArgumentError("generalized equations need delta_R > 0 (use the open chain)");
  }
  Enumerator en(params, options);
  switch (params.bc) {
    case Boundary::Periodic:
      solve_periodic(params, options, en);
      break;
    case Boundary::Open:
      solve_open(params, options, en);
      break;
    case Boundary::Generalized:
      solve_generalized(params, options, en);
      break;
  }
  return en.solution();
}

CoverageReport evaluate_coverage(const SectorSolution& solution, const SpectrumResult& dense, double tolerance) {
  std::vector<cplx> energies;
  for (const auto& s : solution.states) energies.push_back(s.energy);
  const LevelMatch m = match_levels(energies, dense.eigenvalues, tolerance);
  CoverageReport r;
  r.levels = dense.size();
  r.matched = m.matched;
  r.unmatched_states = energies.size() - m.matched;
  r.coverage = m.coverage;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    r.max_distance = std::max(r.max_distance, m.distance[i]);
    if (m.assignment[i]) r.max_matched_distance = std::max(r.max_matched_distance, m.distance[i]);
  }
  return r;
}

}  // namespace lse::bethe

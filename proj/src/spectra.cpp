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


#include "lse/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "lse/errors.hpp"
#include "lse/format.hpp"
#include "lse/liouvillian.hpp"

namespace lse {

namespace {

constexpr double kLogWeightFloor = 300.0;

std::vector<std::size_t> sort_by_re_im(const Eigen::VectorXcd& ev) {
  std::vector<std::size_t> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cplx x = ev(static_cast<Eigen::Index>(a));
    const cplx y = ev(static_cast<Eigen::Index>(b));
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return order;
}

double max_column_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& V, const Eigen::VectorXcd& E) {
  const Eigen::MatrixXcd R = A * V - V * E.asDiagonal();
  double worst = 0.0;
  for (Eigen::Index n = 0; n < V.cols(); ++n) {
    const double norm = V.col(n).norm();
    worst = std::max(worst, norm > 0.0 ? R.col(n).norm() / norm : std::numeric_limits<double>::infinity());
  }
  return worst;
}

}  // namespace

std::vector<cplx> SpectrumResult::sorted_eigenvalues() const {
  std::vector<cplx> out;
  out.reserve(sorted_order.size());
  for (auto i : sorted_order) out.push_back(eigenvalues(static_cast<Eigen::Index>(i)));
  return out;
}

std::string fingerprint(const SparseOperator& op) {
  double abs_sum = 0.0;
  cplx trace{};
  for (const auto& e : op.entries()) {
    abs_sum += std::abs(e.value);
    if (e.row == e.col) trace += e.value;
  }
  return "dim=" + std::to_string(op.dim()) + " nnz=" + std::to_string(op.nnz()) + " sum|a|=" + format_double(abs_sum) +
         " trace=" + format_double(trace.real()) + (trace.imag() < 0 ? "" : "+") + format_double(trace.imag()) + "i";
}

SpectrumResult dense_spectrum(const SparseOperator& op, VectorRequest vectors) {
  const std::size_t n = op.dim();
  if (n > kDenseCap) {
    throw CapacityError("dense spectrum limited to dim <= " + std::to_string(kDenseCap) + ", got " +
                        std::to_string(n));
  }
  SpectrumResult out;
  const bool want = vectors != VectorRequest::None;
  const Eigen::MatrixXcd A = op.to_dense();
  Eigen::MatrixXcd V;
  auto fail = [&](const std::string& what) {
    throw NumericError("dense eigensolver " + what + " (" + fingerprint(op) + ")");
  };

  if (n == 0) {
    out.eigenvalues.resize(0);
  } else if (op.hermitian() && op.is_real()) {
    const Eigen::MatrixXd Ar = A.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ar, want ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail("did not converge");
    out.eigenvalues = es.eigenvalues().cast<cplx>();
    if (want) V = es.eigenvectors().cast<cplx>();
  } else if (op.hermitian()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, want ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail("did not converge");
    out.eigenvalues = es.eigenvalues().cast<cplx>();
    if (want) V = es.eigenvectors();
  } else if (op.is_real()) {
    const Eigen::MatrixXd Ar = A.real();
    Eigen::EigenSolver<Eigen::MatrixXd> es(Ar, want);
    if (es.info() != Eigen::Success) fail("did not converge");
    out.eigenvalues = es.eigenvalues();
    if (want) V = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, want);
    if (es.info() != Eigen::Success) fail("did not converge");
    out.eigenvalues = es.eigenvalues();
    if (want) V = es.eigenvectors();
  }

  if (want && n > 0) {
    V.colwise().normalize();
    out.max_residual = max_column_residual(A, V, out.eigenvalues);
    if (!(out.max_residual < kEigenResidualTolerance)) {
      fail("residual " + format_double(out.max_residual) + " above " + format_double(kEigenResidualTolerance));
    }
    if (vectors == VectorRequest::RightAndLeft) {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
      if (!lu.isInvertible()) fail("returned a singular eigenvector matrix (defective operator)");
      out.left_vectors = lu.inverse();
    }
    out.right_vectors = std::move(V);
  }
  out.sorted_order = sort_by_re_im(out.eigenvalues);
  return out;
}

namespace {

SteadyState solve_pinned(const SparseOperator& op, const SectorBasis& basis, const SteadyStateOptions& options) {
  const std::size_t n = op.dim();
  SteadyState out;
  if (n == 1) {
    out.probabilities = {1.0};
    out.residual = std::abs(op.coeff(0, 0));
    out.method = "trivial";
    if (!(out.residual < options.tolerance)) {
      throw ConvergenceError("1x1 operator has no zero eigenvalue", out.residual);
    }
    return out;
  }

  // Column weights w_c = exp(2 g s_c), shifted so the largest is 1 and
  // floored at exp(-kLogWeightFloor) so that no column underflows.
  std::vector<double> log_w(n);
  for (std::size_t i = 0; i < n; ++i) log_w[i] = 2.0 * options.gauge_phi * position_sum(basis[i]);
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(std::max(log_w[i] - top, -kLogWeightFloor));

  std::vector<double> diag(n, 0.0);
  for (const auto& e : op.entries()) {
    if (e.row == e.col) diag[e.row] = e.value.real();
  }
  std::size_t ref = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(diag[i]) <= std::abs(diag[ref])) ref = i;
  }
  auto reduced = [ref](std::size_t i) { return i < ref ? i : i - 1; };

  const auto m = static_cast<Eigen::Index>(n - 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(op.nnz());
  for (const auto& e : op.entries()) {
    if (e.row == ref) continue;
    const double v = e.value.real() * w[e.col];
    if (e.col == ref) {
      rhs(static_cast<Eigen::Index>(reduced(e.row))) -= v;
    } else {
      trip.emplace_back(static_cast<Eigen::Index>(reduced(e.row)), static_cast<Eigen::Index>(reduced(e.col)), v);
    }
  }
  Eigen::SparseMatrix<double> B(m, m);
  B.setFromTriplets(trip.begin(), trip.end());

  Eigen::VectorXd y;
  if (n - 1 <= options.dense_limit) {
    const Eigen::MatrixXd Bd(B);
    y = Bd.fullPivLu().solve(rhs);
    out.method = "dense-lu";
  } else {
    B.makeCompressed();
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> solver;
    solver.preconditioner().setDroptol(options.ilu_drop_tolerance);
    solver.preconditioner().setFillfactor(options.ilu_fill_factor);
    solver.setTolerance(1e-15);
    solver.setMaxIterations(options.max_iterations);
    solver.compute(B);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("incomplete LU factorization failed (" + fingerprint(op) + ")",
                             std::numeric_limits<double>::infinity());
    }
    y = solver.solve(rhs);
    out.iterations = static_cast<int>(solver.iterations());
    // Iterative refinement until the reduced residual reaches round-off.
    for (int round = 0; round < 3; ++round) {
      const Eigen::VectorXd r = rhs - B * y;
      if (r.lpNorm<Eigen::Infinity>() <= 1e-15 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) break;
      const Eigen::VectorXd dy = solver.solve(r);
      out.iterations += static_cast<int>(solver.iterations());
      y += dy;
    }
    out.method = "bicgstab-ilut";
  }

  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = i == ref ? 1.0 : y(static_cast<Eigen::Index>(reduced(i)));
    p[i] = w[i] * yi;
    total += p[i];
  }
  if (!(std::isfinite(total)) || total <= 0.0) {
    throw ConvergenceError("steady state normalization failed (" + fingerprint(op) + ")",
                           std::numeric_limits<double>::infinity());
  }
  double most_negative = 0.0;
  for (auto& v : p) {
    v /= total;
    most_negative = std::min(most_negative, v);
  }
  if (most_negative < -1e-12) {
    throw ConvergenceError("steady state has negative component " + format_double(most_negative), most_negative);
  }
  for (auto& v : p) v = std::max(v, 0.0);
  std::vector<double> Ap(n, 0.0);
  for (const auto& e : op.entries()) Ap[e.row] += e.value.real() * p[e.col];
  out.residual = 0.0;
  for (double v : Ap) out.residual = std::max(out.residual, std::abs(v));
  if (!(out.residual < options.tolerance)) {
    throw ConvergenceError("steady state residual " + format_double(out.residual) + " above tolerance (" +
                               fingerprint(op) + ")",
                           out.residual);
  }
  out.probabilities = std::move(p);
  return out;
}

}  // namespace

SteadyState steady_state(const SparseOperator& op, const SectorBasis& basis, const SteadyStateOptions& options) {
  if (op.dim() != basis.size()) throw ArgumentError("steady_state: operator and basis dimensions differ");
  if (!op.is_real(1e-12)) throw ArgumentError("steady_state: operator is not real");
  if (options.gauge_phi == 0.0) return solve_pinned(op, basis, options);
  try {
    return solve_pinned(op, basis, options);
  } catch (const ConvergenceError& e) {
    warn(std::string("gauge-scaled steady-state solve failed, retrying unscaled: ") + e.what());
    SteadyStateOptions plain = options;
    plain.gauge_phi = 0.0;
    SteadyState s = solve_pinned(op, basis, plain);
    s.method += "-unscaled";
    return s;
  }
}

SteadyState steady_state(const ModelParams& params, SteadyStateOptions options) {
  params.validate();
  const SectorBasis basis = build_sector(params.L, params.M);
  const SparseOperator op = build_effective_liouvillian(params, basis);
  // The e^{2 phi s} profile is only a good guess when the co-flow boundary
  // hop is absent.
  const bool skin = params.bc == Boundary::Open || (params.bc == Boundary::Generalized && params.delta_R == 0.0);
  options.gauge_phi = skin ? params.phi : 0.0;
  SteadyState s = steady_state(op, basis, options);
  s.params = params;
  return s;
}

double normalized_mean_energy(const SpectrumResult& spec) {
  if (spec.size() == 0) throw DomainError("mean energy of an empty spectrum");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double max_imag = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    lo = std::min(lo, spec.eigenvalues(i).real());
    hi = std::max(hi, spec.eigenvalues(i).real());
    max_imag = std::max(max_imag, std::abs(spec.eigenvalues(i).imag()));
  }
  if (!(hi > lo)) throw DomainError("mean energy undefined: E_max = E_min");
  if (max_imag > 1e-8) warn("mean energy of a complex spectrum uses real parts (max |Im E| = " + format_double(max_imag) + ")");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) sum += (spec.eigenvalues(i).real() - lo) / (hi - lo);
  return sum;
}

double mean_normalized_level(const SpectrumResult& spec) {
  return normalized_mean_energy(spec) / static_cast<double>(spec.size());
}

std::vector<cplx> sorted_level_differences(const SpectrumResult& a, const SpectrumResult& b) {
  if (a.size() != b.size()) throw ArgumentError("sorted_level_differences: spectra of different size");
  const auto x = a.sorted_eigenvalues();
  const auto y = b.sorted_eigenvalues();
  std::vector<cplx> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

LevelMatch match_levels(const std::vector<cplx>& candidates, const Eigen::VectorXcd& reference, double tolerance) {
  LevelMatch out;
  std::vector<bool> claimed(static_cast<std::size_t>(reference.size()), false);
  for (const cplx& c : candidates) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < reference.size(); ++i) {
      if (claimed[static_cast<std::size_t>(i)]) continue;
      const double d = std::abs(reference(i) - c);
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::size_t>(i);
      }
    }
    if (best && best_d <= tolerance) {
      claimed[*best] = true;
      out.assignment.push_back(best);
      ++out.matched;
    } else {
      out.assignment.push_back(std::nullopt);
    }
    out.distance.push_back(best_d);
  }
  out.coverage = reference.size() == 0 ? 0.0 : static_cast<double>(out.matched) / static_cast<double>(reference.size());
  return out;
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& spec) {
  out << "index,re,im\n";
  const auto ev = spec.sorted_eigenvalues();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    out << i << ',' << format_double(ev[i].real()) << ',' << format_double(ev[i].imag()) << '\n';
  }
}

void write_steady_state_csv(std::ostream& out, const SteadyState& state, const SectorBasis& basis) {
  if (state.probabilities.size() != basis.size()) throw ArgumentError("steady state and basis differ in size");
  out << "config_bits,probability\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << to_bitstring(basis[i], basis.sites()) << ',' << format_double(state.probabilities[i]) << '\n';
  }
}

}  // namespace lse

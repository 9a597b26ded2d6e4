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


#include "lse/bethe/newton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lse/bethe/residuals.hpp"
#include "lse/errors.hpp"
#include "lse/format.hpp"

namespace lse::bethe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
}

std::string trace_text(const std::vector<double>& trace) {
  std::string s;
  const std::size_t first = trace.size() > 8 ? trace.size() - 8 : 0;
  if (first > 0) s += "... ";
  for (std::size_t i = first; i < trace.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e ", trace[i]);
    s += buf;
  }
  return s;
}

// Re k into (-pi, pi].
cplx wrap(cplx k) {
  double re = std::remainder(k.real(), kTwoPi);
  if (re <= -kPi) re += kTwoPi;
  return {re, k.imag()};
}

double circular_distance(cplx a, cplx b) { return std::abs(wrap(a - b)); }

}  // namespace

NewtonResult newton_solve(const SystemFn& f, std::vector<cplx> x, const NewtonOptions& opt) {
  const auto m = static_cast<Eigen::Index>(x.size());
  NewtonResult out;
  std::vector<cplx> fx = f(x);
  double norm = max_abs(fx);
  out.trace.push_back(norm);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (norm <= opt.tolerance) {
      out.iterations = it;
      out.residual = norm;
      out.x = std::move(x);
      return out;
    }
    Eigen::MatrixXcd jac(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      std::vector<cplx> xp = x;
      std::vector<cplx> xm = x;
      xp[static_cast<std::size_t>(i)] += opt.fd_step;
      xm[static_cast<std::size_t>(i)] -= opt.fd_step;
      const auto fp = f(xp);
      const auto fm = f(xm);
      for (Eigen::Index r = 0; r < m; ++r) {
        jac(r, i) = (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2.0 * opt.fd_step);
      }
    }
    Eigen::VectorXcd rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) rhs(r) = -fx[static_cast<std::size_t>(r)];
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
    if (!lu.isInvertible() || !jac.allFinite()) {
      throw ConvergenceError("Newton: singular Jacobian after " + std::to_string(it) +
                                 " iterations; residual trace " + trace_text(out.trace),
                             norm);
    }
    const Eigen::VectorXcd step = lu.solve(rhs);

    double t = 1.0;
    std::vector<cplx> trial(x.size());
    std::vector<cplx> ft;
    double trial_norm = 0.0;
    for (int h = 0; h <= opt.max_halvings; ++h) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + t * step(static_cast<Eigen::Index>(i));
      ft = f(trial);
      trial_norm = max_abs(ft);
      if (trial_norm < norm) break;
      t *= 0.5;
    }
    double step_norm = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      step_norm = std::max(step_norm, std::abs(trial[i] - x[i]));
      scale = std::max(scale, std::abs(x[i]));
    }
    x = trial;
    fx = std::move(ft);
    norm = trial_norm;
    out.trace.push_back(norm);
    if (step_norm <= opt.step_tolerance * scale && norm <= 1e3 * opt.tolerance) {
      out.iterations = it + 1;
      out.residual = norm;
      out.x = std::move(x);
      return out;
    }
  }
  if (norm <= opt.tolerance) {
    out.iterations = opt.max_iterations;
    out.residual = norm;
    out.x = std::move(x);
    return out;
  }
  throw ConvergenceError("Newton: no convergence in " + std::to_string(opt.max_iterations) +
                             " iterations; residual trace " + trace_text(out.trace),
                         norm);
}

SystemFn bae_system(const ModelParams& params) {
  switch (params.bc) {
    case Boundary::Periodic:
      return [params](std::span<const cplx> k) { return pbc_bae_system(k, params); };
    case Boundary::Open:
      return [params](std::span<const cplx> k) { return obc_bae_system(k, params); };
    case Boundary::Generalized:
      if (params.delta_R <= 0.0) throw ArgumentError("generalized equations need delta_R > 0 (use the open equations)");
      return [params](std::span<const cplx> k) { return gbc_bae_system(k, params); };
  }
  throw ArgumentError("unknown boundary mode");
}

double bae_residual(std::span<const cplx> k, const ModelParams& params) {
  std::vector<double> r;
  switch (params.bc) {
    case Boundary::Periodic:
      r = pbc_bae_residual(k, params);
      break;
    case Boundary::Open:
      r = obc_bae_residual(k, params);
      break;
    case Boundary::Generalized:
      r = gbc_bae_residual(k, params);
      break;
  }
  double m = 0.0;
  for (double v : r) m = std::max(m, std::isfinite(v) ? v : std::numeric_limits<double>::infinity());
  return m;
}

void finalize_roots(BetheRoots& r) {
  const ModelParams& p = r.params;
  const auto finite = r.k.size() - static_cast<std::size_t>(r.boundary_roots);
  std::span<const cplx> kf(r.k.data(), finite);
  r.rapidities.clear();
  r.quantum_numbers.clear();
  r.reflection_signs.clear();
  if (finite > 0) {
    ModelParams reduced = p;
    reduced.M = static_cast<int>(finite);
    r.residual = bae_residual(kf, reduced);
    if (p.bc == Boundary::Periodic && p.phi != 0.0) {
      for (const cplx& kj : kf) r.rapidities.push_back(rapidity_from_momentum(kj, p.phi));
      const auto counting = pbc_log_counting(kf, reduced);
      for (std::size_t j = 0; j < finite; ++j) {
        // k = pi sends lambda to infinity; fall back to the free-magnon label.
        const double c = counting[j].real();
        r.quantum_numbers.push_back(std::isfinite(c) ? std::round(c) : std::round(p.L * kf[j].real() / kTwoPi));
      }
    }
  } else {
    r.residual = 0.0;
  }
  for (std::size_t j = 0; j < r.k.size(); ++j) {
    const bool boundary = j >= finite;
    if (p.bc == Boundary::Open) {
      r.quantum_numbers.push_back(boundary ? 0.0 : std::round(p.L * r.k[j].real() / kPi));
      r.reflection_signs.push_back(boundary ? 0 : 1);
    } else if (p.bc == Boundary::Generalized || (p.bc == Boundary::Periodic && p.phi == 0.0)) {
      r.quantum_numbers.push_back(std::round(p.L * r.k[j].real() / kTwoPi));
    }
  }
  r.energy = bethe_energy(r.k, p);
}

BetheRoots solve_roots(const ModelParams& params, std::vector<cplx> initial, const RootOptions& options) {
  if (initial.size() != static_cast<std::size_t>(params.M)) {
    throw ArgumentError("solve_roots: need M initial quasimomenta");
  }
  NewtonResult nr = newton_solve(bae_system(params), std::move(initial), options.newton);
  BetheRoots r;
  r.params = params;
  r.k = std::move(nr.x);
  for (auto& kj : r.k) {
    kj = wrap(kj);
    if (params.bc == Boundary::Open && kj.real() < 0.0) kj = -kj;
    if (params.bc == Boundary::Open && kj.real() == 0.0 && kj.imag() > 0.0) kj = -kj;
  }
  for (std::size_t a = 0; a < r.k.size(); ++a) {
    if (params.bc == Boundary::Open && std::abs(std::sin(r.k[a])) < 1e-8) {
      throw RejectedRootError("open-chain root at k = 0 or pi");
    }
    for (std::size_t b = a + 1; b < r.k.size(); ++b) {
      if (circular_distance(r.k[a], r.k[b]) < options.distinct_tolerance) {
        throw RejectedRootError("coincident quasimomenta " + format_double(r.k[a].real()) + "+" +
                                format_double(r.k[a].imag()) + "i");
      }
    }
  }
  // Real parts within 1e-9 count as equal so conjugate pairs order by Im.
  std::sort(r.k.begin(), r.k.end(), [](cplx a, cplx b) {
    return std::abs(a.real() - b.real()) > 1e-9 ? a.real() < b.real() : a.imag() < b.imag();
  });
  finalize_roots(r);
  if (!(r.residual < options.accept_tolerance)) {
    throw RejectedRootError("root set residual " + format_double(r.residual) + " above acceptance threshold");
  }
  return r;
}

HomotopyResult homotopy_solve(const std::function<SystemFn(double)>& family, std::vector<cplx> x, double t0, double t1,
                              int steps, const NewtonOptions& options) {
  if (steps < 1) throw ArgumentError("homotopy needs at least one step");
  HomotopyResult out;
  for (int i = 1; i <= steps; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / steps;
    try {
      NewtonResult nr = newton_solve(family(t), x, options);
      x = nr.x;
      out.parameters.push_back(t);
      out.path.push_back(x);
      out.residuals.push_back(nr.residual);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("homotopy step " + std::to_string(i) + "/" + std::to_string(steps) + " at t=" +
                                 format_double(t) + ": " + e.what(),
                             e.achieved_residual());
    }
  }
  return out;
}

HomotopyResult continue_in_phi(const ModelParams& params, std::vector<cplx> initial, double phi_start, int steps,
                               const NewtonOptions& options) {
  auto family = [params](double phi) {
    ModelParams p = params;
    p.phi = phi;
    return bae_system(p);
  };
  return homotopy_solve(family, std::move(initial), phi_start, params.phi, steps, options);
}

}  // namespace lse::bethe

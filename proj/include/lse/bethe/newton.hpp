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

#include <functional>
#include <span>
#include <vector>

#include "lse/bethe/roots.hpp"

namespace lse::bethe {

using SystemFn = std::function<std::vector<cplx>(std::span<const cplx>)>;

struct NewtonOptions {
  int max_iterations = 100;
  /// Converged once max_j |F_j| <= tolerance.
  double tolerance = 1e-12;
  /// Also converged once the step is below step_tolerance (relative) and
  /// max_j |F_j| <= 1e3 * tolerance: the iteration has hit round-off.
  double step_tolerance = 1e-15;
  /// Central finite-difference step for the Jacobian.
  double fd_step = 1e-7;
  int max_halvings = 20;
};

struct NewtonResult {
  std::vector<cplx> x;
  int iterations = 0;
  double residual = 0.0;
  /// max_j |F_j| after every iteration, starting with the initial guess.
  std::vector<double> trace;
};

/// Damped Newton iteration on an analytic system F: C^m -> C^m with a
/// central-difference Jacobian. Throws ConvergenceError (message includes
/// the residual trace) when the budget runs out or the Jacobian is singular.
NewtonResult newton_solve(const SystemFn& f, std::vector<cplx> initial, const NewtonOptions& options = {});

/// The denominator-free system of params.bc (see residuals.hpp).
SystemFn bae_system(const ModelParams& params);

/// Max residual of the boundary mode's own equations (ratio form).
double bae_residual(std::span<const cplx> k, const ModelParams& params);

struct RootOptions {
  NewtonOptions newton;
  /// Accept only when the ratio-form residual is below this.
  double accept_tolerance = 1e-10;
  /// Minimal pairwise distance of finite roots (mod 2 pi).
  double distinct_tolerance = 1e-8;
};

/// Newton solve of the sector equations from `initial`, followed by
/// canonicalization (Re k in (-pi, pi]; OBC additionally Re k >= 0), the
/// distinctness check and energy evaluation. Throws ConvergenceError or
/// RejectedRootError (collision, excluded momentum, residual above
/// accept_tolerance).
BetheRoots solve_roots(const ModelParams& params, std::vector<cplx> initial, const RootOptions& options = {});

/// Fills rapidities, quantum numbers, reflection signs, residual and energy
/// of an already converged root set (k and boundary_roots set by caller).
void finalize_roots(BetheRoots& roots);

/// Continuation: solves family(t_i) for t_i = t0 + (t1 - t0) i / steps,
/// i = 1..steps, starting each solve from the previous solution.
struct HomotopyResult {
  std::vector<double> parameters;
  std::vector<std::vector<cplx>> path;
  std::vector<double> residuals;
};

HomotopyResult homotopy_solve(const std::function<SystemFn(double)>& family, std::vector<cplx> initial, double t0,
                              double t1, int steps, const NewtonOptions& options = {});

/// Continuation of a root set of `params` from phi_start to params.phi.
HomotopyResult continue_in_phi(const ModelParams& params, std::vector<cplx> initial, double phi_start, int steps = 20,
                               const NewtonOptions& options = {});

}  // namespace lse::bethe

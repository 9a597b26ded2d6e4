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

#include <span>
#include <vector>

#include "lse/bethe/roots.hpp"

namespace lse::bethe {

/// Two-body factor of the periodic equations,
/// s(a, b) = e^{i(a+b) - 2 phi} + 1 - 2 cosh(phi) e^{i b - phi}.
/// Periodic equations: e^{i k_j L} = (-1)^{M-1} prod_{l != j} s(k_l, k_j) / s(k_j, k_l).
cplx pbc_scattering(cplx a, cplx b, double phi);

/// Two-body factor of the open equations,
/// S(a, b) = 1 - 2 cosh(phi) e^{i b} + e^{i(a+b)}.
cplx obc_scattering(cplx a, cplx b, double phi);

/// Reflection factor of the open equations as printed:
/// (e^{ik} - sinh - cosh)(e^{ik} + sinh - cosh) / ((e^{-ik} - sinh - cosh)(e^{-ik} + sinh - cosh)).
/// Algebraically equal to e^{2ik}; 0/0 at k = -i phi.
cplx obc_boundary_factor(cplx k, double phi);

/// kappa(k) = 1 - (J_L - delta_L) (J_R / delta_R)^{1/L} e^{ik} / J_R.
/// Throws ArgumentError when delta_R = 0.
cplx gbc_kappa(cplx k, const ModelParams& params);

enum class BaeForm { Exponential, Logarithmic };

// Exponential-form residuals below are |lhs - rhs| / max(1, |lhs|, |rhs|):
// bound pairs with large |Im k| make both sides exponentially large.

/// Per-root residuals of the periodic equations.
/// Exponential: |e^{ik_j L} - (-1)^{M-1} prod s(k_l,k_j)/s(k_j,k_l)|.
/// Logarithmic: |L theta_1(lambda_j) + i phi L - sum_{l != j} theta_2(lambda_j - lambda_l) - 2 pi I_j|
/// on the principal branch of theta_n; needs one I_j per root and phi != 0
/// (ArgumentError otherwise).
std::vector<double> pbc_bae_residual(std::span<const cplx> k, const ModelParams& params,
                                     std::span<const double> I = {}, BaeForm form = BaeForm::Exponential);

/// Per-root residuals |e^{2i(L-1)k_j} B(k_j) - prod S(-k_j,k_l)S(k_l,k_j)/(S(k_j,k_l)S(k_l,-k_j))|
/// with B the printed reflection factor. Throws DomainError when some
/// |sin k_j| < 1e-10 (k in {0, pi} carries no standing wave).
std::vector<double> obc_bae_residual(std::span<const cplx> k, const ModelParams& params);

/// Per-root residuals |e^{ik_j L} - (-1)^{M-1} kappa(k_j) prod s(k_l,k_j)/s(k_j,k_l)|.
/// Throws ArgumentError when delta_R = 0 (counter-flow only: use the open
/// equations).
std::vector<double> gbc_bae_residual(std::span<const cplx> k, const ModelParams& params);

/// Denominator-free forms used by the Newton iteration. Zeros coincide with
/// those of the residuals above wherever the denominators do not vanish.
std::vector<cplx> pbc_bae_system(std::span<const cplx> k, const ModelParams& params);
/// Uses e^{2iLk_j} in place of e^{2i(L-1)k_j} B(k_j), which regularizes the
/// 0/0 point of B.
std::vector<cplx> obc_bae_system(std::span<const cplx> k, const ModelParams& params);
std::vector<cplx> gbc_bae_system(std::span<const cplx> k, const ModelParams& params);

/// Rapidity map and its inverse (both on the principal branch of log).
/// k = pi maps to lambda = infinity.
cplx rapidity_from_momentum(cplx k, double phi);
cplx momentum_from_rapidity(cplx lambda, double phi);

/// theta_n(lambda) = 2 arctan[tan(phi lambda / 2) coth(n phi / 2)], principal branch.
cplx theta(int n, cplx lambda, double phi);

/// Continuous continuation of a complex angle: successive values are shifted
/// by the multiple of 2 pi that brings them closest to the previous value.
class BranchTracker {
 public:
  cplx follow(cplx principal);
  void reset() { started_ = false; }

 private:
  bool started_ = false;
  cplx last_;
};

/// Raw values (L theta_1(lambda_j) + i phi L - sum theta_2(lambda_j - lambda_l)) / (2 pi)
/// on the principal branch; at a solution their real parts are the
/// quantum numbers and their imaginary parts vanish.
std::vector<cplx> pbc_log_counting(std::span<const cplx> k, const ModelParams& params);

}  // namespace lse::bethe

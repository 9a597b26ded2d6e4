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


#include "lse/bethe/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lse/errors.hpp"

namespace lse::bethe {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double scaled_gap(cplx lhs, cplx rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double sign_m(std::size_t M) { return M % 2 == 1 ? 1.0 : -1.0; }  // (-1)^{M-1}

void check_count(std::span<const cplx> k, const ModelParams& p) {
  if (k.size() != static_cast<std::size_t>(p.M)) {
    throw ArgumentError("expected " + std::to_string(p.M) + " quasimomenta, got " + std::to_string(k.size()));
  }
}

}  // namespace

cplx pbc_scattering(cplx a, cplx b, double phi) {
  return std::exp(kI * (a + b) - 2.0 * phi) + 1.0 - 2.0 * std::cosh(phi) * std::exp(kI * b - phi);
}

cplx obc_scattering(cplx a, cplx b, double phi) {
  return 1.0 - 2.0 * std::cosh(phi) * std::exp(kI * b) + std::exp(kI * (a + b));
}

cplx obc_boundary_factor(cplx k, double phi) {
  const double sh = std::sinh(phi);
  const double ch = std::cosh(phi);
  const cplx zp = std::exp(kI * k);
  const cplx zm = std::exp(-kI * k);
  return (zp - sh - ch) * (zp + sh - ch) / ((zm - sh - ch) * (zm + sh - ch));
}

cplx gbc_kappa(cplx k, const ModelParams& p) {
  if (p.delta_R <= 0.0) throw ArgumentError("kappa needs delta_R > 0 (use the open equations for delta_R = 0)");
  const double JR = p.J_right();
  return 1.0 - (p.J_left() - p.delta_L) * std::pow(JR / p.delta_R, 1.0 / p.L) * std::exp(kI * k) / JR;
}

cplx rapidity_from_momentum(cplx k, double phi) {
  const double eta = 0.5 * phi;
  const cplx z = std::exp(kI * k - phi);
  const cplx w = (std::exp(eta) + z * std::exp(-eta)) / (std::exp(-eta) + z * std::exp(eta));
  return std::log(w) / (kI * phi);
}

cplx momentum_from_rapidity(cplx lambda, double phi) {
  const cplx r = -std::sin(0.5 * phi * (lambda + kI)) / std::sin(0.5 * phi * (lambda - kI));
  return -kI * std::log(r * std::exp(phi));
}

cplx theta(int n, cplx lambda, double phi) {
  const double coth = 1.0 / std::tanh(0.5 * n * phi);
  return 2.0 * std::atan(std::tan(0.5 * phi * lambda) * coth);
}

cplx BranchTracker::follow(cplx principal) {
  if (!started_) {
    started_ = true;
    last_ = principal;
    return principal;
  }
  const double turns = std::round((last_.real() - principal.real()) / kTwoPi);
  last_ = principal + kTwoPi * turns;
  return last_;
}

std::vector<cplx> pbc_log_counting(std::span<const cplx> k, const ModelParams& p) {
  check_count(k, p);
  if (p.phi == 0.0) throw ArgumentError("rapidity parametrization degenerates at phi = 0");
  std::vector<cplx> lam(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) lam[j] = rapidity_from_momentum(k[j], p.phi);
  std::vector<cplx> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx v = static_cast<double>(p.L) * theta(1, lam[j], p.phi) + kI * p.phi * static_cast<double>(p.L);
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l != j) v -= theta(2, lam[j] - lam[l], p.phi);
    }
    out[j] = v / kTwoPi;
  }
  return out;
}

std::vector<double> pbc_bae_residual(std::span<const cplx> k, const ModelParams& p, std::span<const double> I,
                                     BaeForm form) {
  check_count(k, p);
  std::vector<double> out(k.size());
  if (form == BaeForm::Logarithmic) {
    if (I.size() != k.size()) throw ArgumentError("logarithmic residual needs one quantum number per root");
    const auto counting = pbc_log_counting(k, p);
    for (std::size_t j = 0; j < k.size(); ++j) out[j] = kTwoPi * std::abs(counting[j] - I[j]);
    return out;
  }
  const double sgn = sign_m(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx rhs = sgn;
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l != j) rhs *= pbc_scattering(k[l], k[j], p.phi) / pbc_scattering(k[j], k[l], p.phi);
    }
    out[j] = scaled_gap(std::exp(kI * k[j] * static_cast<double>(p.L)), rhs);
  }
  return out;
}

std::vector<double> obc_bae_residual(std::span<const cplx> k, const ModelParams& p) {
  check_count(k, p);
  for (const cplx& kj : k) {
    if (std::abs(std::sin(kj)) < 1e-10) {
      throw DomainError("open-chain quasimomentum at 0 or pi carries no standing wave");
    }
  }
  std::vector<double> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    const cplx lhs =
        std::exp(2.0 * kI * static_cast<double>(p.L - 1) * k[j]) * obc_boundary_factor(k[j], p.phi);
    cplx rhs = 1.0;
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l == j) continue;
      rhs *= obc_scattering(-k[j], k[l], p.phi) * obc_scattering(k[l], k[j], p.phi) /
             (obc_scattering(k[j], k[l], p.phi) * obc_scattering(k[l], -k[j], p.phi));
    }
    out[j] = scaled_gap(lhs, rhs);
  }
  return out;
}

std::vector<double> gbc_bae_residual(std::span<const cplx> k, const ModelParams& p) {
  check_count(k, p);
  if (p.delta_R <= 0.0) throw ArgumentError("generalized equations need delta_R > 0 (use the open equations)");
  const double sgn = sign_m(k.size());
  std::vector<double> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx rhs = sgn * gbc_kappa(k[j], p);
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l != j) rhs *= pbc_scattering(k[l], k[j], p.phi) / pbc_scattering(k[j], k[l], p.phi);
    }
    out[j] = scaled_gap(std::exp(kI * k[j] * static_cast<double>(p.L)), rhs);
  }
  return out;
}

std::vector<cplx> pbc_bae_system(std::span<const cplx> k, const ModelParams& p) {
  const double sgn = sign_m(k.size());
  std::vector<cplx> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx num = sgn;
    cplx den = 1.0;
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l == j) continue;
      num *= pbc_scattering(k[l], k[j], p.phi);
      den *= pbc_scattering(k[j], k[l], p.phi);
    }
    out[j] = std::exp(kI * k[j] * static_cast<double>(p.L)) * den - num;
  }
  return out;
}

std::vector<cplx> obc_bae_system(std::span<const cplx> k, const ModelParams& p) {
  std::vector<cplx> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx num = 1.0;
    cplx den = 1.0;
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l == j) continue;
      num *= obc_scattering(-k[j], k[l], p.phi) * obc_scattering(k[l], k[j], p.phi);
      den *= obc_scattering(k[j], k[l], p.phi) * obc_scattering(k[l], -k[j], p.phi);
    }
    out[j] = std::exp(2.0 * kI * static_cast<double>(p.L) * k[j]) * den - num;
  }
  return out;
}

std::vector<cplx> gbc_bae_system(std::span<const cplx> k, const ModelParams& p) {
  const double sgn = sign_m(k.size());
  std::vector<cplx> out(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    cplx num = sgn * gbc_kappa(k[j], p);
    cplx den = 1.0;
    for (std::size_t l = 0; l < k.size(); ++l) {
      if (l == j) continue;
      num *= pbc_scattering(k[l], k[j], p.phi);
      den *= pbc_scattering(k[j], k[l], p.phi);
    }
    out[j] = std::exp(kI * k[j] * static_cast<double>(p.L)) * den - num;
  }
  return out;
}

}  // namespace lse::bethe

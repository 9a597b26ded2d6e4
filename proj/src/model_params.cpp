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

#include "lse/model_params.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "lse/errors.hpp"

namespace lse {

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::Periodic:
      return "pbc";
    case Boundary::Open:
      return "obc";
    case Boundary::Generalized:
      return "gbc";
  }
  return "?";
}

Boundary parse_boundary(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pbc" || lower == "periodic") return Boundary::Periodic;
  if (lower == "obc" || lower == "open") return Boundary::Open;
  if (lower == "gbc" || lower == "generalized") return Boundary::Generalized;
  throw ArgumentError("unknown boundary mode '" + std::string(text) + "' (expected pbc, obc or gbc)");
}

double ModelParams::effective_delta_L() const {
  switch (bc) {
    case Boundary::Periodic:
      return J_left();
    case Boundary::Open:
      return 0.0;
    case Boundary::Generalized:
      return delta_L;
  }
  return 0.0;
}

double ModelParams::effective_delta_R() const {
  switch (bc) {
    case Boundary::Periodic:
      return J_right();
    case Boundary::Open:
      return 0.0;
    case Boundary::Generalized:
      return delta_R;
  }
  return 0.0;
}

void ModelParams::validate() const {
  if (L < 2) throw ArgumentError("L must be >= 2, got " + std::to_string(L));
  if (M < 0 || M > L) {
    throw ArgumentError("M must lie in [0, L], got M=" + std::to_string(M) + " L=" + std::to_string(L));
  }
  for (double v : {J, phi, delta_L, delta_R, J_prime, h}) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite model parameter in " + describe());
  }
  if (J <= 0.0) throw ArgumentError("J must be positive");
  if (delta_L < 0.0 || delta_R < 0.0) throw ArgumentError("boundary couplings must be >= 0");
  if (bc == Boundary::Open && (delta_L != 0.0 || delta_R != 0.0)) {
    throw ArgumentError("open boundary requires delta_L = delta_R = 0");
  }
}

ModelParams ModelParams::periodic(int L, int M, double phi, double J) {
  ModelParams p;
  p.L = L;
  p.M = M;
  p.phi = phi;
  p.J = J;
  p.bc = Boundary::Periodic;
  return p;
}

ModelParams ModelParams::open(int L, int M, double phi, double J) {
  ModelParams p = periodic(L, M, phi, J);
  p.bc = Boundary::Open;
  return p;
}

ModelParams ModelParams::generalized(int L, int M, double phi, double delta_L, double delta_R,
                                     double J) {
  ModelParams p = periodic(L, M, phi, J);
  p.bc = Boundary::Generalized;
  p.delta_L = delta_L;
  p.delta_R = delta_R;
  return p;
}

std::string ModelParams::describe() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "bc=%s L=%d M=%d J=%.6g phi=%.6g deltaL=%.6g deltaR=%.6g",
                std::string(to_string(bc)).c_str(), L, M, J, phi, delta_L, delta_R);
  return buf;
}

}  // namespace lse

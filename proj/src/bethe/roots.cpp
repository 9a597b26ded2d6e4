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


#include "lse/bethe/roots.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "lse/format.hpp"

namespace lse::bethe {

namespace {
constexpr cplx kI{0.0, 1.0};
}

cplx pbc_energy(std::span<const cplx> k, const ModelParams& p) {
  cplx e{};
  for (const cplx& kj : k) e += 2.0 * p.J * (std::cos(kj + kI * p.phi) - std::cosh(p.phi));
  return e;
}

cplx obc_energy(std::span<const cplx> k, const ModelParams& p) {
  cplx e{};
  for (const cplx& kj : k) e += 2.0 * p.J * (std::cos(kj) - std::cosh(p.phi));
  return e;
}

cplx gbc_energy(std::span<const cplx> k, const ModelParams& p) {
  const double scale = std::pow(p.J_right() / p.delta_R, 1.0 / p.L);
  cplx e{};
  for (const cplx& kj : k) {
    const cplx z = scale * std::exp(kI * kj);
    e += p.J_right() / z + p.J_left() * z - 2.0 * p.J * std::cosh(p.phi);
  }
  return e;
}

cplx bethe_energy(std::span<const cplx> k, const ModelParams& p) {
  switch (p.bc) {
    case Boundary::Periodic:
      return pbc_energy(k, p);
    case Boundary::Open:
      return obc_energy(k, p);
    case Boundary::Generalized:
      return gbc_energy(k, p);
  }
  return {};
}

void write_roots_csv_header(std::ostream& out) {
  out << "bc,L,M,phi,deltaL,deltaR,j,re_k,im_k,I_j,residual,re_E,im_E\n";
}

void write_roots_rows(std::ostream& out, const BetheRoots& r) {
  const ModelParams& p = r.params;
  const std::string prefix = std::string(to_string(p.bc)) + ',' + std::to_string(p.L) + ',' + std::to_string(p.M) +
                             ',' + format_double(p.phi) + ',' + format_double(p.delta_L) + ',' +
                             format_double(p.delta_R);
  for (std::size_t j = 0; j < r.k.size(); ++j) {
    const double I = j < r.quantum_numbers.size() ? r.quantum_numbers[j] : 0.0;
    out << prefix << ',' << (j + 1) << ',' << format_double(r.k[j].real()) << ',' << format_double(r.k[j].imag())
        << ',' << format_double(I) << ',' << format_double(r.residual) << ',' << format_double(r.energy.real())
        << ',' << format_double(r.energy.imag()) << '\n';
  }
}

}  // namespace lse::bethe

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


#include "lse/bethe/wavefunction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "lse/bethe/residuals.hpp"
#include "lse/errors.hpp"
#include "lse/liouvillian.hpp"

namespace lse::bethe {

namespace {

constexpr cplx kI{0.0, 1.0};

// Occupied positions x_1 < ... < x_M (1-based).
std::vector<int> positions(Word c) {
  std::vector<int> x;
  while (c != 0) {
    x.push_back(std::countr_zero(c) + 1);
    c &= c - 1;
  }
  return x;
}

std::vector<WaveLabel> obc_labels(int M) {
  std::vector<WaveLabel> labels;
  std::vector<int> perm(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    for (int mask = 0; mask < (1 << M); ++mask) {
      WaveLabel w;
      w.permutation = perm;
      for (int j = 0; j < M; ++j) w.signs.push_back((mask >> j) & 1 ? -1 : 1);
      labels.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return labels;
}

}  // namespace

cplx pbc_amplitude_ratio(cplx k1, cplx k2, double phi) {
  return -pbc_scattering(k1, k2, phi) / pbc_scattering(k2, k1, phi);
}

double eigen_residual(const SparseOperator& op, const Eigen::VectorXcd& v, cplx E) {
  const double n = v.norm();
  if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
  return (op.apply(v) - E * v).norm() / n;
}

BetheWavefunction bethe_wavefunction(const BetheRoots& roots, const SectorBasis& basis) {
  const ModelParams& p = roots.params;
  if (p.M > 2) throw ArgumentError("explicit wavefunctions are limited to M <= 2");
  if (basis.sites() != p.L || basis.particles() != p.M) throw ArgumentError("basis does not match root parameters");
  if (roots.k.size() != static_cast<std::size_t>(p.M)) throw ArgumentError("root count differs from M");
  BetheWavefunction out;
  out.roots = roots;
  const auto n = static_cast<Eigen::Index>(basis.size());
  out.vector = Eigen::VectorXcd::Zero(n);

  if (p.bc == Boundary::Periodic) {
    if (p.M == 0) {
      out.vector(0) = 1.0;
      return out;
    }
    if (p.M == 1) {
      out.labels = {{{0}, {}}};
      out.amplitudes = {1.0};
    } else {
      // A_12 = s(k2, k1), A_21 = -s(k1, k2): the ratio without dividing.
      out.labels = {{{0, 1}, {}}, {{1, 0}, {}}};
      out.amplitudes = {pbc_scattering(roots.k[1], roots.k[0], p.phi), -pbc_scattering(roots.k[0], roots.k[1], p.phi)};
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = positions(basis[static_cast<std::size_t>(i)]);
      cplx v{};
      for (std::size_t a = 0; a < out.labels.size(); ++a) {
        cplx phase{};
        for (std::size_t j = 0; j < x.size(); ++j) {
          phase += kI * roots.k[static_cast<std::size_t>(out.labels[a].permutation[j])] * static_cast<double>(x[j]);
        }
        v += out.amplitudes[a] * std::exp(phase);
      }
      out.vector(i) = v;
    }
  } else if (p.bc == Boundary::Open) {
    if (roots.boundary_roots > 0) throw ArgumentError("descendant states have no single plane-wave form");
    if (p.M == 0) {
      out.vector(0) = 1.0;
      return out;
    }
    out.labels = obc_labels(p.M);
    const auto nf = static_cast<Eigen::Index>(out.labels.size());
    Eigen::MatrixXcd F(n, nf);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto x = positions(basis[static_cast<std::size_t>(i)]);
      for (Eigen::Index a = 0; a < nf; ++a) {
        const WaveLabel& w = out.labels[static_cast<std::size_t>(a)];
        cplx e{};
        for (std::size_t j = 0; j < x.size(); ++j) {
          const cplx kp = roots.k[static_cast<std::size_t>(w.permutation[j])];
          e += (kI * static_cast<double>(w.signs[j]) * kp + p.phi) * static_cast<double>(x[j]);
        }
        F(i, a) = std::exp(e);
      }
    }
    const SparseOperator op = build_effective_liouvillian(p, basis);
    const Eigen::MatrixXcd G = op.to_dense() * F - roots.energy * F;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeFullV);
    const Eigen::VectorXcd a = svd.matrixV().col(nf - 1);
    out.amplitudes.assign(a.data(), a.data() + a.size());
    out.vector = F * a;
  } else {
    throw ArgumentError("explicit wavefunctions exist for PBC and OBC only");
  }
  const double norm = out.vector.norm();
  if (!(norm > 0.0) || !out.vector.allFinite()) throw NumericError("Bethe wavefunction vanishes identically");
  out.vector /= norm;
  return out;
}

}  // namespace lse::bethe

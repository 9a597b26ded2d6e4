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


#include "lse/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lse/errors.hpp"

namespace lse {

namespace {

double sz(Word c, int site) { return occupied(c, site) ? 0.5 : -0.5; }

// Sz Sz + h Sz on the appropriate bond set.
double coherent_energy(const ModelParams& p, Word c) {
  double e = 0.0;
  const int bonds = p.bc == Boundary::Periodic ? p.L : p.L - 1;
  for (int j = 1; j <= bonds; ++j) {
    const int k = j % p.L + 1;
    e += p.J_prime * sz(c, j) * sz(c, k);
  }
  for (int j = 1; j <= p.L; ++j) e += p.h * sz(c, j);
  return e;
}

// Literal assembly for phi >= 0. delta_L / delta_R are only read for GBC.
SparseOperator assemble_effective(const ModelParams& p, const SectorBasis& basis) {
  const int L = p.L;
  const double ch = std::cosh(p.phi);
  std::vector<Entry> t;
  t.reserve(basis.size() * static_cast<std::size_t>(2 * L + 1));

  const double hop_right = p.J * std::exp(p.phi);
  const double hop_left = p.J * std::exp(-p.phi);
  const int bonds = p.bc == Boundary::Periodic ? L : L - 1;
  const double field = p.bc == Boundary::Periodic ? 0.0 : p.J * std::sinh(p.phi);
  const bool gbc = p.bc == Boundary::Generalized;

  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Word c = basis[col];
    double diag = 0.0;
    for (int j = 1; j <= bonds; ++j) {
      const int k = j % L + 1;
      if (auto w = apply_hop(c, j, k)) t.push_back({basis.at(*w), col, hop_right});
      if (auto w = apply_hop(c, k, j)) t.push_back({basis.at(*w), col, hop_left});
      diag += 2.0 * p.J * ch * (sz(c, j) * sz(c, k) - 0.25);
    }
    diag += field * (sz(c, L) - sz(c, 1));
    if (gbc) {
      if (auto w = apply_hop(c, 1, L)) t.push_back({basis.at(*w), col, p.delta_L});
      if (auto w = apply_hop(c, L, 1)) t.push_back({basis.at(*w), col, p.delta_R});
      diag += p.delta_L * (sz(c, L) - 0.5) * (sz(c, 1) + 0.5);
      diag += p.delta_R * (sz(c, 1) - 0.5) * (sz(c, L) + 0.5);
    }
    t.push_back({col, col, diag});
  }
  return SparseOperator(basis.size(), std::move(t));
}

void check_basis(const ModelParams& p, const SectorBasis& basis) {
  if (basis.sites() != p.L || basis.particles() != p.M) {
    throw ArgumentError("basis (L=" + std::to_string(basis.sites()) + ", M=" + std::to_string(basis.particles()) +
                        ") does not match parameters " + p.describe());
  }
}

}  // namespace

std::vector<JumpOperator> jump_operators(const ModelParams& p) {
  std::vector<JumpOperator> ops;
  const int bonds = p.bc == Boundary::Periodic ? p.L : p.L - 1;
  for (int j = 1; j <= bonds; ++j) {
    const int k = j % p.L + 1;
    ops.push_back({k, j, p.J_left()});
    ops.push_back({j, k, p.J_right()});
  }
  if (p.bc == Boundary::Generalized) {
    ops.push_back({1, p.L, p.delta_L});
    ops.push_back({p.L, 1, p.delta_R});
  }
  return ops;
}

SparseOperator build_full_liouvillian(const ModelParams& p, DissipatorNormalization norm) {
  p.validate();
  if (p.L > kMaxFullSites) {
    throw CapacityError("full Liouvillian limited to L <= " + std::to_string(kMaxFullSites) + ", got L=" +
                        std::to_string(p.L));
  }
  const int L = p.L;
  const Word n = Word{1} << L;
  const double jump_weight = norm == DissipatorNormalization::Standard ? 1.0 : 2.0;
  const double anti_weight = norm == DissipatorNormalization::Standard ? 0.5 : 1.0;
  const auto ops = jump_operators(p);

  // L^dag L is diagonal: rate * n_from (1 - n_to).
  std::vector<double> decay(n, 0.0);
  std::vector<double> energy(n, 0.0);
  for (Word c = 0; c < n; ++c) {
    for (const auto& op : ops) {
      if (occupied(c, op.from) && !occupied(c, op.to)) decay[c] += op.rate;
    }
    energy[c] = coherent_energy(p, c);
  }

  std::vector<Entry> t;
  for (Word ket = 0; ket < n; ++ket) {
    for (Word bra = 0; bra < n; ++bra) {
      const std::size_t col = double_space_index(ket, bra, L);
      const cplx diag{-anti_weight * (decay[ket] + decay[bra]), -(energy[ket] - energy[bra])};
      t.push_back({col, col, diag});
      for (const auto& op : ops) {
        const auto k2 = apply_hop(ket, op.from, op.to);
        const auto b2 = apply_hop(bra, op.from, op.to);
        if (k2 && b2) t.push_back({double_space_index(*k2, *b2, L), col, jump_weight * op.rate});
      }
    }
  }
  return SparseOperator(std::size_t{n} * n, std::move(t));
}

ProjectorSet build_projectors(int L, int site) {
  if (L < 1 || L > kMaxFullSites || site < 1 || site > L) {
    throw ArgumentError("projectors need 1 <= site <= L <= " + std::to_string(kMaxFullSites));
  }
  const Word n = Word{1} << L;
  std::vector<Entry> p0;
  std::vector<Entry> p1;
  std::vector<Entry> p2;
  for (Word ket = 0; ket < n; ++ket) {
    for (Word bra = 0; bra < n; ++bra) {
      const std::size_t i = double_space_index(ket, bra, L);
      const bool r = occupied(ket, site);
      const bool l = occupied(bra, site);
      if (r == l) {
        p0.push_back({i, i, 1.0});
      } else if (r) {
        p1.push_back({i, i, 1.0});
      } else {
        p2.push_back({i, i, 1.0});
      }
    }
  }
  const std::size_t dim = std::size_t{n} * n;
  return {site, SparseOperator(dim, std::move(p0)), SparseOperator(dim, std::move(p1)),
          SparseOperator(dim, std::move(p2))};
}

SparseOperator diagonal_projector(int L) {
  if (L < 1 || L > kMaxFullSites) throw ArgumentError("diagonal_projector: L out of range");
  const Word n = Word{1} << L;
  std::vector<Entry> t;
  for (Word c = 0; c < n; ++c) {
    const std::size_t i = double_space_index(c, c, L);
    t.push_back({i, i, 1.0});
  }
  return SparseOperator(std::size_t{n} * n, std::move(t));
}

SparseOperator restrict_to_diagonal_sector(const SparseOperator& full, const SectorBasis& basis) {
  const int L = basis.sites();
  const std::size_t n = std::size_t{1} << L;
  if (full.dim() != n * n) throw ArgumentError("restrict_to_diagonal_sector: dimension mismatch");
  std::vector<Entry> t;
  for (const auto& e : full.entries()) {
    const auto rk = static_cast<Word>(e.row >> L);
    const auto rb = static_cast<Word>(e.row & (n - 1));
    const auto ck = static_cast<Word>(e.col >> L);
    const auto cb = static_cast<Word>(e.col & (n - 1));
    if (rk != rb || ck != cb) continue;
    const auto r = basis.index_of(rk);
    const auto c = basis.index_of(ck);
    if (r && c) t.push_back({*r, *c, e.value});
  }
  return SparseOperator(basis.size(), std::move(t));
}

SparseOperator build_effective_liouvillian(const ModelParams& params, const SectorBasis& basis) {
  params.validate();
  check_basis(params, basis);
  if (params.phi >= 0.0) return assemble_effective(params, basis);
  ModelParams mirrored = params;
  mirrored.phi = -params.phi;
  mirrored.delta_L = params.delta_R;
  mirrored.delta_R = params.delta_L;
  return invert_sites(assemble_effective(mirrored, basis), basis);
}

SparseOperator gauge_transform(const SparseOperator& op, const SectorBasis& basis, double phi) {
  if (op.dim() != basis.size()) throw ArgumentError("gauge_transform: dimension mismatch");
  std::vector<int> s(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) s[i] = position_sum(basis[i]);
  std::vector<Entry> t = op.entries();
  for (auto& e : t) e.value *= std::exp(phi * (s[e.col] - s[e.row]));
  return SparseOperator(op.dim(), std::move(t));
}

SparseOperator build_hermitian_open(const ModelParams& params, const SectorBasis& basis) {
  check_basis(params, basis);
  const int L = params.L;
  const double ch = std::cosh(params.phi);
  std::vector<Entry> t;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Word c = basis[col];
    double diag = 0.0;
    for (int j = 1; j < L; ++j) {
      if (auto w = apply_hop(c, j, j + 1)) t.push_back({basis.at(*w), col, params.J});
      if (auto w = apply_hop(c, j + 1, j)) t.push_back({basis.at(*w), col, params.J});
      diag += 2.0 * params.J * ch * (sz(c, j) * sz(c, j + 1) - 0.25);
    }
    diag += params.J * std::sinh(params.phi) * (sz(c, L) - sz(c, 1));
    t.push_back({col, col, diag});
  }
  return SparseOperator(basis.size(), std::move(t));
}

SparseOperator build_strong_drive_open(double J, const SectorBasis& basis) {
  const int L = basis.sites();
  std::vector<Entry> t;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Word c = basis[col];
    double diag = 0.0;
    for (int j = 1; j < L; ++j) {
      if (auto w = apply_hop(c, j, j + 1)) t.push_back({basis.at(*w), col, J});
      diag += J * (sz(c, j) * sz(c, j + 1) - 0.25);
    }
    diag += 0.5 * J * (sz(c, L) - sz(c, 1));
    t.push_back({col, col, diag});
  }
  return SparseOperator(basis.size(), std::move(t));
}

std::vector<std::size_t> strong_drive_ordering(const SectorBasis& basis) {
  std::vector<std::size_t> perm(basis.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<int> s(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) s[i] = position_sum(basis[i]);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return s[a] != s[b] ? s[a] > s[b] : basis[a] > basis[b];
  });
  return perm;
}

SparseOperator permute(const SparseOperator& op, const std::vector<std::size_t>& perm) {
  if (perm.size() != op.dim()) throw ArgumentError("permute: size mismatch");
  std::vector<std::size_t> inverse(perm.size(), perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size() || inverse[perm[k]] != perm.size()) {
      throw ArgumentError("permute: not a permutation");
    }
    inverse[perm[k]] = k;
  }
  std::vector<Entry> t = op.entries();
  for (auto& e : t) {
    e.row = inverse[e.row];
    e.col = inverse[e.col];
  }
  return SparseOperator(op.dim(), std::move(t));
}

SparseOperator invert_sites(const SparseOperator& op, const SectorBasis& basis) {
  if (op.dim() != basis.size()) throw ArgumentError("invert_sites: dimension mismatch");
  std::vector<std::size_t> perm(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) perm[i] = basis.at(reverse_sites(basis[i], basis.sites()));
  return permute(op, perm);
}

Word domain_wall(int L, int M) {
  if (M < 0 || M > L || L > kMaxSites) throw ArgumentError("domain_wall: need 0 <= M <= L <= 28");
  const Word block = M == 0 ? Word{0} : static_cast<Word>((std::uint64_t{1} << M) - 1);
  return block << (L - M);
}

}  // namespace lse

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

#include "lse/sector_basis.hpp"

#include <algorithm>
#include <bit>

#include "lse/errors.hpp"

namespace lse {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 62) throw ArgumentError("binomial: n too large");
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

namespace {

// Colex rank table: rank(word) = sum_i C(b_i, i + 1) with b_0 < b_1 < ...
// the set bit positions.
std::uint64_t colex_rank(Word word) {
  std::uint64_t rank = 0;
  int i = 0;
  while (word != 0) {
    const int b = std::countr_zero(word);
    rank += binomial(b, i + 1);
    ++i;
    word &= word - 1;
  }
  return rank;
}

}  // namespace

std::optional<std::size_t> SectorBasis::index_of(Word word) const {
  if (L_ < 32 && (word >> L_) != 0) return std::nullopt;
  if (std::popcount(word) != M_) return std::nullopt;
  return static_cast<std::size_t>(colex_rank(word));
}

std::size_t SectorBasis::at(Word word) const {
  auto idx = index_of(word);
  if (!idx) {
    throw ArgumentError("configuration " + to_bitstring(word, L_) + " is not in sector L=" +
                        std::to_string(L_) + " M=" + std::to_string(M_));
  }
  return *idx;
}

SectorBasis build_sector(int L, int M, std::size_t dimension_cap) {
  if (L < 0 || L > kMaxSites) {
    throw ArgumentError("L must lie in [0, " + std::to_string(kMaxSites) + "], got " + std::to_string(L));
  }
  if (M < 0 || M > L) {
    throw ArgumentError("M must lie in [0, L], got M=" + std::to_string(M) + " L=" + std::to_string(L));
  }
  const std::uint64_t dim = binomial(L, M);
  if (dim > dimension_cap) {
    throw CapacityError("sector L=" + std::to_string(L) + " M=" + std::to_string(M) + " has dimension " +
                        std::to_string(dim) + " above cap " + std::to_string(dimension_cap));
  }

  SectorBasis basis;
  basis.L_ = L;
  basis.M_ = M;
  basis.configs_.reserve(dim);
  if (M == 0) {
    basis.configs_.push_back(0);
    return basis;
  }
  // Gosper's hack enumerates fixed-popcount words in increasing order.
  std::uint64_t w = (std::uint64_t{1} << M) - 1;
  const std::uint64_t limit = std::uint64_t{1} << L;
  while (w < limit) {
    basis.configs_.push_back(static_cast<Word>(w));
    const std::uint64_t c = w & (~w + 1);
    const std::uint64_t r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
  return basis;
}

std::optional<Word> apply_hop(Word config, int from, int to) {
  if (!occupied(config, from) || occupied(config, to)) return std::nullopt;
  return config ^ (Word{1} << (from - 1)) ^ (Word{1} << (to - 1));
}

int position_sum(Word config) {
  int s = 0;
  while (config != 0) {
    s += std::countr_zero(config) + 1;
    config &= config - 1;
  }
  return s;
}

Word reverse_sites(Word config, int L) {
  Word out = 0;
  for (int j = 0; j < L; ++j) {
    if ((config >> j) & 1u) out |= Word{1} << (L - 1 - j);
  }
  return out;
}

std::string to_bitstring(Word config, int L) {
  std::string s(static_cast<std::size_t>(L), '0');
  for (int j = 0; j < L; ++j) {
    if ((config >> j) & 1u) s[static_cast<std::size_t>(L - 1 - j)] = '1';
  }
  return s;
}

}  // namespace lse

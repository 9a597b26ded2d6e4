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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lse {

/// Occupation word: bit (j-1) is the occupation of site j, so site 1 is the
/// least significant bit. An occupied site carries an up-spin (magnon).
using Word = std::uint32_t;

inline constexpr int kMaxSites = 28;
/// binomial(28, 14); any sector of a valid chain fits.
inline constexpr std::size_t kDefaultDimensionCap = 40116600;

/// Exact binomial coefficient for n <= 62.
std::uint64_t binomial(int n, int k);

/// Fixed-magnetization sector: all L-bit words with exactly M set bits,
/// sorted ascending as unsigned integers.
class SectorBasis {
 public:
  int sites() const { return L_; }
  int particles() const { return M_; }
  std::size_t size() const { return configs_.size(); }

  std::span<const Word> configs() const { return configs_; }
  Word operator[](std::size_t i) const { return configs_[i]; }

  /// Ordinal of `word`, or nullopt if it is not in the sector. O(L) via the
  /// combinatorial number system (ascending order of fixed-popcount words is
  /// colexicographic order of their bit sets).
  std::optional<std::size_t> index_of(Word word) const;

  /// Like index_of but throws ArgumentError for words outside the sector.
  std::size_t at(Word word) const;

  friend SectorBasis build_sector(int L, int M, std::size_t dimension_cap);

 private:
  int L_ = 0;
  int M_ = 0;
  std::vector<Word> configs_;
};

/// Enumerates the (L, M) sector.
/// Throws ArgumentError unless 0 <= M <= L <= kMaxSites, and CapacityError
/// when binomial(L, M) exceeds `dimension_cap`.
SectorBasis build_sector(int L, int M, std::size_t dimension_cap = kDefaultDimensionCap);

/// Moves the particle on site `from` to site `to` (both 1-based).
/// Returns nullopt when `from` is empty or `to` is occupied.
std::optional<Word> apply_hop(Word config, int from, int to);

inline bool occupied(Word config, int site) { return ((config >> (site - 1)) & 1u) != 0; }

/// Sum of the 1-based positions of occupied sites.
int position_sum(Word config);

/// Site reversal j -> L + 1 - j.
Word reverse_sites(Word config, int L);

/// L-character string, site L first and site 1 last (so "0011" has sites 1
/// and 2 occupied, matching the unsigned-integer reading of the word).
std::string to_bitstring(Word config, int L);

}  // namespace lse

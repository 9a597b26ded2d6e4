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


#include <algorithm>
#include <bit>
#include <vector>

#include "doctest.h"
#include "lse/errors.hpp"
#include "lse/model_params.hpp"
#include "lse/sector_basis.hpp"

using namespace lse;

namespace {

// Independent binomial via Pascal's triangle in doubles.
double pascal(int n, int k) {
  std::vector<double> row{1.0};
  for (int i = 1; i <= n; ++i) {
    std::vector<double> next(static_cast<std::size_t>(i) + 1, 1.0);
    for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

Word bits(const char* s) {
  Word w = 0;
  for (const char* c = s; *c; ++c) w = (w << 1) | static_cast<Word>(*c == '1');
  return w;
}

}  // namespace

TEST_CASE("L=4 M=2 sector lists six words in ascending order") {
  const SectorBasis b = build_sector(4, 2);
  const std::vector<Word> expected = {bits("0011"), bits("0101"), bits("0110"), bits("1001"), bits("1010"), bits("1100")};
  REQUIRE(b.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(b[i] == expected[i]);
}

TEST_CASE("empty sector of a single site") {
  const SectorBasis b = build_sector(1, 0);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == 0u);
}

TEST_CASE("L=20 M=10 sector size matches an independent binomial") {
  const SectorBasis b = build_sector(20, 10);
  CHECK(b.size() == 184756u);
  CHECK(static_cast<double>(b.size()) == pascal(20, 10));
}

TEST_CASE("sector sizes sum to 2^L") {
  for (int L = 1; L <= 8; ++L) {
    std::size_t total = 0;
    for (int M = 0; M <= L; ++M) {
      const SectorBasis b = build_sector(L, M);
      CHECK(static_cast<double>(b.size()) == pascal(L, M));
      total += b.size();
    }
    CHECK(total == (std::size_t{1} << L));
  }
}

TEST_CASE("index_of inverts enumeration and rejects outsiders") {
  for (int L = 1; L <= 10; ++L) {
    for (int M = 0; M <= L; ++M) {
      const SectorBasis b = build_sector(L, M);
      for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(std::popcount(b[i]) == M);
        if (i > 0) CHECK(b[i - 1] < b[i]);
        REQUIRE(b.index_of(b[i]).has_value());
        CHECK(*b.index_of(b[i]) == i);
      }
    }
  }
  const SectorBasis b = build_sector(4, 2);
  CHECK_FALSE(b.index_of(bits("0111")).has_value());
  CHECK_FALSE(b.index_of(bits("10001")).has_value());
  CHECK_THROWS_AS(b.at(bits("0001")), ArgumentError);
}

TEST_CASE("invalid sectors and capacity") {
  CHECK_THROWS_AS(build_sector(4, 5), ArgumentError);
  CHECK_THROWS_AS(build_sector(4, -1), ArgumentError);
  CHECK_THROWS_AS(build_sector(29, 1), ArgumentError);
  CHECK_THROWS_AS(build_sector(20, 10, 1000), CapacityError);
}

TEST_CASE("apply_hop follows the hard-core rule") {
  const Word c = bits("0011");
  REQUIRE(apply_hop(c, 1, 3).has_value());
  CHECK(*apply_hop(c, 1, 3) == bits("0110"));
  CHECK_FALSE(apply_hop(c, 3, 4).has_value());
  CHECK_FALSE(apply_hop(c, 1, 2).has_value());
}

TEST_CASE("apply_hop is injective and undone by the reverse hop") {
  const int L = 6;
  for (int M = 0; M <= L; ++M) {
    const SectorBasis b = build_sector(L, M);
    for (int from = 1; from <= L; ++from) {
      for (int to = 1; to <= L; ++to) {
        if (from == to) continue;
        std::vector<Word> images;
        for (Word c : b.configs()) {
          if (auto img = apply_hop(c, from, to)) {
            images.push_back(*img);
            REQUIRE(apply_hop(*img, to, from).has_value());
            CHECK(*apply_hop(*img, to, from) == c);
          }
        }
        std::sort(images.begin(), images.end());
        CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
      }
    }
  }
}

TEST_CASE("derived hopping rates") {
  for (double phi : {-1.3, 0.0, 0.25, 2.0}) {
    ModelParams p = ModelParams::periodic(6, 3, phi, 1.7);
    CHECK(p.J_left() * p.J_right() == doctest::Approx(1.7 * 1.7).epsilon(1e-15));
  }
}

TEST_CASE("parameter validation") {
  ModelParams p = ModelParams::open(6, 3, 0.5);
  CHECK_NOTHROW(p.validate());
  p.delta_L = 0.1;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  CHECK_THROWS_AS(ModelParams::periodic(1, 0, 0.0).validate(), ArgumentError);
  CHECK_THROWS_AS(ModelParams::periodic(4, 5, 0.0).validate(), ArgumentError);
  CHECK_THROWS_AS(ModelParams::periodic(4, 2, 0.0, -1.0).validate(), ArgumentError);
  CHECK_THROWS_AS(ModelParams::generalized(4, 2, 0.0, -0.1, 0.0).validate(), ArgumentError);
  CHECK(parse_boundary("GBC") == Boundary::Generalized);
  CHECK_THROWS_AS(parse_boundary("twisted"), ArgumentError);
}

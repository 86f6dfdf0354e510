// Copyright 2026 The hetcache Authors
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

#include <array>
#include <random>
#include <vector>

#include "doctest.h"
#include "hetcache/bitstring.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/simkit.hpp"

using namespace hetcache;
using doctest::Approx;

namespace {

SubLayerSpec spec(int layer_users, int sublayer, double cache, int num_files) {
  SubLayerSpec s;
  s.sublayer = sublayer;
  s.layer_users = layer_users;
  s.cached_users = layer_users - sublayer + 1;
  s.cache = cache;
  s.num_files = num_files;
  return s;
}

DemandVector distinct(int users, int files) {
  DemandVector d;
  for (int u = 0; u < users; ++u) d.files.push_back(u % files + 1);
  return d;
}

}  // namespace

TEST_CASE("bit strings slice, xor and append") {
  std::mt19937_64 rng(1);
  const BitString a = BitString::random(200, rng);
  const BitString head = a.slice(0, 70);
  const BitString tail = a.slice(70, 130);
  BitString joined = head;
  joined.append(tail);
  CHECK(joined == a);
  for (std::size_t i = 0; i < 130; ++i) CHECK(tail.get(i) == a.get(70 + i));

  const BitString past = a.slice(190, 20);
  for (std::size_t i = 10; i < 20; ++i) CHECK_FALSE(past.get(i));

  BitString x = a;
  x ^= a;
  CHECK(x.common_prefix(BitString(200)) == 200);

  BitString shorter = a.slice(0, 10);
  shorter ^= a;
  CHECK(shorter.size() == 200);
  CHECK(shorter.slice(0, 10) == BitString(10));
  CHECK(shorter.slice(10, 190) == a.slice(10, 190));

  BitString flipped = a;
  flipped.flip(77);
  CHECK(flipped.common_prefix(a) == 77);
}

TEST_CASE("bits for rate") {
  CHECK(bits_for_rate(0.3, 10000) == 3000);
  CHECK(bits_for_rate(1.0 / 3.0, 10) == 4);
  CHECK(bits_for_rate(0.0, 10) == 0);
  CHECK_THROWS_AS(bits_for_rate(-1.0, 10), DomainError);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 5) == 0);
}

TEST_CASE("files are deterministic in the seed") {
  const SystemConfig cfg{3, 2, 1.0, 1000};
  const auto a = make_files(cfg, 2.0, 42);
  const auto b = make_files(cfg, 2.0, 42);
  const auto c = make_files(cfg, 2.0, 43);
  REQUIRE(a.size() == 3);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(a[f].file_index == static_cast<int>(f) + 1);
    CHECK(a[f].bits.size() == 2000);
    CHECK(a[f].bits == b[f].bits);
    CHECK_FALSE(a[f].bits == c[f].bits);
  }
}

TEST_CASE("pinned file prefixes") {
  const SystemConfig cfg{2, 1, 1.0, 64};
  const auto seven = make_files(cfg, 1.0, 7);
  const auto nine = make_files(cfg, 1.0, 9);
  const std::array<std::uint8_t, 4> expect_seven{0xa7, 0xd9, 0x62, 0xc1};
  const std::array<std::uint8_t, 4> expect_nine{0x57, 0x2e, 0x0e, 0xd3};
  CHECK(seven[0].bits.byte(0) == expect_seven[0]);
  CHECK(seven[0].bits.byte(1) == expect_seven[1]);
  CHECK(seven[1].bits.byte(0) == expect_seven[2]);
  CHECK(seven[1].bits.byte(1) == expect_seven[3]);
  CHECK(nine[0].bits.byte(0) == expect_nine[0]);
  CHECK(nine[0].bits.byte(1) == expect_nine[1]);
  CHECK(nine[1].bits.byte(0) == expect_nine[2]);
  CHECK(nine[1].bits.byte(1) == expect_nine[3]);
}

TEST_CASE("one-bit files") {
  const auto files = make_files({1, 1, 1.0, 1}, 1.0, 3);
  CHECK(files[0].bits.size() == 1);
}

TEST_CASE("coded delivery without cache sends each distinct demand once") {
  const auto files = make_files({3, 4, 1.0, 1000}, 1.0, 1);
  const auto out = man_coded_delivery_sim(4, 0, 1.0, 1000, files, DemandVector{{1, 2, 1, 3}});
  CHECK(out.decode_ok);
  CHECK(out.transmitted_bits == 3000);
}

TEST_CASE("full cache needs no delivery") {
  const auto files = make_files({3, 3, 1.0, 1000}, 1.0, 1);
  const auto out = man_coded_delivery_sim(3, 3, 1.0, 1000, files, distinct(3, 3));
  CHECK(out.decode_ok);
  CHECK(out.transmitted_bits == 0);
}

TEST_CASE("three users with single-user subsets") {
  const std::int64_t n = 30000;
  const auto files = make_files({3, 3, 1.0, n}, 1.0, 1);
  const auto out = man_coded_delivery_sim(3, 1, 1.0, n, files, distinct(3, 3));
  CHECK(out.decode_ok);
  // 3 (1 - 1/3) / (1 + 1) = 1
  CHECK(static_cast<double>(out.transmitted_bits) / n == Approx(1.0));
  for (auto got : out.per_user_recovered) CHECK(got == n);
}

TEST_CASE("corner verification") {
  for (int L = 1; L <= 4; ++L) {
    for (int i = 1; i <= L; ++i) {
      for (int N = 1; N <= 4; ++N) {
        const SubLayerSpec s = spec(L, i, 0.8, N);
        for (int t = 1; t <= s.cached_users; ++t) CHECK(verify_corner(s, t, 20000, 1));
      }
    }
  }
  CHECK(verify_corner(spec(3, 1, 0.0, 2), 1, 1000, 1));
}

TEST_CASE("corrupted caches are detected") {
  SimFaults faults;
  faults.corrupt_cache = true;
  CHECK_FALSE(verify_corner(spec(3, 1, 0.8, 3), 1, 2000, 1, faults));
  const auto files = make_files({2, 2, 1.0, 500}, 1.0, 1);
  const auto out = man_coded_delivery_sim(2, 1, 1.0, 500, files, distinct(2, 2), faults);
  CHECK_FALSE(out.decode_ok);
}

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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hetcache/errors.hpp"
#include "hetcache/pair_optimal.hpp"
#include "oracles.hpp"

using namespace hetcache;
using doctest::Approx;

namespace {

const std::vector<DemandVector> kDemands{{{1, 2}}, {{2, 1}}, {{1, 1}}, {{2, 2}}};

std::vector<std::string> names(const DeliveryMessage& m) {
  std::vector<std::string> out;
  for (const Piece& p : m.pieces) out.push_back(to_string(p));
  return out;
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

TEST_CASE("case classification examples") {
  CHECK(classify_case({0.2, 0.3, 1, 2}) == PairCase::I);
  CHECK(classify_case({1, 1, 1, 2}) == PairCase::II);
  CHECK(classify_case({1.5, 1, 1, 2}) == PairCase::III);
  CHECK(classify_case({1.5, 4.5, 1, 2}) == PairCase::IV);
  CHECK(classify_case({3, 5, 1, 2}) == PairCase::V);
  CHECK(to_string(PairCase::III) == "III");
}

TEST_CASE("boundary points go to the lower case") {
  // M1 + M2 = r1 is in both I and II.
  CHECK(classify_case({0.5, 0.5, 1, 2}) == PairCase::I);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(classify_case({0, 0, 2, 1}), DomainError);
  CHECK_THROWS_AS(optimal_rate({-1, 0, 1, 2}), DomainError);
}

TEST_CASE("optimal rate examples") {
  CHECK(optimal_rate({0, 0, 1, 2}) == Approx(3.0));
  CHECK(optimal_rate({1, 1, 1, 2}) == Approx(1.5));
  CHECK(optimal_rate({3, 5, 1, 2}) == 0.0);
}

TEST_CASE("case closed forms equal the five-term max") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20000; ++trial) {
    double r1 = 3 * u(rng);
    double r2 = 3 * u(rng);
    if (r1 > r2) std::swap(r1, r2);
    const PairParams p{(2 * r2 + 1) * u(rng), (2 * r2 + 1) * u(rng), r1, r2};
    const double expect = oracle::five_term_max(p.m1, p.m2, r1, r2);
    CHECK(case_rate(classify_case(p), p) == Approx(expect).epsilon(1e-12));
    CHECK(optimal_rate(p) == Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("optimal rate is non-increasing in each cache") {
  for (double m1 = 0; m1 <= 5; m1 += 0.25) {
    for (double m2 = 0; m2 <= 5; m2 += 0.25) {
      const double r = optimal_rate({m1, m2, 1, 2});
      CHECK(optimal_rate({m1 + 0.25, m2, 1, 2}) <= r + 1e-12);
      CHECK(optimal_rate({m1, m2 + 0.25, 1, 2}) <= r + 1e-12);
    }
  }
}

TEST_CASE("placement of case I") {
  const PlacementTable t = build_placement({0.2, 0.3, 1, 2});
  CHECK(t.which == PairCase::I);
  CHECK(t.size(1) == Approx(0.2));
  CHECK(t.size(2) == Approx(0.3));
  CHECK(t.size(6) == Approx(0.5));
  CHECK(t.size(8) == Approx(1.0));
  for (int part : {3, 4, 5, 7}) CHECK(t.size(part) == 0.0);
  CHECK(t.cache_load(1) == Approx(0.2));
  CHECK(t.cache_load(2) == Approx(0.3));
}

TEST_CASE("placement of case V") {
  const PlacementTable t = build_placement({3, 5, 1, 2});
  CHECK(t.size(5) == Approx(1.0));
  CHECK(t.size(7) == Approx(1.0));
  for (int part : {1, 2, 3, 4, 6, 8}) CHECK(t.size(part) == 0.0);
}

TEST_CASE("placement of case III") {
  const PlacementTable t = build_placement({1.5, 1, 1, 2});
  CHECK(t.which == PairCase::III);
  CHECK(t.l1 == 0.0);
  CHECK(t.l2 == 0.0);
  CHECK(t.size(1) == Approx(1.0));
  CHECK(t.size(7) == Approx(0.5));
  CHECK(t.size(8) == Approx(0.5));
  CHECK(t.cache_load(1) <= 1.5 + 1e-12);
  CHECK(t.cache_load(2) <= 1.0 + 1e-12);
}

TEST_CASE("delivery in case I") {
  const PlacementTable t = build_placement({0.2, 0.3, 1, 2});
  const DeliveryMessage m = delivery_message(t, {{1, 2}});
  const auto got = names(m);
  for (const char* want : {"B1", "A2", "A6", "B6", "B8"}) CHECK(contains(got, want));
  CHECK(got.size() == 5);
  CHECK(m.total_rate == Approx(1 + 2 - 0.2 - 0.3));
}

TEST_CASE("delivery in case IV") {
  const PairParams p{0.5, 4.5, 1, 2};
  const PlacementTable t = build_placement(p);
  REQUIRE(t.which == PairCase::IV);
  const DeliveryMessage m = delivery_message(t, {{1, 2}});
  const auto got = names(m);
  CHECK(contains(got, "B3^A4"));
  CHECK(contains(got, "A2"));
  CHECK(got.size() == 2);
  CHECK(m.total_rate == Approx(1 - 0.5 / 2));
}

TEST_CASE("case V needs no delivery") {
  const PlacementTable t = build_placement({3, 5, 1, 2});
  for (const DemandVector& d : kDemands) {
    const DeliveryMessage m = delivery_message(t, d);
    CHECK(m.pieces.empty());
    CHECK(m.total_rate == 0.0);
    CHECK_NOTHROW(decode(t, 1, m, d));
    CHECK_NOTHROW(decode(t, 2, m, d));
  }
}

TEST_CASE("decode traces") {
  const PlacementTable t1 = build_placement({0.2, 0.3, 1, 2});
  const DemandVector d{{1, 2}};
  const auto got = decode(t1, 1, delivery_message(t1, d), d);
  for (int part = 1; part <= 6; ++part) CHECK(got.count({1, part}));

  const PlacementTable t4 = build_placement({0.5, 4.5, 1, 2});
  const auto user2 = decode(t4, 2, delivery_message(t4, d), d);
  for (int part = 1; part <= 8; ++part) CHECK(user2.count({2, part}));
}

TEST_CASE("decode reports the missing part") {
  const PlacementTable t = build_placement({0.2, 0.3, 1, 2});
  const DemandVector d{{1, 2}};
  DeliveryMessage m = delivery_message(t, d);
  m.pieces.erase(m.pieces.begin());  // drop B1
  try {
    decode(t, 1, m, d);
    FAIL("expected a decode failure");
  } catch (const DecodeError& e) {
    CHECK(std::string(e.what()).find("A1") != std::string::npos);
  }
}

TEST_CASE("property: every demand decodes at the optimal rate") {
  for (const auto& [r1, r2] : {std::pair{1.0, 2.0}, {1.0, 1.0}, {0.5, 2.0}}) {
    for (double m1 = 0; m1 <= 2 * r2 + 1 + 1e-9; m1 += 0.1) {
      for (double m2 = 0; m2 <= 2 * r2 + 1 + 1e-9; m2 += 0.1) {
        const PairParams p{m1, m2, r1, r2};
        const PlacementTable t = build_placement(p);
        CHECK(t.cache_load(1) <= m1 + 1e-9);
        CHECK(t.cache_load(2) <= m2 + 1e-9);
        for (const DemandVector& d : kDemands) {
          const DeliveryMessage m = delivery_message(t, d);
          CHECK(m.total_rate <= optimal_rate(p) + 1e-9);
          CHECK_NOTHROW(decode(t, 1, m, d));
          CHECK_NOTHROW(decode(t, 2, m, d));
        }
      }
    }
  }
}

TEST_CASE("bit-level simulation examples") {
  const SystemConfig cfg{2, 2, 1.0, 10000};
  const auto none = simulate_pair(cfg, {0, 0, 1, 2}, {{1, 2}});
  CHECK(none.decode_ok);
  CHECK(none.achieved_rate_bits == 30000);

  const auto mid = simulate_pair(cfg, {1, 1, 1, 2}, {{1, 2}});
  CHECK(mid.decode_ok);
  CHECK(mid.achieved_rate_bits <= 15008);

  for (const DemandVector& d : kDemands) {
    const auto full = simulate_pair(cfg, {3, 5, 1, 2}, d);
    CHECK(full.decode_ok);
    CHECK(full.achieved_rate_bits == 0);
  }
}

TEST_CASE("simulation rejects other system sizes and catches corruption") {
  CHECK_THROWS_AS(simulate_pair({3, 2, 1.0, 100}, {1, 1, 1, 2}, {{1, 2}}), ValidationError);
  const SystemConfig cfg{2, 2, 1.0, 4000};
  SimFaults faults;
  faults.corrupt_cache = true;
  CHECK_FALSE(simulate_pair(cfg, {1, 1, 1, 2}, {{1, 2}}, 5, faults).decode_ok);
  CHECK_FALSE(simulate_pair(cfg, {0.2, 0.3, 1, 2}, {{2, 1}}, 5, faults).decode_ok);
}

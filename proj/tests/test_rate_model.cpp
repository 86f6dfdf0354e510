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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "hetcache/errors.hpp"
#include "hetcache/rate_model.hpp"

using namespace hetcache;
using doctest::Approx;

TEST_CASE("rate_of_distortion closed values") {
  CHECK(rate_of_distortion(1.0, 1.0) == 0.0);
  CHECK(rate_of_distortion(1.0, 0.25) == Approx(1.0).epsilon(1e-15));
  // 0.5 * log2(8)
  CHECK(rate_of_distortion(4.0, 0.5) == Approx(1.5).epsilon(1e-15));
  CHECK(rate_of_distortion(1.0, 2.0) == 0.0);
}

TEST_CASE("rate_of_distortion rejects non-positive arguments") {
  CHECK_THROWS_AS(rate_of_distortion(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(rate_of_distortion(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(rate_of_distortion(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(rate_of_distortion(1.0, -0.5), DomainError);
}

TEST_CASE("distortion_of_rate inverts rate_of_distortion") {
  for (double r : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    const double d = distortion_of_rate(3.0, r);
    CHECK(rate_of_distortion(3.0, d) == Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("build_rate_profile on exact powers of two") {
  const SystemConfig cfg{2, 2, 1.0, 1};
  const std::vector<double> d{0.25, 0.0625};
  const RateProfile p = build_rate_profile(cfg, d);
  REQUIRE(p.num_users() == 2);
  CHECK(p.rates[0] == Approx(1.0));
  CHECK(p.rates[1] == Approx(2.0));
  CHECK(p.increments[0] == Approx(1.0));
  CHECK(p.increments[1] == Approx(1.0));
  CHECK(p.previous_rate(0) == 0.0);
  CHECK(p.previous_rate(1) == Approx(1.0));
}

TEST_CASE("ten-user profile with unit increments") {
  const SystemConfig cfg{10, 10, 1.0, 1};
  std::vector<double> d;
  for (int k = 1; k <= 10; ++k) d.push_back(std::pow(4.0, -k));
  const RateProfile p = build_rate_profile(cfg, d);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(p.rates[k] == Approx(k + 1.0).epsilon(1e-12));
    CHECK(p.increments[k] == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("single user at the source variance has zero rate") {
  const SystemConfig cfg{1, 1, 2.0, 1};
  const std::vector<double> d{2.0};
  const RateProfile p = build_rate_profile(cfg, d);
  CHECK(p.rates[0] == 0.0);
  CHECK(p.increments[0] == 0.0);
}

TEST_CASE("unsorted distortions are rejected with the index") {
  const SystemConfig cfg{3, 3, 1.0, 1};
  const std::vector<double> d{0.5, 0.25, 0.3};
  try {
    build_rate_profile(cfg, d);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("D[3]") != std::string::npos);
  }
}

TEST_CASE("distortion count must match the user count") {
  const SystemConfig cfg{2, 3, 1.0, 1};
  const std::vector<double> d{0.5, 0.25};
  CHECK_THROWS_AS(build_rate_profile(cfg, d), ValidationError);
}

TEST_CASE("SystemConfig validation") {
  CHECK_NOTHROW(SystemConfig{1, 1, 1.0, 1}.validate());
  CHECK_THROWS_AS((SystemConfig{0, 1, 1.0, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((SystemConfig{1, 0, 1.0, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((SystemConfig{1, 1, 0.0, 1}.validate()), ValidationError);
  CHECK_THROWS_AS((SystemConfig{1, 1, 1.0, 0}.validate()), ValidationError);
}

TEST_CASE("rate_profile_from_rates keeps rates exact") {
  const std::vector<double> r{0.5, 0.5, 1.75};
  const RateProfile p = rate_profile_from_rates(r);
  CHECK(p.rates == r);
  CHECK(p.increments[1] == 0.0);
  CHECK(p.increments[2] == 1.25);
  CHECK(p.distortions[0] >= p.distortions[2]);
  const std::vector<double> bad{1.0, 0.5};
  CHECK_THROWS_AS(rate_profile_from_rates(bad), ValidationError);
}

TEST_CASE("cache and demand validation") {
  CHECK_NOTHROW((CacheProfile{{0.0, 1.0}}.validate(2)));
  CHECK_THROWS_AS((CacheProfile{{-1.0, 1.0}}.validate(2)), ValidationError);
  CHECK_THROWS_AS((CacheProfile{{1.0}}.validate(2)), ValidationError);
  CHECK_NOTHROW((DemandVector{{1, 2}}.validate(2, 2)));
  CHECK_THROWS_AS((DemandVector{{1, 3}}.validate(2, 2)), ValidationError);
  CHECK_THROWS_AS((DemandVector{{0, 1}}.validate(2, 2)), ValidationError);
  CHECK_THROWS_AS((DemandVector{{1}}.validate(2, 2)), ValidationError);
}

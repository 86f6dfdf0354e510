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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hetcache/errors.hpp"
#include "hetcache/experiments.hpp"

using namespace hetcache;
using doctest::Approx;

namespace {

std::string render(const std::vector<RateCurve>& curves, OutputFormat f) {
  std::ostringstream out;
  emit(curves, f, out);
  return out.str();
}

const char* kPairConfig = R"(# two users, two files
name = pair
num_files = 2
num_users = 2
rates = 1, 2
cache_model = identical
sweep = 0:0.5:3
schemes = pair-optimal, pca, oca, envelope, uncoded, cutset
block_len = 2000
)";

}  // namespace

TEST_CASE("parse a flat config") {
  const ScenarioConfig c = parse_scenario(kPairConfig);
  CHECK(c.name == "pair");
  CHECK(c.num_files == 2);
  CHECK(c.rates == std::vector<double>{1, 2});
  CHECK(c.sweep == std::vector<double>{0, 0.5, 1, 1.5, 2, 2.5, 3});
  CHECK(c.schemes.size() == 6);
  CHECK(c.block_len == 2000);
  CHECK(c.seed == 1);
}

TEST_CASE("config round trip") {
  for (ScenarioConfig c : {parse_scenario(kPairConfig), fig2_scenario(), fig3_scenario()}) {
    CHECK(parse_scenario(serialize_scenario(c)) == c);
  }
  ScenarioConfig odd = fig3_scenario();
  odd.rates.clear();
  odd.distortions = {0.7, 0.1 / 3.0, 1e-5, 1e-5, 1e-6, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
  odd.cache_model = CacheModel::Explicit;
  odd.cache_weights = {0.1, 1.0 / 7.0, 2, 2, 2, 2, 3, 3, 3, 3};
  odd.sweep = {0.1, 0.2, 1e-3};
  CHECK(parse_scenario(serialize_scenario(odd)) == odd);
}

TEST_CASE("config errors name the line") {
  auto message = [](const char* text) {
    try {
      parse_scenario(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("num_files = 2\nbogus = 1\n").find("line 2") != std::string::npos);
  CHECK(message("num_files = 2\nnum_files = 3\n").find("duplicate") != std::string::npos);
  CHECK(message("num_files = x\n").find("line 1") != std::string::npos);
  CHECK(message("just text\n").find("line 1") != std::string::npos);
  CHECK_FALSE(message("num_files = 3\nnum_users = 3\nrates = 1,2,3\nschemes = pair-optimal\n").empty());
  CHECK_FALSE(message("num_files = 1\nnum_users = 1\nrates = 1\nschemes =\n").empty());
  CHECK_FALSE(message("num_files = 1\nnum_users = 1\nrates = 1\nschemes = pca\nsweep = -1\n").empty());
  CHECK_FALSE(message("num_files = 2\nnum_users = 2\ndistortions = 0.1, 0.5\nschemes = pca\n").empty());
}

TEST_CASE("cache models") {
  ScenarioConfig c = fig3_scenario();
  const CacheProfile scaled = c.caches_at(10);
  CHECK(scaled.capacities[0] == Approx(2.0));
  CHECK(scaled.capacities[9] == Approx(20.0));
  c.cache_model = CacheModel::Identical;
  CHECK(c.caches_at(3).capacities[4] == 3.0);
  c.cache_model = CacheModel::Explicit;
  c.cache_weights.assign(10, 0.5);
  CHECK(c.caches_at(4).capacities[7] == 2.0);
}

TEST_CASE("pair scenario runs every scheme") {
  const auto curves = run_scenario(parse_scenario(kPairConfig));
  REQUIRE(curves.size() == 6);
  CHECK(curves[0].scheme == "pair-optimal");
  CHECK(curves[0].points[0].rate == Approx(3.0));
  CHECK(curves[0].points[2].rate == Approx(1.5));
  CHECK(dominance_violations(curves).empty());
  // The general schemes cannot beat the two-user optimum.
  for (std::size_t j = 0; j < curves[0].points.size(); ++j) {
    CHECK(curves[3].points[j].rate >= curves[0].points[j].rate - 1e-9);
  }
}

TEST_CASE("pair-optimal needs two users and two files") {
  ScenarioConfig c = fig2_scenario();
  c.schemes = {Scheme::PairOptimal};
  CHECK_THROWS_AS(run_scenario(c), ValidationError);
}

TEST_CASE("empty sweep yields empty curves") {
  ScenarioConfig c = fig2_scenario();
  c.sweep.clear();
  const auto curves = run_scenario(c);
  CHECK(curves.size() == 5);
  for (const auto& curve : curves) CHECK(curve.points.empty());
  CHECK(render(curves, OutputFormat::Csv) == "scheme,M,rate\n");
}

TEST_CASE("envelope is available without its inputs") {
  ScenarioConfig c = fig2_scenario();
  c.sweep = {0, 10, 20};
  c.schemes = {Scheme::Envelope};
  const auto curves = run_scenario(c);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].scheme == "envelope");
  CHECK(curves[0].points.size() == 3);
}

TEST_CASE("csv layout") {
  const std::vector<RateCurve> one{{"pca", {{0, 55}, {1, 49.123456789123}}}};
  CHECK(render(one, OutputFormat::Csv) == "scheme,M,rate\npca,0,55\npca,1,49.1234568\n");

  const std::vector<RateCurve> two{{"oca", {{2, 1}, {1, 2}}}, {"pca", {{1, 3}, {2, 0}}}};
  CHECK(render(two, OutputFormat::Csv) == "scheme,M,rate\noca,1,2\noca,2,1\npca,1,3\npca,2,0\n");
}

TEST_CASE("json round trip") {
  const std::vector<RateCurve> curves{{"pca", {{0, 55}, {0.5, 1.0 / 3.0}}}, {"cutset", {{0, 55}, {0.5, 0}}}};
  const std::string text = render(curves, OutputFormat::Json);
  const auto back = parse_curves_json(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].scheme == "pca");
  CHECK(back[0].points[1].rate == Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(render(back, OutputFormat::Json) == text);
  CHECK_THROWS_AS(parse_curves_json("{not json"), ValidationError);
}

TEST_CASE("outputs are byte stable") {
  ScenarioConfig c = fig3_scenario();
  c.sweep = {0, 7, 33, 100};
  const auto a = run_scenario(c);
  const auto b = run_scenario(c);
  CHECK(render(a, OutputFormat::Csv) == render(b, OutputFormat::Csv));
  CHECK(render(a, OutputFormat::Json) == render(b, OutputFormat::Json));
}

TEST_CASE("emit_to_file reports the path") {
  const std::vector<RateCurve> curves{{"pca", {{0, 1}}}};
  const auto dir = std::filesystem::temp_directory_path() / "hetcache-test-out";
  std::filesystem::create_directories(dir);
  const auto path = dir / "curves.csv";
  emit_to_file(curves, OutputFormat::Csv, path);
  CHECK(std::filesystem::file_size(path) == std::string("scheme,M,rate\npca,0,1\n").size());
  try {
    emit_to_file(curves, OutputFormat::Csv, dir / "missing" / "x.csv");
    FAIL("expected an I/O error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("x.csv") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("labels and formats") {
  for (Scheme s : {Scheme::PairOptimal, Scheme::Pca, Scheme::Oca, Scheme::Envelope, Scheme::Uncoded, Scheme::Cutset}) {
    CHECK(parse_scheme(scheme_label(s)) == s);
  }
  CHECK_THROWS_AS(parse_scheme("magic"), ValidationError);
  CHECK(parse_output_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_output_format("xml"), ValidationError);
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
}

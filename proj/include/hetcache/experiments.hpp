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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hetcache/rate_curve.hpp"
#include "hetcache/rate_model.hpp"

namespace hetcache {

enum class Scheme { PairOptimal, Pca, Oca, Envelope, Uncoded, Cutset };

std::string scheme_label(Scheme s);
Scheme parse_scheme(std::string_view label);

/// How per-user caches follow the swept parameter M:
///   identical  M_k = M
///   scaled     M_k = cache_scale * k * M
///   explicit   M_k = cache_weights[k-1] * M
enum class CacheModel { Identical, Scaled, Explicit };

std::string cache_model_label(CacheModel m);

struct ScenarioConfig {
  std::string name = "scenario";
  int num_files = 1;
  int num_users = 1;
  std::vector<double> rates;        // used when distortions is empty
  std::vector<double> distortions;  // non-increasing, with `variance`
  double variance = 1.0;
  CacheModel cache_model = CacheModel::Identical;
  double cache_scale = 0.2;
  std::vector<double> cache_weights;
  std::vector<double> sweep;
  std::vector<Scheme> schemes;
  std::int64_t block_len = 10000;   // bit-level checks of the pair scheme
  std::uint64_t seed = 1;

  void validate() const;
  RateProfile rate_profile() const;
  CacheProfile caches_at(double m) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses the flat `key = value` format (see docs/config_format.md).
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioConfig& config);

/// The two reference scenarios: ten users and files, rates 1..10, caches
/// identical (fig2) or M_k = 0.2 k M (fig3), M swept over 0..100.
ScenarioConfig fig2_scenario();
ScenarioConfig fig3_scenario();

/// One curve per requested scheme, in request order, sampled at the sorted
/// sweep values.
std::vector<RateCurve> run_scenario(const ScenarioConfig& config);

/// Checks cutset <= envelope <= min(pca, oca) <= uncoded and cutset <= every
/// achievable scheme at each sweep point, for whichever schemes are present.
/// Returns one message per violation.
std::vector<std::string> dominance_violations(const std::vector<RateCurve>& curves, double tol = 1e-9);

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(std::string_view s);

/// Numbers are printed with 9 significant digits.
std::string format_number(double v);

void emit(const std::vector<RateCurve>& curves, OutputFormat format, std::ostream& out);
void emit_to_file(const std::vector<RateCurve>& curves, OutputFormat format,
                  const std::filesystem::path& path);
std::vector<RateCurve> parse_curves_json(std::string_view text);

}  // namespace hetcache

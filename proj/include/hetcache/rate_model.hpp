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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hetcache {

/// Server/user population and source parameters.
struct SystemConfig {
  int num_files = 1;
  int num_users = 1;
  double variance = 1.0;        // source power
  std::int64_t block_len = 1;   // samples per file, used by the bit-level simulators

  void validate() const;
};

/// Gaussian rate-distortion function in bits per source sample,
/// clamped at zero for distortion >= variance.
double rate_of_distortion(double variance, double distortion);

/// Inverse of rate_of_distortion on rate >= 0.
double distortion_of_rate(double variance, double rate);

/// Distortion targets of the K users (non-increasing) and the derived
/// successive-refinement layer structure. Layer k has size increments[k].
struct RateProfile {
  std::vector<double> distortions;
  std::vector<double> rates;
  std::vector<double> increments;

  std::size_t num_users() const { return rates.size(); }
  // Rate of the user below k, i.e. r_{k-1} with r_0 = 0.
  double previous_rate(std::size_t k) const { return k == 0 ? 0.0 : rates[k - 1]; }
};

/// Builds the profile from distortions D_1 >= ... >= D_K. Unsorted input is
/// rejected, not reordered, since the order fixes user identity.
RateProfile build_rate_profile(const SystemConfig& config,
                               std::span<const double> distortions);

/// Builds the profile directly from non-decreasing rates; distortions are
/// derived so that rates are stored exactly as given.
RateProfile rate_profile_from_rates(std::span<const double> rates, double variance = 1.0);

struct CacheProfile {
  std::vector<double> capacities;   // M_k, normalized by block length

  void validate(std::size_t num_users) const;
};

/// Requested file per user, 1-based file indices.
struct DemandVector {
  std::vector<int> files;

  void validate(int num_files, std::size_t num_users) const;
};

}  // namespace hetcache

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

#include "hetcache/rate_model.hpp"

#include <cmath>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

void SystemConfig::validate() const {
  if (num_files < 1) throw ValidationError(fmt::format("num_files must be >= 1, got {}", num_files));
  if (num_users < 1) throw ValidationError(fmt::format("num_users must be >= 1, got {}", num_users));
  if (!(variance > 0.0)) throw ValidationError(fmt::format("variance must be > 0, got {}", variance));
  if (block_len < 1) throw ValidationError(fmt::format("block_len must be >= 1, got {}", block_len));
}

double rate_of_distortion(double variance, double distortion) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw DomainError(fmt::format("variance must be positive and finite, got {}", variance));
  }
  if (!(distortion > 0.0) || !std::isfinite(distortion)) {
    throw DomainError(fmt::format("distortion must be positive and finite, got {}", distortion));
  }
  if (distortion >= variance) return 0.0;
  return 0.5 * std::log2(variance / distortion);
}

double distortion_of_rate(double variance, double rate) {
  if (!(variance > 0.0)) throw DomainError(fmt::format("variance must be positive, got {}", variance));
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw DomainError(fmt::format("rate must be finite and >= 0, got {}", rate));
  }
  return variance * std::exp2(-2.0 * rate);
}

namespace {

std::vector<double> increments_of(const std::vector<double>& rates) {
  std::vector<double> inc(rates.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    inc[k] = rates[k] - prev;
    prev = rates[k];
  }
  return inc;
}

}  // namespace

RateProfile build_rate_profile(const SystemConfig& config, std::span<const double> distortions) {
  config.validate();
  if (distortions.size() != static_cast<std::size_t>(config.num_users)) {
    throw ValidationError(fmt::format("expected {} distortions (one per user), got {}",
                                      config.num_users, distortions.size()));
  }
  for (std::size_t k = 1; k < distortions.size(); ++k) {
    if (distortions[k] > distortions[k - 1]) {
      throw ValidationError(fmt::format(
          "distortions must be non-increasing: D[{}]={} exceeds D[{}]={}", k + 1,
          distortions[k], k, distortions[k - 1]));
    }
  }
  RateProfile p;
  p.distortions.assign(distortions.begin(), distortions.end());
  p.rates.reserve(distortions.size());
  for (double d : distortions) {
    try {
      p.rates.push_back(rate_of_distortion(config.variance, d));
    } catch (const DomainError& e) {
      throw ValidationError(e.what());
    }
  }
  p.increments = increments_of(p.rates);
  return p;
}

RateProfile rate_profile_from_rates(std::span<const double> rates, double variance) {
  if (rates.empty()) throw ValidationError("rate profile needs at least one user");
  RateProfile p;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(rates[k] >= 0.0) || !std::isfinite(rates[k])) {
      throw ValidationError(fmt::format("rate r[{}]={} must be finite and >= 0", k + 1, rates[k]));
    }
    if (k > 0 && rates[k] < rates[k - 1]) {
      throw ValidationError(fmt::format("rates must be non-decreasing: r[{}]={} is below r[{}]={}",
                                        k + 1, rates[k], k, rates[k - 1]));
    }
  }
  p.rates.assign(rates.begin(), rates.end());
  for (double r : p.rates) p.distortions.push_back(distortion_of_rate(variance, r));
  p.increments = increments_of(p.rates);
  return p;
}

void CacheProfile::validate(std::size_t num_users) const {
  if (capacities.size() != num_users) {
    throw ValidationError(fmt::format("expected {} cache capacities, got {}", num_users,
                                      capacities.size()));
  }
  for (std::size_t k = 0; k < capacities.size(); ++k) {
    if (!(capacities[k] >= 0.0) || !std::isfinite(capacities[k])) {
      throw ValidationError(fmt::format("cache M[{}]={} must be finite and >= 0", k + 1, capacities[k]));
    }
  }
}

void DemandVector::validate(int num_files, std::size_t num_users) const {
  if (files.size() != num_users) {
    throw ValidationError(fmt::format("expected {} demands, got {}", num_users, files.size()));
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (files[k] < 1 || files[k] > num_files) {
      throw ValidationError(fmt::format("demand d[{}]={} outside 1..{}", k + 1, files[k], num_files));
    }
  }
}

}  // namespace hetcache

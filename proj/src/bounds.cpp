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

#include "hetcache/bounds.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

BoundReport cutset_bound(const CacheProfile& cache, const RateProfile& rates, int num_files) {
  const std::size_t K = rates.num_users();
  cache.validate(K);
  if (num_files < 1) throw ValidationError("num_files must be >= 1");

  BoundReport best;
  bool have = false;
  std::vector<std::size_t> order(K);
  std::vector<double> score(K);
  const int s_max = std::min(static_cast<int>(K), num_files);
  for (int s = 1; s <= s_max; ++s) {
    const double rounds = num_files / s;  // integer division: floor(N / s) >= 1
    for (std::size_t k = 0; k < K; ++k) score[k] = rates.rates[k] - cache.capacities[k] / rounds;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    double value = 0.0;
    for (int j = 0; j < s; ++j) value += score[order[static_cast<std::size_t>(j)]];
    if (!have || value > best.value) {
      have = true;
      best.value = value;
      best.argmax_s = s;
      best.argmax_users.clear();
      for (int j = 0; j < s; ++j) best.argmax_users.push_back(static_cast<int>(order[static_cast<std::size_t>(j)]) + 1);
      std::sort(best.argmax_users.begin(), best.argmax_users.end());
    }
  }
  best.value = std::max(0.0, best.value);
  return best;
}

double uncoded_rate(const CacheProfile& cache, const RateProfile& rates, int num_files) {
  const std::size_t K = rates.num_users();
  cache.validate(K);
  if (num_files < 1) throw ValidationError("num_files must be >= 1");
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double cached = std::min(cache.capacities[k] / num_files, rates.rates[k]);
    total += std::max(0.0, rates.rates[k] - cached);
  }
  return total;
}

}  // namespace hetcache

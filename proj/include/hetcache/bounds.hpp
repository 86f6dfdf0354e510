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

#include <vector>

#include "hetcache/rate_model.hpp"

namespace hetcache {

struct BoundReport {
  double value = 0.0;
  int argmax_s = 0;              // size of the maximizing user set
  std::vector<int> argmax_users; // 1-based, ascending
};

/// Cut-set lower bound: max over s in 1..min(K, N) and |U| = s of
/// sum_{k in U} r_k - sum_{k in U} M_k / floor(N / s), clamped at 0.
/// For each s the best U is the top s of r_k - M_k / floor(N / s).
BoundReport cutset_bound(const CacheProfile& cache, const RateProfile& rates, int num_files);

/// Uncoded prefix caching: user k stores the first min(M_k / N, r_k) bpss of
/// every file, and the rest of its description is unicast.
double uncoded_rate(const CacheProfile& cache, const RateProfile& rates, int num_files);

}  // namespace hetcache

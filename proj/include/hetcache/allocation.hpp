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
#include <span>
#include <vector>

#include "hetcache/rate_curve.hpp"
#include "hetcache/rate_model.hpp"

namespace hetcache {

/// Cache each user gives to each layer. Lower triangular: user k (0-based)
/// only caches layers 0..k, the layers it decodes.
class AllocationMatrix {
 public:
  explicit AllocationMatrix(std::size_t num_users)
      : users_(num_users), entries_(num_users * num_users, 0.0) {}

  std::size_t num_users() const { return users_; }
  double operator()(std::size_t user, std::size_t layer) const { return entries_[user * users_ + layer]; }
  double& at(std::size_t user, std::size_t layer) { return entries_[user * users_ + layer]; }

  double row_sum(std::size_t user) const;
  /// Cache of users layer..K-1 for `layer`, in user order.
  std::vector<double> column(std::size_t layer) const;

 private:
  std::size_t users_;
  std::vector<double> entries_;
};

/// Proportional allocation: user k gives layer i the share
/// (r_i - r_{i-1}) / r_k of its cache.
AllocationMatrix pca(const CacheProfile& cache, const RateProfile& rates);

/// Ordered allocation: user k fills layers from the bottom, N (r_i - r_{i-1})
/// per layer, until its cache runs out. Cache beyond N r_k stays idle.
AllocationMatrix oca(const CacheProfile& cache, const RateProfile& rates, int num_files);

/// Sum over layers of the optimal sub-layer split of each layer.
double total_delivery_rate(const AllocationMatrix& alloc, const RateProfile& rates, int num_files);

/// Pointwise minimum of the curves followed by the lower convex envelope in
/// the cache parameter. All curves must share the same cache axis.
RateCurve memory_sharing_envelope(std::span<const RateCurve> curves);

}  // namespace hetcache

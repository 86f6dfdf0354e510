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

#include "hetcache/piecewise_linear.hpp"

namespace hetcache {

/// One sub-layer of a refinement layer. The layer is wanted by layer_users
/// users; cached_users of them hold `cache` bpss each for this sub-layer and
/// the remaining sublayer - 1 users hold nothing.
struct SubLayerSpec {
  int layer = 1;          // k, 1-based
  int sublayer = 1;       // i, 1-based
  int layer_users = 1;    // L_k = K - k + 1
  int cached_users = 1;   // L_k^i = L_k - i + 1
  double cache = 0.0;     // per cached user
  int num_files = 1;

  int uncached_users() const { return sublayer - 1; }
  void validate() const;
};

/// Cache that users k..K give to layer k, in user order (unsorted).
struct LayerAllocation {
  int layer = 1;
  std::vector<double> per_user_cache;
};

/// Sorts the allocations ascending and splits them into successive
/// differences, one sub-layer per distinct cache level (zero-sized levels
/// included).
std::vector<SubLayerSpec> sublayers_from_allocation(const LayerAllocation& alloc, int num_files);

/// Sub-layer size at the coded-delivery corner with t-subset placement,
/// t = 1..cached_users.
double corner_rate(const SubLayerSpec& spec, int t);
/// Delivery rate at that corner: unicast to the uncached users plus the
/// multicast rate r (L - t) / (t + 1) to the cached users.
double corner_delivery_rate(const SubLayerSpec& spec, int t);

/// Rate curves in the sub-layer size r. All start at (0, 0) and are convex.
PiecewiseLinear coded_delivery_curve(const SubLayerSpec& spec);
PiecewiseLinear coded_placement_curve(const SubLayerSpec& spec);
PiecewiseLinear sublayer_curve(const SubLayerSpec& spec);

double coded_delivery_rate(const SubLayerSpec& spec, double r);
double coded_placement_rate(const SubLayerSpec& spec, double r);
double sublayer_rate(const SubLayerSpec& spec, double r);

/// True when the layer has at least as many users as there are files, the
/// regime where coded placement is considered.
inline bool placement_regime(const SubLayerSpec& spec) {
  return spec.layer_users >= spec.num_files;
}

}  // namespace hetcache

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

#include <span>
#include <vector>

#include "hetcache/layer_rate.hpp"
#include "hetcache/piecewise_linear.hpp"

namespace hetcache {

struct LayerRateSolution {
  std::vector<double> rates;  // size given to each sub-layer
  double total_rate = 0.0;    // summed delivery rate
};

/// Minimizes sum_i f_i(x_i) subject to sum_i x_i = budget, x_i >= 0, for
/// convex piecewise-linear f_i with f_i(0) = 0. Exact greedy water-filling
/// over the pieces sorted by slope; equal slopes go to the lowest index.
/// Non-convex input falls back to a refined grid search.
LayerRateSolution minimize_separable(std::span<const PiecewiseLinear> curves, double budget);

/// Splits a layer of size `layer_budget` across its sub-layers.
LayerRateSolution optimize_layer(std::span<const SubLayerSpec> specs, double layer_budget);

}  // namespace hetcache

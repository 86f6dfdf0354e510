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

#include "hetcache/layer_rate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

void SubLayerSpec::validate() const {
  if (layer < 1 || sublayer < 1 || layer_users < 1 || num_files < 1) {
    throw ValidationError(fmt::format("bad sub-layer spec (k={}, i={}, L={}, N={})", layer,
                                      sublayer, layer_users, num_files));
  }
  if (sublayer > layer_users || cached_users != layer_users - sublayer + 1) {
    throw ValidationError(fmt::format("sub-layer {} of a {}-user layer must have {} cached users, got {}",
                                      sublayer, layer_users, layer_users - sublayer + 1, cached_users));
  }
  if (!(cache >= 0.0) || !std::isfinite(cache)) {
    throw ValidationError(fmt::format("sub-layer cache {} must be finite and >= 0", cache));
  }
}

std::vector<SubLayerSpec> sublayers_from_allocation(const LayerAllocation& alloc, int num_files) {
  if (alloc.per_user_cache.empty()) throw ValidationError("layer allocation has no users");
  if (num_files < 1) throw ValidationError("num_files must be >= 1");
  std::vector<double> sorted = alloc.per_user_cache;
  for (double m : sorted) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError(fmt::format("layer {} allocation {} must be finite and >= 0", alloc.layer, m));
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const int users = static_cast<int>(sorted.size());
  std::vector<SubLayerSpec> specs;
  specs.reserve(sorted.size());
  for (int i = 1; i <= users; ++i) {
    SubLayerSpec s;
    s.layer = alloc.layer;
    s.sublayer = i;
    s.layer_users = users;
    s.cached_users = users - i + 1;
    s.cache = i == 1 ? sorted[0] : sorted[i - 1] - sorted[i - 2];
    s.num_files = num_files;
    specs.push_back(s);
  }
  return specs;
}

// Corners are parameterized by t so that no ratio M / (r N) is ever formed;
// zero cache collapses every corner onto the origin.
double corner_rate(const SubLayerSpec& spec, int t) {
  if (t < 1 || t > spec.cached_users) {
    throw DomainError(fmt::format("corner t={} outside 1..{}", t, spec.cached_users));
  }
  return spec.cache * spec.cached_users / (static_cast<double>(t) * spec.num_files);
}

double corner_delivery_rate(const SubLayerSpec& spec, int t) {
  const double r = corner_rate(spec, t);
  const double cached = spec.cached_users;
  return spec.uncached_users() * r + r * (cached - t) / (1.0 + t);
}

PiecewiseLinear coded_delivery_curve(const SubLayerSpec& spec) {
  spec.validate();
  std::vector<PiecewiseLinear::Knot> pts{{0.0, 0.0}};
  if (spec.cache > 0.0) {
    for (int t = spec.cached_users; t >= 1; --t) {
      pts.push_back({corner_rate(spec, t), corner_delivery_rate(spec, t)});
    }
  }
  // Bits beyond the t = 1 corner are not covered by any cache: unicast to all.
  const double tail = spec.uncached_users() + spec.cached_users;
  return PiecewiseLinear::lower_convex_envelope(std::move(pts), tail);
}

PiecewiseLinear coded_placement_curve(const SubLayerSpec& spec) {
  spec.validate();
  const double n_files = spec.num_files;
  if (spec.uncached_users() >= spec.num_files || spec.cache == 0.0) {
    return PiecewiseLinear({{0.0, 0.0}}, n_files);
  }
  std::vector<PiecewiseLinear::Knot> pts{{0.0, 0.0}};
  for (int t = spec.cached_users; t >= 1; --t) {
    pts.push_back({corner_rate(spec, t), corner_delivery_rate(spec, t)});
  }
  // Coded-placement point where the cache exactly covers one coded piece per
  // user; past it every extra bit of the N files is broadcast.
  const double x = spec.cache * spec.cached_users;
  const double gain = spec.cache * (spec.num_files - spec.uncached_users());
  pts.push_back({x, n_files * x - gain});
  return PiecewiseLinear::lower_convex_envelope(std::move(pts), n_files);
}

PiecewiseLinear sublayer_curve(const SubLayerSpec& spec) {
  PiecewiseLinear delivery = coded_delivery_curve(spec);
  if (!placement_regime(spec)) return delivery;
  return PiecewiseLinear::convex_envelope_of_min(delivery, coded_placement_curve(spec));
}

namespace {
void check_rate(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError(fmt::format("sub-layer size {} must be finite and >= 0", r));
  }
}
}  // namespace

double coded_delivery_rate(const SubLayerSpec& spec, double r) {
  check_rate(r);
  return coded_delivery_curve(spec)(r);
}

double coded_placement_rate(const SubLayerSpec& spec, double r) {
  check_rate(r);
  return coded_placement_curve(spec)(r);
}

double sublayer_rate(const SubLayerSpec& spec, double r) {
  check_rate(r);
  return sublayer_curve(spec)(r);
}

}  // namespace hetcache

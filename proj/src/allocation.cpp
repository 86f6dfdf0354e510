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

#include "hetcache/allocation.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>

#include "hetcache/errors.hpp"
#include "hetcache/layer_rate.hpp"
#include "hetcache/sublayer_opt.hpp"

namespace hetcache {

double AllocationMatrix::row_sum(std::size_t user) const {
  double s = 0.0;
  for (std::size_t i = 0; i < users_; ++i) s += (*this)(user, i);
  return s;
}

std::vector<double> AllocationMatrix::column(std::size_t layer) const {
  std::vector<double> col;
  for (std::size_t k = layer; k < users_; ++k) col.push_back((*this)(k, layer));
  return col;
}

AllocationMatrix pca(const CacheProfile& cache, const RateProfile& rates) {
  const std::size_t K = rates.num_users();
  cache.validate(K);
  AllocationMatrix alloc(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double m = cache.capacities[k];
    if (rates.rates[k] <= 0.0) {
      // Every layer this user decodes is empty; park the cache on layer 1.
      alloc.at(k, 0) = m;
      continue;
    }
    for (std::size_t i = 0; i <= k; ++i) alloc.at(k, i) = m * rates.increments[i] / rates.rates[k];
  }
  return alloc;
}

AllocationMatrix oca(const CacheProfile& cache, const RateProfile& rates, int num_files) {
  const std::size_t K = rates.num_users();
  cache.validate(K);
  if (num_files < 1) throw ValidationError("num_files must be >= 1");
  AllocationMatrix alloc(K);
  for (std::size_t k = 0; k < K; ++k) {
    double left = cache.capacities[k];
    for (std::size_t i = 0; i <= k && left > 0.0; ++i) {
      const double take = std::min(left, num_files * rates.increments[i]);
      alloc.at(k, i) = take;
      left -= take;
    }
  }
  return alloc;
}

double total_delivery_rate(const AllocationMatrix& alloc, const RateProfile& rates, int num_files) {
  const std::size_t K = rates.num_users();
  if (alloc.num_users() != K) {
    throw ValidationError(fmt::format("allocation has {} users, rate profile {}", alloc.num_users(), K));
  }
  double total = 0.0;
  for (std::size_t layer = 0; layer < K; ++layer) {
    const double budget = rates.increments[layer];
    if (budget <= 0.0) continue;
    const LayerAllocation la{static_cast<int>(layer + 1), alloc.column(layer)};
    const auto specs = sublayers_from_allocation(la, num_files);
    total += optimize_layer(specs, budget).total_rate;
  }
  return total;
}

RateCurve memory_sharing_envelope(std::span<const RateCurve> curves) {
  RateCurve env{"envelope", {}};
  if (curves.empty()) return env;
  const auto& axis = curves.front().points;
  for (const RateCurve& c : curves) {
    if (c.points.size() != axis.size()) {
      throw ValidationError(fmt::format("curve '{}' has {} points, expected {}", c.scheme,
                                        c.points.size(), axis.size()));
    }
    for (std::size_t j = 0; j < axis.size(); ++j) {
      if (c.points[j].cache != axis[j].cache) {
        throw ValidationError(fmt::format("curve '{}' is sampled at M={} where '{}' has M={}",
                                          c.scheme, c.points[j].cache, curves.front().scheme,
                                          axis[j].cache));
      }
    }
  }
  for (std::size_t j = 1; j < axis.size(); ++j) {
    if (axis[j].cache < axis[j - 1].cache) throw ValidationError("curve cache axis must be sorted");
  }
  std::vector<CurvePoint> lower;
  for (std::size_t j = 0; j < axis.size(); ++j) {
    double best = curves.front().points[j].rate;
    for (const RateCurve& c : curves) best = std::min(best, c.points[j].rate);
    lower.push_back({axis[j].cache, best});
  }
  // Lower hull over distinct cache values (monotone chain).
  std::vector<CurvePoint> hull;
  for (const CurvePoint& p : lower) {
    if (!hull.empty() && hull.back().cache == p.cache) {
      hull.back().rate = std::min(hull.back().rate, p.rate);
      continue;
    }
    while (hull.size() >= 2) {
      const CurvePoint& a = hull[hull.size() - 2];
      const CurvePoint& b = hull.back();
      if ((b.rate - a.rate) * (p.cache - a.cache) >= (p.rate - a.rate) * (b.cache - a.cache)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::size_t h = 0;
  for (const CurvePoint& p : lower) {
    while (h + 1 < hull.size() && hull[h + 1].cache <= p.cache) ++h;
    double rate = hull[h].rate;
    if (h + 1 < hull.size() && p.cache > hull[h].cache) {
      const double w = (p.cache - hull[h].cache) / (hull[h + 1].cache - hull[h].cache);
      rate = hull[h].rate + w * (hull[h + 1].rate - hull[h].rate);
    }
    env.points.push_back({p.cache, std::min(rate, p.rate)});
  }
  return env;
}

}  // namespace hetcache

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

#include "hetcache/sublayer_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {

LayerRateSolution evaluate(std::span<const PiecewiseLinear> curves, std::vector<double> rates) {
  LayerRateSolution sol;
  for (std::size_t i = 0; i < curves.size(); ++i) sol.total_rate += curves[i](rates[i]);
  sol.rates = std::move(rates);
  return sol;
}

LayerRateSolution water_fill(std::span<const PiecewiseLinear> curves, double budget) {
  struct Piece {
    double slope;
    std::size_t curve;
    std::size_t order;
    double length;
  };
  std::vector<Piece> pieces;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto segs = curves[c].segments();
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (segs[s].length > 0.0) pieces.push_back({segs[s].slope, c, s, segs[s].length});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.curve != b.curve) return a.curve < b.curve;
    return a.order < b.order;
  });
  std::vector<double> rates(curves.size(), 0.0);
  double left = budget;
  for (const Piece& p : pieces) {
    if (left <= 0.0) break;
    const double take = std::min(p.length, left);
    rates[p.curve] += take;
    left -= take;
  }
  return evaluate(curves, std::move(rates));
}

// Coordinate-free search over the simplex: a uniform grid, then repeated
// local grids around the incumbent at shrinking step.
LayerRateSolution refined_grid(std::span<const PiecewiseLinear> curves, double budget) {
  const std::size_t m = curves.size();
  std::vector<double> best(m, 0.0);
  best[0] = budget;
  double best_value = evaluate(curves, best).total_rate;
  std::vector<double> center = best;
  double radius = budget;
  const int steps = m <= 3 ? 40 : 8;
  for (int round = 0; round < 30 && radius > 1e-12 * std::max(1.0, budget); ++round) {
    const double h = 2 * radius / steps;
    std::vector<double> x(m, 0.0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double left) {
      if (i + 1 == m) {
        x[i] = left;
        const double v = evaluate(curves, x).total_rate;
        if (v < best_value) {
          best_value = v;
          best = x;
        }
        return;
      }
      const double lo = std::max(0.0, center[i] - radius);
      const double hi = std::min(left, center[i] + radius);
      for (double v = lo; v <= hi + 1e-15; v += h) {
        x[i] = std::min(v, left);
        walk(i + 1, left - x[i]);
      }
    };
    walk(0, budget);
    center = best;
    radius /= 4;
  }
  return evaluate(curves, best);
}

}  // namespace

LayerRateSolution minimize_separable(std::span<const PiecewiseLinear> curves, double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw DomainError(fmt::format("layer budget {} must be finite and >= 0", budget));
  }
  if (curves.empty()) throw ValidationError("nothing to optimize: no sub-layers");
  if (budget == 0.0) return evaluate(curves, std::vector<double>(curves.size(), 0.0));
  const bool convex = std::all_of(curves.begin(), curves.end(),
                                  [](const PiecewiseLinear& f) { return f.is_convex(1e-9); });
  return convex ? water_fill(curves, budget) : refined_grid(curves, budget);
}

LayerRateSolution optimize_layer(std::span<const SubLayerSpec> specs, double layer_budget) {
  std::vector<PiecewiseLinear> curves;
  curves.reserve(specs.size());
  for (const SubLayerSpec& s : specs) curves.push_back(sublayer_curve(s));
  return minimize_separable(curves, layer_budget);
}

}  // namespace hetcache

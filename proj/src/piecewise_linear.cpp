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

#include "hetcache/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots, double tail_slope)
    : knots_(std::move(knots)), tail_slope_(tail_slope) {
  if (knots_.empty() || knots_.front().x != 0.0) {
    throw InvariantError("piecewise-linear function must start with a knot at x = 0");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x)) {
      throw InvariantError("piecewise-linear knots must be strictly increasing in x");
    }
  }
}

namespace {

// True when b lies on or above the chord from a to c.
bool not_below_chord(const PiecewiseLinear::Knot& a, const PiecewiseLinear::Knot& b,
                     const PiecewiseLinear::Knot& c) {
  return (b.y - a.y) * (c.x - a.x) >= (c.y - a.y) * (b.x - a.x);
}

double slope_between(const PiecewiseLinear::Knot& a, const PiecewiseLinear::Knot& b) {
  return (b.y - a.y) / (b.x - a.x);
}

}  // namespace

PiecewiseLinear PiecewiseLinear::lower_convex_envelope(std::vector<Knot> points, double tail_slope) {
  std::sort(points.begin(), points.end(), [](const Knot& a, const Knot& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (points.empty() || points.front().x != 0.0) {
    throw InvariantError("lower_convex_envelope needs a point at x = 0");
  }
  std::vector<Knot> hull;
  hull.reserve(points.size());
  for (const Knot& p : points) {
    if (!hull.empty() && p.x == hull.back().x) continue;  // sorted: first y is the smallest
    while (hull.size() >= 2 && not_below_chord(hull[hull.size() - 2], hull.back(), p)) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  // The tail ray must not be shallower than the last hull piece.
  const double tol = 1e-12 * std::max(1.0, std::abs(tail_slope));
  while (hull.size() >= 2 && slope_between(hull[hull.size() - 2], hull.back()) > tail_slope + tol) {
    hull.pop_back();
  }
  return PiecewiseLinear(std::move(hull), tail_slope);
}

PiecewiseLinear PiecewiseLinear::convex_envelope_of_min(const PiecewiseLinear& a,
                                                        const PiecewiseLinear& b) {
  std::vector<double> xs;
  for (const Knot& k : a.knots_) xs.push_back(k.x);
  for (const Knot& k : b.knots_) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // Past the last knot both are lines; add their crossing if it lies ahead.
  const double x_last = xs.back();
  const double gap = a(x_last) - b(x_last);
  const double slope_gap = a.tail_slope_ - b.tail_slope_;
  if (slope_gap != 0.0) {
    const double cross = x_last - gap / slope_gap;
    if (cross > x_last) xs.push_back(cross);
  }

  std::vector<Knot> pts;
  pts.reserve(2 * xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double da = a(x);
    const double db = b(x);
    pts.push_back({x, std::min(da, db)});
    if (i + 1 < xs.size()) {
      // Both functions are linear on [x, next]; a sign change of a - b is a crossing.
      const double next = xs[i + 1];
      const double d0 = da - db;
      const double d1 = a(next) - b(next);
      if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
        const double xc = x + (next - x) * d0 / (d0 - d1);
        pts.push_back({xc, a(xc)});
      }
    }
  }
  return lower_convex_envelope(std::move(pts), std::min(a.tail_slope_, b.tail_slope_));
}

double PiecewiseLinear::operator()(double x) const {
  if (!(x >= 0.0)) throw DomainError(fmt::format("piecewise-linear argument {} is negative", x));
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  if (it == knots_.end()) {
    const Knot& last = knots_.back();
    return last.y + tail_slope_ * (x - last.x);
  }
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double w = (x - lo.x) / (hi.x - lo.x);
  return lo.y + w * (hi.y - lo.y);
}

std::vector<PiecewiseLinear::Segment> PiecewiseLinear::segments() const {
  std::vector<Segment> out;
  out.reserve(knots_.size());
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    out.push_back({knots_[i].x - knots_[i - 1].x, slope_between(knots_[i - 1], knots_[i])});
  }
  out.push_back({std::numeric_limits<double>::infinity(), tail_slope_});
  return out;
}

bool PiecewiseLinear::is_convex(double tol) const {
  const auto segs = segments();
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const double scale = std::max({1.0, std::abs(segs[i].slope), std::abs(segs[i - 1].slope)});
    if (segs[i].slope < segs[i - 1].slope - tol * scale) return false;
  }
  return true;
}

double PiecewiseLinear::max_slope() const {
  double s = tail_slope_;
  for (const Segment& seg : segments()) s = std::max(s, seg.slope);
  return s;
}

}  // namespace hetcache

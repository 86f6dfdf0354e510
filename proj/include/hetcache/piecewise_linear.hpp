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

namespace hetcache {

/// Piecewise-linear function on [0, +inf): linear interpolation between knots
/// and a linear tail past the last knot. The first knot sits at x = 0.
///
/// Rate curves in this library are always built through
/// lower_convex_envelope(), so in practice every instance is convex and
/// nondecreasing; is_convex() lets callers check instead of assume.
class PiecewiseLinear {
 public:
  struct Knot {
    double x;
    double y;
  };
  /// One linear piece; the tail has infinite length.
  struct Segment {
    double length;
    double slope;
  };

  PiecewiseLinear() : knots_{{0.0, 0.0}}, tail_slope_(0.0) {}
  PiecewiseLinear(std::vector<Knot> knots, double tail_slope);

  /// Lower convex envelope of the points together with a ray of slope
  /// tail_slope leaving the last hull point. Points need not be sorted;
  /// duplicates in x keep the smaller y. One point must have x = 0.
  static PiecewiseLinear lower_convex_envelope(std::vector<Knot> points, double tail_slope);

  /// Lower convex envelope of min(a, b). Achievable by memory sharing
  /// whenever a and b are.
  static PiecewiseLinear convex_envelope_of_min(const PiecewiseLinear& a,
                                                const PiecewiseLinear& b);

  double operator()(double x) const;

  std::vector<Segment> segments() const;
  bool is_convex(double tol = 1e-12) const;

  const std::vector<Knot>& knots() const { return knots_; }
  double tail_slope() const { return tail_slope_; }
  double last_knot_x() const { return knots_.back().x; }
  /// Largest slope over all pieces, tail included.
  double max_slope() const;

 private:
  std::vector<Knot> knots_;
  double tail_slope_;
};

}  // namespace hetcache

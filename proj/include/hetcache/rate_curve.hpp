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

#include <string>
#include <vector>

namespace hetcache {

struct CurvePoint {
  double cache = 0.0;  // swept cache parameter M
  double rate = 0.0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Delivery rate against the swept cache parameter for one scheme.
struct RateCurve {
  std::string scheme;
  std::vector<CurvePoint> points;  // sorted by cache
  friend bool operator==(const RateCurve&, const RateCurve&) = default;
};

}  // namespace hetcache

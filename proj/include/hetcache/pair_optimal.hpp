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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hetcache/rate_model.hpp"
#include "hetcache/simkit.hpp"

namespace hetcache {

/// Cache capacities and layer rates of the two-user, two-file system.
/// User 1 has the looser distortion target, so r1 <= r2.
struct PairParams {
  double m1 = 0.0;
  double m2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  void validate() const;
};

/// The five regions of the (M1, M2) plane. Boundary points belong to the
/// lower-numbered case.
enum class PairCase { I = 1, II, III, IV, V };

std::string to_string(PairCase c);

PairCase classify_case(const PairParams& p);

/// max{r1 - M1/2, r2 - M2/2, r1 + r2 - M1 - M2, r1/2 + r2 - (M1 + M2)/2, 0}.
/// Both a lower bound and achieved by build_placement + delivery_message.
double optimal_rate(const PairParams& p);

/// Closed form of the case region the point falls in; equals optimal_rate.
double case_rate(PairCase c, const PairParams& p);

/// Part `part` (1..8) of file `file` (1 = A, 2 = B).
struct PartRef {
  int file = 1;
  int part = 1;
  auto operator<=>(const PartRef&) const = default;
};

/// A plain part, or the XOR of two parts when `other` is set.
struct Piece {
  PartRef first;
  std::optional<PartRef> other;

  bool is_xor() const { return other.has_value(); }
};

std::string to_string(const Piece& piece);

/// Sizes of the eight parts shared by both files' descriptions: parts 1..6
/// split the first layer, parts 7..8 the second layer.
///
/// Caches (fixed for every case):
///   user 1: A1^B1, A3, B3, A5, B5
///   user 2: A2^B2, A4, B4, A5, B5, A7, B7
struct PlacementTable {
  PairCase which = PairCase::I;
  std::array<double, 8> part_sizes{};  // |A_i| = |B_i|, index i - 1
  double l1 = 0.0;                     // case III shared-cache split
  double l2 = 0.0;
  std::vector<Piece> user1_cache;
  std::vector<Piece> user2_cache;

  double size(int part) const { return part_sizes[static_cast<std::size_t>(part - 1)]; }
  double cache_load(int user) const;
  const std::vector<Piece>& cache_of(int user) const { return user == 1 ? user1_cache : user2_cache; }
};

PlacementTable build_placement(const PairParams& p);

struct DeliveryMessage {
  std::vector<Piece> pieces;
  double total_rate = 0.0;
};

DeliveryMessage delivery_message(const PlacementTable& placement, const DemandVector& demand);

/// Symbolic decoding: the parts `user` (1 or 2) can reconstruct from its
/// cache and the message. Throws DecodeError naming the first missing part
/// it needs (parts 1..6 of d1 for user 1, parts 1..8 of d2 for user 2).
/// Zero-size parts count as known.
std::set<PartRef> decode(const PlacementTable& placement, int user, const DeliveryMessage& message,
                         const DemandVector& demand);

struct PairSimResult {
  std::int64_t achieved_rate_bits = 0;
  bool decode_ok = false;
  std::array<std::int64_t, 2> cache_bits{};
};

/// Bit-level run of placement, delivery and decoding with real XORs on
/// pseudo-random files of block length config.block_len. Part boundaries are
/// ceilings of cumulative sizes inside each layer, so each part is within one
/// bit of n times its size.
PairSimResult simulate_pair(const SystemConfig& config, const PairParams& p,
                            const DemandVector& demand, std::uint64_t seed = 1,
                            const SimFaults& faults = {});

}  // namespace hetcache

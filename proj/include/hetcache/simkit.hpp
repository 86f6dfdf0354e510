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

#include <cstdint>
#include <span>
#include <vector>

#include "hetcache/bitstring.hpp"
#include "hetcache/layer_rate.hpp"
#include "hetcache/rate_model.hpp"

namespace hetcache {

/// A file's successively refinable description: the first ceil(n r) bits are
/// its rate-r description.
struct BitFile {
  int file_index = 1;  // 1-based
  BitString bits;
};

/// Number of bits that carry `rate` bpss at block length n.
std::int64_t bits_for_rate(double rate, std::int64_t block_len);

/// N independent pseudo-random files of ceil(n * top_rate) bits each.
/// Deterministic in seed.
std::vector<BitFile> make_files(const SystemConfig& config, double top_rate, std::uint64_t seed);

struct SimOutcome {
  std::int64_t transmitted_bits = 0;
  bool decode_ok = false;
  std::vector<std::int64_t> per_user_recovered;  // correct prefix length per user
  std::int64_t max_cache_bits = 0;               // largest per-user cache content
  int transmitted_pieces = 0;                    // XORs / unicasts actually sent
};

/// Fault injection for negative controls.
struct SimFaults {
  bool corrupt_cache = false;  // flip one cached bit of user 1's own file
};

/// Cache-aided coded delivery over L users with t-subset placement: every
/// file's rate-r prefix is split into C(L, t) chunks, user u caches the
/// chunks whose index subset contains u, and one XOR is sent per
/// (t+1)-subset. Identical transmissions are sent once. `demand` has L
/// entries. Decoding is checked bit-exactly against the files.
SimOutcome man_coded_delivery_sim(int num_users, int cache_t, double piece_rate,
                                  std::int64_t block_len, std::span<const BitFile> files,
                                  const DemandVector& demand, const SimFaults& faults = {});

/// Runs the sub-layer at corner t at bit level (uncached users served by
/// unicast, cached users by coded delivery) and checks the bit count against
/// coded_delivery_rate within one bit per transmitted piece, plus the cache
/// load against the sub-layer's per-user cache.
bool verify_corner(const SubLayerSpec& spec, int t, std::int64_t block_len, std::uint64_t seed,
                   const SimFaults& faults = {});

/// Binomial coefficient, exact for the small arguments used here.
std::int64_t binomial(int n, int k);

}  // namespace hetcache

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

#include "hetcache/simkit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <utility>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

std::int64_t bits_for_rate(double rate, std::int64_t block_len) {
  if (!(rate >= 0.0)) throw DomainError(fmt::format("rate {} must be >= 0", rate));
  const double exact = rate * static_cast<double>(block_len);
  const double nearest = std::round(exact);
  // Products like 0.3 * 10000 land a hair above an integer; do not round those up.
  if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(exact));
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t c = 1;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

std::vector<BitFile> make_files(const SystemConfig& config, double top_rate, std::uint64_t seed) {
  config.validate();
  const auto len = static_cast<std::size_t>(bits_for_rate(top_rate, config.block_len));
  std::mt19937_64 rng(seed);
  std::vector<BitFile> files;
  files.reserve(static_cast<std::size_t>(config.num_files));
  for (int f = 1; f <= config.num_files; ++f) {
    files.push_back({f, BitString::random(len, rng)});
  }
  return files;
}

SimOutcome man_coded_delivery_sim(int num_users, int cache_t, double piece_rate,
                                  std::int64_t block_len, std::span<const BitFile> files,
                                  const DemandVector& demand, const SimFaults& faults) {
  if (num_users < 1 || num_users > 20) {
    throw DomainError(fmt::format("coded delivery simulation supports 1..20 users, got {}", num_users));
  }
  if (cache_t < 0 || cache_t > num_users) {
    throw DomainError(fmt::format("cache_t={} outside 0..{}", cache_t, num_users));
  }
  const int num_files = static_cast<int>(files.size());
  demand.validate(num_files, static_cast<std::size_t>(num_users));

  const auto piece_bits = static_cast<std::size_t>(bits_for_rate(piece_rate, block_len));
  const auto num_chunks = static_cast<std::size_t>(binomial(num_users, cache_t));
  const std::size_t chunk_bits = (piece_bits + num_chunks - 1) / num_chunks;

  // Subsets of users as bitmasks; chunk j of a piece belongs to subsets_[j].
  const std::uint32_t full = (std::uint32_t{1} << num_users) - 1;
  std::vector<std::uint32_t> subsets;
  std::vector<int> index_of(std::size_t{full} + 1, -1);
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (std::popcount(m) == cache_t) {
      index_of[m] = static_cast<int>(subsets.size());
      subsets.push_back(m);
    }
  }

  std::vector<BitString> pieces;
  std::vector<std::vector<BitString>> chunks(files.size());
  for (std::size_t f = 0; f < files.size(); ++f) {
    pieces.push_back(files[f].bits.slice(0, piece_bits));
    for (std::size_t j = 0; j < num_chunks; ++j) {
      chunks[f].push_back(pieces[f].slice(j * chunk_bits, chunk_bits));
    }
  }
  auto wanted = [&](int user) { return static_cast<std::size_t>(demand.files[user] - 1); };

  // Placement.
  using ChunkKey = std::pair<std::size_t, int>;  // (file, subset index)
  std::vector<std::map<ChunkKey, BitString>> caches(num_users);
  SimOutcome out;
  for (int u = 0; u < num_users; ++u) {
    std::int64_t load = 0;
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      if (!(subsets[j] >> u & 1u)) continue;
      for (std::size_t f = 0; f < files.size(); ++f) {
        caches[u].emplace(ChunkKey{f, static_cast<int>(j)}, chunks[f][j]);
        load += static_cast<std::int64_t>(chunk_bits);
      }
    }
    out.max_cache_bits = std::max(out.max_cache_bits, load);
  }
  if (faults.corrupt_cache && chunk_bits > 0) {
    for (auto& [key, bits] : caches[0]) {
      if (key.first == wanted(0)) {
        bits.flip(0);
        break;
      }
    }
  }

  // Delivery: one XOR per (t+1)-subset, identical ones sent once.
  std::map<std::vector<ChunkKey>, std::size_t> sent_index;
  std::vector<BitString> messages;
  std::map<std::uint32_t, std::size_t> message_for;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (std::popcount(s) != cache_t + 1) continue;
    std::vector<ChunkKey> signature;
    for (int u = 0; u < num_users; ++u) {
      if (s >> u & 1u) signature.push_back({wanted(u), index_of[s & ~(std::uint32_t{1} << u)]});
    }
    std::sort(signature.begin(), signature.end());
    auto [it, inserted] = sent_index.try_emplace(signature, messages.size());
    if (inserted) {
      BitString payload(chunk_bits);
      for (const auto& [f, j] : signature) payload ^= chunks[f][static_cast<std::size_t>(j)];
      messages.push_back(std::move(payload));
    }
    message_for[s] = it->second;
  }
  out.transmitted_pieces = static_cast<int>(messages.size());
  out.transmitted_bits = static_cast<std::int64_t>(messages.size() * chunk_bits);

  // Decoding.
  out.decode_ok = true;
  for (int u = 0; u < num_users; ++u) {
    BitString recovered;
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      const std::uint32_t t_set = subsets[j];
      if (t_set >> u & 1u) {
        recovered.append(caches[u].at({wanted(u), static_cast<int>(j)}));
        continue;
      }
      const std::uint32_t s = t_set | (std::uint32_t{1} << u);
      BitString chunk = messages[message_for.at(s)];
      for (int v = 0; v < num_users; ++v) {
        if (v == u || !(s >> v & 1u)) continue;
        chunk ^= caches[u].at({wanted(v), index_of[s & ~(std::uint32_t{1} << v)]});
      }
      recovered.append(chunk);
    }
    recovered.resize(piece_bits);
    const std::size_t good = recovered.common_prefix(pieces[wanted(u)]);
    out.per_user_recovered.push_back(static_cast<std::int64_t>(good));
    if (good < piece_bits) out.decode_ok = false;
  }
  return out;
}

bool verify_corner(const SubLayerSpec& spec, int t, std::int64_t block_len, std::uint64_t seed,
                   const SimFaults& faults) {
  spec.validate();
  const double r = corner_rate(spec, t);
  const SystemConfig config{spec.num_files, spec.layer_users, 1.0, block_len};
  const auto files = make_files(config, r, seed);

  DemandVector cached_demand;
  for (int u = 0; u < spec.cached_users; ++u) {
    cached_demand.files.push_back((spec.uncached_users() + u) % spec.num_files + 1);
  }
  const SimOutcome man =
      man_coded_delivery_sim(spec.cached_users, t, r, block_len, files, cached_demand, faults);

  // Users without cache for this sub-layer get their piece by unicast.
  const std::int64_t piece_bits = bits_for_rate(r, block_len);
  const std::int64_t bits = man.transmitted_bits + spec.uncached_users() * piece_bits;
  const int pieces = man.transmitted_pieces + spec.uncached_users();

  const double expected = coded_delivery_rate(spec, r) * static_cast<double>(block_len);
  const bool rate_ok = std::abs(static_cast<double>(bits) - expected) <= pieces + 1e-6;

  const std::int64_t chunks_cached = spec.num_files * binomial(spec.cached_users - 1, t - 1);
  const bool cache_ok =
      static_cast<double>(man.max_cache_bits) <=
      spec.cache * static_cast<double>(block_len) + static_cast<double>(chunks_cached) + 1e-6;

  return man.decode_ok && rate_ok && cache_ok;
}

}  // namespace hetcache

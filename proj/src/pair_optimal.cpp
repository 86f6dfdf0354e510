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

#include "hetcache/pair_optimal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/core.h>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {
constexpr double kNegativeTolerance = 1e-12;
constexpr double kLoadTolerance = 1e-9;
}  // namespace

void PairParams::validate() const {
  for (double v : {m1, m2, r1, r2}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError(fmt::format("pair parameters must be finite and >= 0 (M1={}, M2={}, r1={}, r2={})",
                                    m1, m2, r1, r2));
    }
  }
  if (r1 > r2) throw DomainError(fmt::format("need r1 <= r2, got r1={} r2={}", r1, r2));
}

std::string to_string(PairCase c) {
  switch (c) {
    case PairCase::I: return "I";
    case PairCase::II: return "II";
    case PairCase::III: return "III";
    case PairCase::IV: return "IV";
    case PairCase::V: return "V";
  }
  return "?";
}

PairCase classify_case(const PairParams& p) {
  p.validate();
  const auto [m1, m2, r1, r2] = p;
  // Tested in order, so each test inherits the negation of the earlier ones.
  if (m1 + m2 <= r1) return PairCase::I;
  if (m1 <= r1 && m2 <= 2 * r2 - r1) return PairCase::II;
  // Reaching here with m1 <= r1 forces m2 - m1 > 2 r2 - 2 r1, so III implies m1 > r1.
  if (m2 <= 2 * r2 && m2 - m1 <= 2 * r2 - 2 * r1) return PairCase::III;
  if (m1 <= 2 * r1) return PairCase::IV;
  return PairCase::V;
}

double optimal_rate(const PairParams& p) {
  p.validate();
  const auto [m1, m2, r1, r2] = p;
  return std::max({r1 - m1 / 2, r2 - m2 / 2, r1 + r2 - (m1 + m2), r1 / 2 + r2 - (m1 + m2) / 2, 0.0});
}

double case_rate(PairCase c, const PairParams& p) {
  const auto [m1, m2, r1, r2] = p;
  switch (c) {
    case PairCase::I: return r1 + r2 - (m1 + m2);
    case PairCase::II: return r1 / 2 + r2 - (m1 + m2) / 2;
    case PairCase::III: return r2 - m2 / 2;
    case PairCase::IV: return r1 - m1 / 2;
    case PairCase::V: return 0.0;
  }
  return 0.0;
}

std::string to_string(const Piece& piece) {
  auto name = [](const PartRef& r) {
    return fmt::format("{}{}", r.file == 1 ? 'A' : r.file == 2 ? 'B' : '?', r.part);
  };
  if (!piece.other) return name(piece.first);
  return name(piece.first) + "^" + name(*piece.other);
}

double PlacementTable::cache_load(int user) const {
  if (user == 1) return size(1) + 2 * (size(3) + size(5));
  return size(2) + 2 * (size(4) + size(5) + size(7));
}

namespace {

std::vector<Piece> fixed_cache(int user) {
  auto plain = [](int file, int part) { return Piece{{file, part}, std::nullopt}; };
  auto xored = [](int part) { return Piece{{1, part}, PartRef{2, part}}; };
  if (user == 1) return {xored(1), plain(1, 3), plain(2, 3), plain(1, 5), plain(2, 5)};
  return {xored(2), plain(1, 4), plain(2, 4), plain(1, 5), plain(2, 5), plain(1, 7), plain(2, 7)};
}

}  // namespace

PlacementTable build_placement(const PairParams& p) {
  PlacementTable t;
  t.which = classify_case(p);
  const auto [m1, m2, r1, r2] = p;
  const double second = r2 - r1;
  auto& a = t.part_sizes;
  switch (t.which) {
    case PairCase::I:
      a = {m1, m2, 0, 0, 0, r1 - m1 - m2, 0, second};
      break;
    case PairCase::II: {
      // Once user 2 has cached all of its second layer, the remaining
      // multicast saving moves to the exchanged pair A3/A4.
      const double a7 = std::min(second, (m1 + m2 - r1) / 2);
      const double y = std::max(0.0, (m1 + m2 - r1) / 2 - second);
      a = {m1 - 2 * y, r1 - m1, y, y, 0, 0, a7, second - a7};
      break;
    }
    case PairCase::III: {
      t.l1 = std::max(0.0, std::min(m1 - r1, m2 / 2 - second));
      t.l2 = std::max(0.0, m2 / 2 - second - t.l1);
      a = {r1 - t.l1 - 2 * t.l2, 0, t.l2, t.l2, t.l1, 0, std::min(second, m2 / 2),
           std::max(0.0, second - m2 / 2)};
      break;
    }
    case PairCase::IV: {
      // For m1 > r1 the exchanged pair cannot absorb all of user 1's cache;
      // the rest is shared by both users as part 5.
      const double y = std::min(m1 / 2, r1 - m1 / 2);
      a = {0, r1 - m1 / 2 - y, y, y, m1 / 2 - y, 0, second, 0};
      break;
    }
    case PairCase::V:
      a = {0, 0, 0, 0, r1, 0, second, 0};
      break;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < -kNegativeTolerance) {
      throw InvariantError(fmt::format("case {} placement has |A{}| = {} < 0 at M1={} M2={} r1={} r2={}",
                                       to_string(t.which), i + 1, a[i], m1, m2, r1, r2));
    }
    // Rounding residue on either side of zero is treated as an empty part.
    if (std::abs(a[i]) <= kNegativeTolerance) a[i] = 0.0;
  }
  const double first_layer = a[0] + a[1] + a[2] + a[3] + a[4] + a[5];
  if (std::abs(first_layer - r1) > kLoadTolerance || std::abs(a[6] + a[7] - second) > kLoadTolerance) {
    throw InvariantError(fmt::format("case {} placement does not partition the layers", to_string(t.which)));
  }
  t.user1_cache = fixed_cache(1);
  t.user2_cache = fixed_cache(2);
  if (t.cache_load(1) > m1 + kLoadTolerance || t.cache_load(2) > m2 + kLoadTolerance) {
    throw InvariantError(fmt::format("case {} placement exceeds a cache (loads {}, {} vs {}, {})",
                                     to_string(t.which), t.cache_load(1), t.cache_load(2), m1, m2));
  }
  return t;
}

DeliveryMessage delivery_message(const PlacementTable& placement, const DemandVector& demand) {
  demand.validate(2, 2);
  const int d1 = demand.files[0];
  const int d2 = demand.files[1];
  DeliveryMessage msg;
  auto send = [&](Piece piece, double size) {
    if (size <= 0.0) return;
    msg.pieces.push_back(piece);
    msg.total_rate += size;
  };
  // Part 1: user 1 holds A1^B1, so the part user 2 needs also unlocks user 1.
  send({{d2, 1}, std::nullopt}, placement.size(1));
  // Part 2: mirror image for user 2's A2^B2.
  send({{d1, 2}, std::nullopt}, placement.size(2));
  // Parts 3/4: each user holds both files' copy of one of them.
  send({{d2, 3}, PartRef{d1, 4}}, std::max(placement.size(3), placement.size(4)));
  send({{d1, 6}, std::nullopt}, placement.size(6));
  if (d2 != d1) send({{d2, 6}, std::nullopt}, placement.size(6));
  send({{d2, 8}, std::nullopt}, placement.size(8));
  return msg;
}

namespace {

// Parts a user must end with: the first layer for user 1, both for user 2.
std::vector<PartRef> required_parts(int user, const DemandVector& demand) {
  std::vector<PartRef> need;
  const int file = demand.files[static_cast<std::size_t>(user - 1)];
  const int last = user == 1 ? 6 : 8;
  for (int part = 1; part <= last; ++part) need.push_back({file, part});
  return need;
}

std::string part_name(const PartRef& r) { return to_string(Piece{r, std::nullopt}); }

}  // namespace

std::set<PartRef> decode(const PlacementTable& placement, int user, const DeliveryMessage& message,
                         const DemandVector& demand) {
  if (user != 1 && user != 2) throw ValidationError(fmt::format("user must be 1 or 2, got {}", user));
  demand.validate(2, 2);
  std::set<PartRef> known;
  for (int part = 1; part <= 8; ++part) {
    if (placement.size(part) <= 0.0) {
      known.insert({1, part});
      known.insert({2, part});
    }
  }
  std::vector<Piece> side = placement.cache_of(user);
  side.insert(side.end(), message.pieces.begin(), message.pieces.end());
  for (bool progress = true; progress;) {
    progress = false;
    for (const Piece& piece : side) {
      if (!piece.is_xor()) {
        progress |= known.insert(piece.first).second;
      } else if (known.count(piece.first) && !known.count(*piece.other)) {
        progress |= known.insert(*piece.other).second;
      } else if (known.count(*piece.other) && !known.count(piece.first)) {
        progress |= known.insert(piece.first).second;
      }
    }
  }
  for (const PartRef& need : required_parts(user, demand)) {
    if (!known.count(need)) {
      throw DecodeError(fmt::format("user {} cannot recover part {} (case {}, demand ({},{}))", user,
                                    part_name(need), to_string(placement.which), demand.files[0],
                                    demand.files[1]));
    }
  }
  return known;
}

PairSimResult simulate_pair(const SystemConfig& config, const PairParams& p,
                            const DemandVector& demand, std::uint64_t seed,
                            const SimFaults& faults) {
  config.validate();
  if (config.num_files != 2 || config.num_users != 2) {
    throw ValidationError(fmt::format("pair simulation needs N = K = 2, got N={} K={}",
                                      config.num_files, config.num_users));
  }
  demand.validate(2, 2);
  const std::int64_t n = config.block_len;
  PlacementTable placement = build_placement(p);

  // Bit boundaries: ceilings of cumulative sizes, pinned to the layer ends.
  const std::int64_t end1 = bits_for_rate(p.r1, n);
  const std::int64_t end2 = std::max(end1, bits_for_rate(p.r2, n));
  std::array<std::int64_t, 9> bound{};
  double cum = 0.0;
  for (int part = 1; part <= 8; ++part) {
    cum += placement.size(part);
    const std::int64_t lo = part <= 6 ? 0 : end1;
    const std::int64_t hi = part <= 6 ? end1 : end2;
    std::int64_t b = std::clamp(bits_for_rate(cum, n), lo, hi);
    if (part == 6) b = end1;
    if (part == 8) b = end2;
    bound[part] = std::max(b, bound[part - 1]);
  }
  auto bit_len = [&](int part) { return bound[part] - bound[part - 1]; };

  // The message is built from the quantized sizes so that a part is sent iff
  // it has bits.
  PlacementTable quantized = placement;
  for (int part = 1; part <= 8; ++part) {
    quantized.part_sizes[part - 1] = static_cast<double>(bit_len(part)) / static_cast<double>(n);
  }
  const DeliveryMessage message = delivery_message(quantized, demand);

  const auto files = make_files(config, p.r2, seed);
  auto part_bits = [&](const PartRef& r) {
    return files[static_cast<std::size_t>(r.file - 1)].bits.slice(
        static_cast<std::size_t>(bound[r.part - 1]), static_cast<std::size_t>(bit_len(r.part)));
  };
  auto materialize = [&](const Piece& piece) {
    BitString bits = part_bits(piece.first);
    if (piece.other) bits ^= part_bits(*piece.other);
    return bits;
  };

  PairSimResult result;
  std::vector<BitString> sent;
  for (const Piece& piece : message.pieces) {
    sent.push_back(materialize(piece));
    result.achieved_rate_bits += static_cast<std::int64_t>(sent.back().size());
  }

  result.decode_ok = true;
  for (int user = 1; user <= 2; ++user) {
    const auto& cache_pieces = quantized.cache_of(user);
    std::vector<std::pair<Piece, BitString>> side;
    for (const Piece& piece : cache_pieces) {
      BitString bits = materialize(piece);
      result.cache_bits[static_cast<std::size_t>(user - 1)] += static_cast<std::int64_t>(bits.size());
      side.emplace_back(piece, std::move(bits));
    }
    if (faults.corrupt_cache && user == 1) {
      // Damage a piece that carries part of the file user 1 asked for,
      // preferring plain parts since an XOR may be bypassed by the message.
      const int wanted = demand.files[0];
      auto relevant = [&](const Piece& piece, bool plain) {
        return plain ? !piece.is_xor() && piece.first.file == wanted
                     : piece.first.file == wanted || (piece.other && piece.other->file == wanted);
      };
      bool flipped = false;
      for (bool plain : {true, false}) {
        for (auto& [piece, bits] : side) {
          if (!flipped && relevant(piece, plain) && !bits.empty()) {
            bits.flip(0);
            flipped = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < message.pieces.size(); ++i) side.emplace_back(message.pieces[i], sent[i]);

    std::map<PartRef, BitString> known;
    for (int part = 1; part <= 8; ++part) {
      if (bit_len(part) == 0) {
        known.emplace(PartRef{1, part}, BitString{});
        known.emplace(PartRef{2, part}, BitString{});
      }
    }
    auto trimmed = [&](BitString bits, const PartRef& r) {
      bits.resize(static_cast<std::size_t>(bit_len(r.part)));
      return bits;
    };
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto& [piece, bits] : side) {
        if (!piece.is_xor()) {
          progress |= known.emplace(piece.first, bits).second;
          continue;
        }
        auto a = known.find(piece.first);
        auto b = known.find(*piece.other);
        if (a != known.end() && b == known.end()) {
          BitString other = bits;
          other ^= a->second;
          known.emplace(*piece.other, trimmed(std::move(other), *piece.other));
          progress = true;
        } else if (b != known.end() && a == known.end()) {
          BitString other = bits;
          other ^= b->second;
          known.emplace(piece.first, trimmed(std::move(other), piece.first));
          progress = true;
        }
      }
    }

    const int file = demand.files[static_cast<std::size_t>(user - 1)];
    BitString recovered;
    bool complete = true;
    for (const PartRef& need : required_parts(user, demand)) {
      auto it = known.find(need);
      if (it == known.end()) {
        complete = false;
        break;
      }
      recovered.append(it->second);
    }
    const std::int64_t target = user == 1 ? end1 : end2;
    const BitString truth = files[static_cast<std::size_t>(file - 1)].bits.slice(0, static_cast<std::size_t>(target));
    if (!complete || !(recovered == truth)) result.decode_ok = false;
  }
  return result;
}

}  // namespace hetcache

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

#include "hetcache/bitstring.hpp"

#include <algorithm>
#include <bit>

namespace hetcache {

namespace {
constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitString::BitString(std::size_t num_bits) : words_(words_for(num_bits), 0), size_(num_bits) {}

BitString BitString::random(std::size_t num_bits, std::mt19937_64& rng) {
  BitString out(num_bits);
  for (auto& w : out.words_) w = rng();
  out.clear_tail();
  return out;
}

void BitString::set(std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (v) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitString::clear_tail() {
  const std::size_t rem = size_ & 63;
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

BitString BitString::slice(std::size_t offset, std::size_t len) const {
  BitString out(len);
  const std::size_t shift = offset & 63;
  const std::size_t first = offset >> 6;
  auto word_at = [&](std::size_t idx) -> std::uint64_t {
    return idx < words_.size() ? words_[idx] : 0;
  };
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::uint64_t lo = word_at(first + w) >> shift;
    if (shift != 0) lo |= word_at(first + w + 1) << (64 - shift);
    out.words_[w] = lo;
  }
  // Bits past size_ are already zero (tail invariant), so over-long slices pad.
  out.clear_tail();
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size_ > size_) resize(other.size_);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

void BitString::resize(std::size_t num_bits) {
  if (num_bits < size_) {
    size_ = num_bits;
    words_.resize(words_for(num_bits));
    clear_tail();
  } else {
    words_.resize(words_for(num_bits), 0);
    size_ = num_bits;
  }
}

void BitString::append(const BitString& other) {
  const std::size_t old = size_;
  resize(size_ + other.size_);
  const std::size_t shift = old & 63;
  const std::size_t first = old >> 6;
  for (std::size_t w = 0; w < other.words_.size(); ++w) {
    words_[first + w] |= other.words_[w] << shift;
    if (shift != 0 && first + w + 1 < words_.size()) {
      words_[first + w + 1] |= other.words_[w] >> (64 - shift);
    }
  }
}

std::size_t BitString::common_prefix(const BitString& other) const {
  const std::size_t n = std::min(size_, other.size_);
  for (std::size_t w = 0; w < words_for(n); ++w) {
    const std::uint64_t diff = words_[w] ^ other.words_[w];
    if (diff != 0) return std::min(n, w * 64 + static_cast<std::size_t>(std::countr_zero(diff)));
  }
  return n;
}

std::uint8_t BitString::byte(std::size_t index) const {
  return static_cast<std::uint8_t>(words_[index / 8] >> (8 * (index % 8)));
}

}  // namespace hetcache

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

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hetcache {

/// Packed bit string with word-wise slicing and XOR. Bits past size() in the
/// last word are kept zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t num_bits);

  static BitString random(std::size_t num_bits, std::mt19937_64& rng);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// Bits [offset, offset + len); positions past size() read as zero.
  BitString slice(std::size_t offset, std::size_t len) const;

  /// this ^= other, growing this to max(size(), other.size()); the shorter
  /// operand is zero padded.
  BitString& operator^=(const BitString& other);

  void append(const BitString& other);
  void resize(std::size_t num_bits);

  /// Length of the common prefix of *this and other.
  std::size_t common_prefix(const BitString& other) const;

  std::uint8_t byte(std::size_t index) const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  void clear_tail();

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace hetcache

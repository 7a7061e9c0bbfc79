// Copyright 2026 The dpcp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpcp/errors.hpp"

namespace dpcp {

/// Fixed-length vector over GF(2). Coordinate j is vertex j.
class BitVec {
 public:
  explicit BitVec(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {
    if (len == 0) throw DimensionError("BitVec length must be positive");
  }

  /// The vector whose coordinate j is bit j of `index` (vertex 0 = LSB).
  static BitVec from_index(std::size_t len, std::uint64_t index) {
    if (len < 64 && (index >> len) != 0) {
      throw DimensionError("index has bits beyond BitVec length");
    }
    BitVec v(len);
    v.words_[0] = index;
    return v;
  }

  static BitVec basis(std::size_t len, std::size_t i) {
    BitVec v(len);
    v.set(i, true);
    return v;
  }

  static BitVec ones(std::size_t len) {
    BitVec v(len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, true);
    return v;
  }

  static BitVec from_bits(const std::vector<bool>& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) v.set(i, bits[i]);
    return v;
  }

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i / 64] >> (i % 64)) & 1U;
  }
  bool operator[](std::size_t i) const { return get(i); }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }
  void reset(std::size_t i) { set(i, false); }
  void flip(std::size_t i) { set(i, !get(i)); }

  BitVec& operator^=(const BitVec& other) {
    check_same_length(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  /// Inner product over GF(2).
  bool dot(const BitVec& other) const {
    check_same_length(other);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_zero() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// Inverse of from_index; requires len <= 64.
  std::uint64_t to_index() const {
    if (len_ > 64) throw DimensionError("BitVec too long for an integer index");
    return words_[0];
  }

  /// Coordinates in vertex order, e.g. "101" for e0 + e2 with n = 3.
  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= len_) throw DimensionError("BitVec coordinate out of range");
  }
  void check_same_length(const BitVec& other) const {
    if (other.len_ != len_) {
      throw DimensionError("BitVec length mismatch: " + std::to_string(len_) +
                           " vs " + std::to_string(other.len_));
    }
  }

  std::size_t len_;
  std::vector<std::uint64_t> words_;
};

/// ⊕_j a_j·b_j.
inline bool inner_product(const BitVec& a, const BitVec& b) { return a.dot(b); }

}  // namespace dpcp

// Copyright 2026 The sparseprep Authors
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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sparseprep {

/**
 * Fixed-width bit string used for basis labels and permutation points.
 *
 * Bit 0 is the least significant bit and corresponds to qubit 0. Values of
 * different widths never compare equal. Ordering is numeric for equal widths.
 */
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {}

  static BitString from_uint(std::size_t width, std::uint64_t value) {
    BitString b(width);
    if (width < 64 && (value >> width) != 0)
      throw std::out_of_range("BitString::from_uint: value wider than width");
    if (!b.words_.empty()) b.words_[0] = value;
    return b;
  }

  /// Parses a most-significant-bit-first string of '0'/'1'.
  static BitString parse(std::string_view msb_first) {
    BitString b(msb_first.size());
    for (std::size_t i = 0; i < msb_first.size(); ++i) {
      char ch = msb_first[msb_first.size() - 1 - i];
      if (ch == '1')
        b.set(i);
      else if (ch != '0')
        throw std::invalid_argument("BitString::parse: non-binary character");
    }
    return b;
  }

  std::size_t width() const { return width_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true) {
    std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool fits_uint64() const {
    for (std::size_t i = 1; i < words_.size(); ++i)
      if (words_[i]) return false;
    return true;
  }

  std::uint64_t to_uint() const {
    if (!fits_uint64())
      throw std::out_of_range("BitString::to_uint: value exceeds 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  bool less_than(std::uint64_t v) const {
    return fits_uint64() && (words_.empty() ? 0 : words_[0]) < v;
  }

  /// Most-significant-bit-first rendering.
  std::string to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i)
      if (test(i)) s[width_ - 1 - i] = '1';
    return s;
  }

  BitString& operator^=(const BitString& o) {
    for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
      words_[i] ^= o.words_[i];
    return *this;
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

  friend std::strong_ordering operator<=>(const BitString& a,
                                          const BitString& b) {
    if (a.width_ != b.width_) return a.width_ <=> b.width_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(width_);
    for (auto w : words_)
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    return h;
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace sparseprep

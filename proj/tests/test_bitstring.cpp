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

#include <gtest/gtest.h>

#include <bit>
#include <unordered_set>

#include "sparseprep/bitstring.hpp"

using sparseprep::BitString;

TEST(BitString, ParseIsMsbFirst) {
  BitString b = BitString::parse("110");
  EXPECT_EQ(b.width(), 3u);
  EXPECT_FALSE(b.test(0));
  EXPECT_TRUE(b.test(1));
  EXPECT_TRUE(b.test(2));
  EXPECT_EQ(b.to_uint(), 6u);
  EXPECT_EQ(b.to_string(), "110");
}

TEST(BitString, FromUintRoundTrip) {
  for (std::uint64_t v = 0; v < 256; ++v) {
    auto b = BitString::from_uint(8, v);
    EXPECT_EQ(b.to_uint(), v);
    EXPECT_EQ(BitString::parse(b.to_string()), b);
    EXPECT_EQ(b.popcount(), static_cast<std::size_t>(std::popcount(v)));
  }
  EXPECT_THROW(BitString::from_uint(3, 8), std::out_of_range);
}

TEST(BitString, RejectsNonBinary) {
  EXPECT_THROW(BitString::parse("10a1"), std::invalid_argument);
}

TEST(BitString, WideStrings) {
  BitString b(200);
  EXPECT_TRUE(b.none());
  b.set(199);
  b.set(64);
  EXPECT_EQ(b.popcount(), 2u);
  EXPECT_FALSE(b.fits_uint64());
  EXPECT_THROW(b.to_uint(), std::out_of_range);
  EXPECT_FALSE(b.less_than(5));
  EXPECT_EQ(b.to_string().front(), '1');
  b.flip(199);
  b.flip(64);
  EXPECT_TRUE(b.none());
  EXPECT_TRUE(b.less_than(1));
}

TEST(BitString, XorAndOrdering) {
  auto a = BitString::parse("1010"), b = BitString::parse("0110");
  a ^= b;
  EXPECT_EQ(a.to_string(), "1100");
  EXPECT_LT(BitString::parse("0111"), BitString::parse("1000"));
  BitString hi(130), lo(130);
  hi.set(128);
  lo.set(3);
  EXPECT_LT(lo, hi);
}

TEST(BitString, HashDistinguishes) {
  std::unordered_set<BitString, sparseprep::BitStringHash> s;
  for (std::uint64_t v = 0; v < 1000; ++v) s.insert(BitString::from_uint(10, v));
  EXPECT_EQ(s.size(), 1000u);
  EXPECT_TRUE(s.count(BitString::from_uint(10, 999)));
}

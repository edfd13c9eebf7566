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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sparseprep/bench.hpp"
#include "sparseprep/unary_prep.hpp"

namespace sp = sparseprep;
using sp::BitString;

namespace {

sp::SparseStateSpec three_strings(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<sp::SparseEntry> e;
  for (const char* q : {"11011000", "00011001", "10001111"})
    e.push_back({sp::Complex(g(rng), g(rng)), BitString::parse(q)});
  double norm = 0;
  for (auto& x : e) norm += std::norm(x.amplitude);
  for (auto& x : e) x.amplitude /= std::sqrt(norm);
  return sp::validate_spec(std::move(e), 8);
}

}  // namespace

TEST(NrEncode, WorkedExample) {
  EXPECT_EQ(sp::nr_encode(BitString::parse("11011000"), 8, 2), "0001 0100 0010 1000");
  EXPECT_EQ(sp::nr_encode(std::uint64_t{0b11011000}, 8, 2), "0001 0100 0010 1000");
}

TEST(NrEncode, FullWidthIsPlainUnary) {
  EXPECT_EQ(sp::nr_encode(std::uint64_t{5}, 3, 3), "00000100");
  EXPECT_EQ(sp::nr_encode(std::uint64_t{0}, 3, 3), "10000000");
}

TEST(NrEncode, ZeroIsAllFirstOffsets) {
  EXPECT_EQ(sp::nr_encode(std::uint64_t{0}, 6, 2), "1000 1000 1000");
  EXPECT_EQ(sp::nr_encode(std::uint64_t{0}, 4, 1), "10 10 10 10");
}

TEST(NrEncode, ShortLastBlock) {
  // n = 5, r = 2: blocks of widths 2, 2, 1; the top block is printed first.
  EXPECT_EQ(sp::nr_encode(std::uint64_t{0b10110}, 5, 2), "01 0100 0010");
  auto l = sp::nr_layout(5, 2);
  EXPECT_EQ(l.widths, (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(l.total, 10u);
}

TEST(NrEncode, RoundTrips) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t r : {std::size_t{1}, std::size_t{2}, std::size_t{3}, n}) {
      if (r > n) continue;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        auto b = BitString::from_uint(n, x);
        auto code = sp::nr_encode_bits(b, n, r);
        ASSERT_EQ(code.popcount(), sp::nr_layout(n, r).blocks());
        ASSERT_EQ(sp::nr_decode(code, n, r), b);
      }
    }
  }
}

TEST(NrEncode, Errors) {
  EXPECT_THROW(sp::nr_layout(4, 0), sp::Error);
  EXPECT_THROW(sp::nr_layout(4, 5), sp::Error);
  BitString bad(8);
  bad.set(0);
  bad.set(1);
  EXPECT_THROW(sp::nr_decode(bad, 4, 2), sp::Error);
}

TEST(GGate, IdentityAndCollapse) {
  auto id = sp::g_matrix(0.0, 1.0);
  EXPECT_LE(sp::mat_distance(id, sp::mat_identity()), 1e-15);
  sp::Complex a = std::polar(0.7, 1.1);
  auto g = sp::g_matrix(a, 0.7);
  // G|1> has all its weight on |0>.
  EXPECT_NEAR(std::abs(g[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(g[3]), 0.0, 1e-15);
}

TEST(TailNorms, SuffixSums) {
  std::vector<sp::SparseEntry> e{{0.5, BitString(2)}, {sp::Complex(0, 0.5), BitString(2)},
                                 {sp::Complex(0.5, 0.5), BitString(2)}};
  auto b = sp::tail_norms(e);
  EXPECT_NEAR(b[0], 1.0, 1e-15);
  EXPECT_NEAR(b[1], std::sqrt(0.75), 1e-15);
  EXPECT_EQ(b[2], std::abs(e[2].amplitude));
}

TEST(SynthNrUnary, SingleEntry) {
  std::vector<sp::SparseEntry> e{{sp::Complex(0, 1), BitString::parse("1001")}};
  auto spec = sp::validate_spec(std::move(e), 4);
  auto c = sp::synth_nr_unary(spec, 2);
  ASSERT_EQ(c.size(), 1u + 2 + 1 + 2);
  EXPECT_EQ(c.gates()[3].kind, sp::GateKind::MCU);
  auto out = oracle::run_state(c, oracle::basis(c.width(), 0));
  // Blocks: low "01" = 1 -> qubit 1; high "10" = 2 -> qubit 4 + 2.
  std::uint64_t word = (1u << 1) | (1u << 6);
  EXPECT_NEAR(std::abs(out[word]), 1.0, 1e-12);
}

TEST(SynthNrUnary, LoopInvariantOnTheThreeStringExample) {
  std::mt19937_64 rng(107);
  auto spec = three_strings(rng);
  auto rounds = oracle::unary_rounds(spec, 2);
  ASSERT_EQ(rounds.size(), 3u);
  for (const auto& rc : rounds) {
    EXPECT_TRUE(rc.support_ok);
    EXPECT_LE(rc.max_error, 1e-10);
  }
}

TEST(SynthNrUnary, LoopInvariantRandom) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 6; ++t) {
    std::size_t n = 4 + t % 3, r = 1 + t % 2, d = 2 + t % 5;
    auto spec = sp::random_spec(n, d, rng);
    if (sp::nr_layout(n, r).total + 1 > 17) continue;
    for (const auto& rc : oracle::unary_rounds(spec, r)) {
      EXPECT_TRUE(rc.support_ok);
      EXPECT_LE(rc.max_error, 1e-10);
    }
  }
}

TEST(SynthNrUnary, RandomSixQubitsFidelity) {
  std::mt19937_64 rng(113);
  auto spec = sp::random_spec(6, 4, rng);
  auto rounds = oracle::unary_rounds(spec, 2);
  EXPECT_LE(rounds.back().max_error, 1e-9);
}

TEST(SynthNrUnary, RawCountPerRound) {
  std::mt19937_64 rng(127);
  for (std::size_t n : {6, 9, 12}) {
    for (std::size_t r : {1, 2, 3}) {
      auto spec = sp::random_spec(n, 10, rng);
      auto c = sp::synth_nr_unary(spec, r);
      const std::size_t b = sp::nr_layout(n, r).blocks();
      EXPECT_EQ(c.size(), 1 + spec.d() * (2 * b + 1));
      auto raw = sp::count_gates(c, sp::CountPolicy::Raw);
      EXPECT_EQ(raw.raw_by_kind["mcu"], spec.d());
      EXPECT_EQ(raw.raw_by_kind["cx"], spec.d() * 2 * b);
      EXPECT_EQ(c.ancilla_count(), 1u);
    }
  }
}

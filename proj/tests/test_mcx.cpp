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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sparseprep/gate_count.hpp"
#include "sparseprep/mcx.hpp"

namespace sp = sparseprep;
using sp::Control;
using sp::McxStrategy;

namespace {

// Controls 0..k-1 with the given polarity mask, target k, free qubits after.
sp::McxRequest request(std::size_t k, std::uint64_t negative_mask, std::size_t nfree) {
  sp::McxRequest r;
  for (std::size_t i = 0; i < k; ++i)
    r.controls.push_back({static_cast<sp::Qubit>(i), !((negative_mask >> i) & 1)});
  r.target = static_cast<sp::Qubit>(k);
  for (std::size_t i = 0; i < nfree; ++i) r.free.push_back(static_cast<sp::Qubit>(k + 1 + i));
  r.width = static_cast<sp::Qubit>(k + 1 + nfree);
  return r;
}

std::uint64_t ideal_mcx(const sp::McxRequest& r, std::uint64_t x) {
  for (const auto& c : r.controls)
    if (((x >> c.qubit) & 1) != static_cast<std::uint64_t>(c.positive)) return x;
  return x ^ (std::uint64_t{1} << r.target);
}

}  // namespace

TEST(ExpandMcx, OneControlIsCnot) {
  auto c = sp::expand_mcx(request(1, 0, 0));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gates()[0].kind, sp::GateKind::CNOT);
}

TEST(ExpandMcx, TwoControlsIsOneToffoli) {
  auto c = sp::expand_mcx(request(2, 0, 3));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(sp::count_gates(c, sp::CountPolicy::ExpandToffoli).elementary_total, 16u);
}

TEST(ExpandMcx, NegativeControlsAddTwoXEach) {
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    auto pos = sp::expand_mcx(request(5, 0, 3));
    auto neg = sp::expand_mcx(request(5, mask, 3));
    EXPECT_EQ(neg.size(), pos.size() + 2 * static_cast<std::size_t>(std::popcount(mask)));
  }
}

TEST(ExpandMcx, FiveControlsThreeDirtyExhaustive) {
  auto r = request(5, 0, 3);
  auto c = sp::expand_mcx(r);
  EXPECT_TRUE(oracle::maps_basis_like(c, [&](std::uint64_t x) { return ideal_mcx(r, x); }));
}

TEST(ExpandMcx, AutoPicksStrategyByFreeCount) {
  auto kinds = [](const sp::Circuit& c) {
    bool toffoli_only = true;
    for (const auto& g : c.gates()) toffoli_only = toffoli_only && g.is_classical();
    return toffoli_only;
  };
  EXPECT_TRUE(kinds(sp::expand_mcx(request(6, 0, 4))));
  EXPECT_TRUE(kinds(sp::expand_mcx(request(6, 0, 1))));
  EXPECT_FALSE(kinds(sp::expand_mcx(request(6, 0, 0))));
}

TEST(ExpandMcx, EveryStrategyExhaustive) {
  std::mt19937_64 rng(43);
  for (std::size_t k = 3; k <= 7; ++k) {
    for (auto s : {McxStrategy::Ladder, McxStrategy::Split, McxStrategy::PhaseRecursion}) {
      std::size_t nfree = s == McxStrategy::Ladder ? k - 2 : s == McxStrategy::Split ? 1 : 0;
      auto r = request(k, rng() & ((1u << k) - 1), nfree);
      auto c = sp::expand_mcx(r, s);
      EXPECT_TRUE(oracle::maps_basis_like(c, [&](std::uint64_t x) { return ideal_mcx(r, x); }))
          << "k=" << k << " strategy " << static_cast<int>(s);
    }
  }
}

TEST(ExpandMcx, UnavailableStrategyAndOverlap) {
  EXPECT_THROW(sp::expand_mcx(request(5, 0, 1), McxStrategy::Ladder), sp::Error);
  EXPECT_THROW(sp::expand_mcx(request(5, 0, 0), McxStrategy::Split), sp::Error);
  auto r = request(3, 0, 1);
  r.free = {0};
  try {
    sp::expand_mcx(r);
    FAIL();
  } catch (const sp::Error& e) {
    EXPECT_EQ(e.code(), sp::ErrorCode::OverlappingQubits);
  }
}

TEST(ExpandMcx, LinearWithBorrowedQubitsQuadraticWithout) {
  double lin = 0, quad = 0;
  for (std::size_t k = 3; k <= 40; ++k) {
    auto one = sp::count_gates(sp::expand_mcx(request(k, 0, 1)), sp::CountPolicy::ExpandToffoli);
    auto none = sp::count_gates(sp::expand_mcx(request(k, 0, 0)), sp::CountPolicy::ExpandToffoli);
    lin = std::max(lin, static_cast<double>(one.elementary_total) / static_cast<double>(k));
    quad = std::max(quad, static_cast<double>(none.elementary_total) / static_cast<double>(k * k));
  }
  // Measured constants; loose ceilings guard against regressions.
  EXPECT_LT(lin, 200.0);
  EXPECT_LT(quad, 200.0);
}

TEST(ExpandMcu, ZeroControlsIsTheGateItself) {
  auto u = sp::ry_matrix(0.7);
  auto c = sp::expand_mcu(u, {}, 0, {}, 1);
  auto want = oracle::run_state(c, oracle::basis(1, 0));
  EXPECT_NEAR(std::abs(want[0]), std::cos(0.35), 1e-12);
  EXPECT_NEAR(std::abs(want[1]), std::sin(0.35), 1e-12);
}

TEST(ExpandMcu, XMatchesExpandMcx) {
  auto r = request(4, 0b0101, 2);
  auto c = sp::expand_mcu(sp::x_matrix(), r.controls, r.target, r.free, r.width);
  EXPECT_TRUE(oracle::maps_basis_like(c, [&](std::uint64_t x) { return ideal_mcx(r, x); }));
}

namespace {

// Ideal controlled-u on the full register, given as a gate for the oracle.
double controlled_distance(const sp::Circuit& c, const sp::Gate& ideal_gate) {
  sp::Circuit ideal(c.width());
  ideal.add(ideal_gate);
  const std::uint64_t dim = std::uint64_t{1} << c.width();
  // Compare columns up to one global phase.
  std::complex<double> phase = 0;
  double worst = 0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    auto a = oracle::run_state(c, oracle::basis(c.width(), x));
    auto b = oracle::run_state(ideal, oracle::basis(c.width(), x));
    for (std::uint64_t y = 0; y < dim; ++y) {
      if (phase == std::complex<double>(0) && std::abs(b[y]) > 0.5) phase = a[y] / b[y];
    }
    for (std::uint64_t y = 0; y < dim; ++y)
      worst = std::max(worst, std::abs(a[y] - phase * b[y]));
  }
  return worst;
}

}  // namespace

TEST(ExpandMcu, GateWithThreeControlsTwoFree) {
  auto g = sp::Gate::g(0.6, 1.0, 3);
  std::vector<Control> ctl{{0, true}, {1, true}, {2, true}};
  auto c = sp::expand_mcu(sp::g_matrix(0.6, 1.0), ctl, 3, {4, 5}, 6);
  EXPECT_LE(controlled_distance(c, sp::Gate::mcu(g, ctl)), 1e-9);
}

TEST(ExpandMcu, RandomPayloadsAndPolarities) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 24; ++trial) {
    std::size_t k = 1 + trial % 4, nfree = trial % 3;
    std::vector<Control> ctl;
    for (std::size_t i = 0; i < k; ++i) ctl.push_back({static_cast<sp::Qubit>(i), (rng() & 1) == 1});
    sp::Qubit t = static_cast<sp::Qubit>(k);
    std::vector<sp::Qubit> free;
    for (std::size_t i = 0; i < nfree; ++i) free.push_back(static_cast<sp::Qubit>(k + 1 + i));
    sp::Gate base = trial % 4 == 0 ? sp::Gate::rx(u(rng), t)
                  : trial % 4 == 1 ? sp::Gate::ry(u(rng), t)
                  : trial % 4 == 2 ? sp::Gate::rz(u(rng), t)
                                   : sp::Gate::g(std::polar(0.4, u(rng)), 0.9, t);
    auto c = sp::expand_mcu(sp::single_qubit_matrix(base), ctl, t, free,
                            static_cast<sp::Qubit>(k + 1 + nfree));
    EXPECT_LE(controlled_distance(c, sp::Gate::mcu(base, ctl)), 1e-9) << trial;
  }
}

TEST(ExpandMcu, RejectsNonUnitary) {
  sp::Mat2 m{1.0, 1.0, 0.0, 1.0};
  try {
    sp::expand_mcu(m, {{0, true}}, 1, {}, 2);
    FAIL();
  } catch (const sp::Error& e) {
    EXPECT_EQ(e.code(), sp::ErrorCode::NotUnitary);
  }
}

TEST(ZyzDecompose, Reconstructs) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    auto w = sp::mat_mul(sp::rz_matrix(u(rng)), sp::mat_mul(sp::ry_matrix(u(rng)), sp::rz_matrix(u(rng))));
    auto z = sp::zyz_decompose(w);
    auto back = sp::mat_mul(sp::rz_matrix(z.beta), sp::mat_mul(sp::ry_matrix(z.gamma), sp::rz_matrix(z.delta)));
    EXPECT_LE(sp::mat_distance(back, w), 1e-12);
  }
}

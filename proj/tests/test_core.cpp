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
#include <functional>
#include <random>

#include "sparseprep/core.hpp"

namespace sp = sparseprep;
using sp::BitString;
using sp::Circuit;
using sp::ErrorCode;
using sp::Gate;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const sp::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(ValidateSpec, SingleUnitAmplitude) {
  auto spec = sp::validate_spec(std::vector<sp::RawEntry>{{1.0, "101"}}, 3);
  EXPECT_EQ(spec.d(), 1u);
  EXPECT_EQ(spec.entries[0].q.to_uint(), 5u);
}

TEST(ValidateSpec, DuplicateBasis) {
  std::vector<sp::RawEntry> raw{{0.8, "00"}, {0.6, "00"}};
  EXPECT_EQ(code_of([&] { sp::validate_spec(raw, 2); }), ErrorCode::DuplicateBasis);
}

TEST(ValidateSpec, ThreeStringsOfWidthEight) {
  const double a = 1 / std::sqrt(3.0);
  std::vector<sp::RawEntry> raw{{a, "11011000"}, {a, "00011001"}, {a, "10001111"}};
  auto spec = sp::validate_spec(raw, 8);
  EXPECT_EQ(spec.d(), 3u);
  EXPECT_EQ(spec.entries[0].amplitude, sp::Complex(a));
}

TEST(ValidateSpec, Errors) {
  EXPECT_EQ(code_of([] {
              sp::validate_spec(std::vector<sp::RawEntry>{{0.5, "01"}, {0.5, "10"}}, 2);
            }),
            ErrorCode::NotNormalized);
  EXPECT_EQ(code_of([] {
              sp::validate_spec(std::vector<sp::RawEntry>{{1.0, "011"}}, 2);
            }),
            ErrorCode::BadWidth);
  EXPECT_EQ(code_of([] {
              sp::validate_spec(std::vector<sp::RawEntry>{{1.0, "0x"}}, 2);
            }),
            ErrorCode::BadWidth);
  EXPECT_EQ(code_of([] { sp::validate_spec(std::vector<sp::RawEntry>{}, 2); }),
            ErrorCode::BadWidth);
}

TEST(ValidateSpec, ToleranceEdge) {
  double a = std::sqrt((1 + 5e-11) / 2);
  EXPECT_NO_THROW(sp::validate_spec(std::vector<sp::RawEntry>{{a, "0"}, {a, "1"}}, 1));
  double b = std::sqrt((1 + 5e-10) / 2);
  EXPECT_EQ(code_of([&] {
              sp::validate_spec(std::vector<sp::RawEntry>{{b, "0"}, {b, "1"}}, 1);
            }),
            ErrorCode::NotNormalized);
}

TEST(ValidateSpec, RevalidationIsIdentity) {
  std::vector<sp::RawEntry> raw{{sp::Complex(0.6, 0), "10"}, {sp::Complex(0, 0.8), "01"}};
  auto spec = sp::validate_spec(raw, 2);
  auto again = sp::validate_spec(spec);
  ASSERT_EQ(again.d(), spec.d());
  for (std::size_t i = 0; i < spec.d(); ++i) {
    EXPECT_EQ(again.entries[i].q, spec.entries[i].q);
    EXPECT_EQ(again.entries[i].amplitude, spec.entries[i].amplitude);
  }
}

TEST(GMatrix, UnitaryAndSplitsOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    double beta = u(rng) + 1e-3;
    if (beta > 1) beta = 1;
    sp::Complex alpha = std::polar(beta * u(rng), 6.3 * u(rng));
    auto g = sp::g_matrix(alpha, beta);
    EXPECT_LE(sp::unitarity_error(g), 1e-12);
    // G|1> = (alpha|0> + s|1>) / beta.
    double s = std::sqrt(beta * beta - std::norm(alpha));
    EXPECT_NEAR(std::abs(g[1] - alpha / beta), 0, 1e-12);
    EXPECT_NEAR(std::abs(g[3] - s / beta), 0, 1e-12);
  }
}

TEST(GMatrix, Domain) {
  EXPECT_EQ(code_of([] { sp::g_matrix(0.9, 0.5); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { sp::g_matrix(0.0, 0.0); }), ErrorCode::DomainError);
  auto g = sp::g_matrix(0.5, 0.5);
  EXPECT_NEAR(std::abs(g[0]), 0, 1e-15);
}

TEST(Rotations, MatchClosedForms) {
  auto rx = sp::rx_matrix(M_PI);
  EXPECT_NEAR(std::abs(rx[1] - sp::Complex(0, -1)), 0, 1e-15);
  auto ry = sp::ry_matrix(M_PI);
  EXPECT_NEAR(std::abs(ry[2] - 1.0), 0, 1e-15);
  auto rz = sp::rz_matrix(M_PI / 2);
  EXPECT_NEAR(std::abs(rz[0] - std::polar(1.0, -M_PI / 4)), 0, 1e-15);
  EXPECT_LE(sp::mat_distance(sp::mat_mul(rz, sp::mat_adjoint(rz)), sp::mat_identity()),
            1e-15);
}

TEST(Circuit, RejectsBadGates) {
  Circuit c(3);
  EXPECT_EQ(code_of([&] { c.add(Gate::x(3)); }), ErrorCode::InvalidGate);
  EXPECT_EQ(code_of([&] { c.add(Gate::cnot(1, 1)); }), ErrorCode::InvalidGate);
  EXPECT_EQ(code_of([&] { c.add(Gate::toffoli(0, 2, 2)); }), ErrorCode::InvalidGate);
  EXPECT_EQ(code_of([&] { c.add(Gate::g(0.8, 0.5, 0)); }), ErrorCode::InvalidGate);
  EXPECT_EQ(code_of([&] { c.add(Gate::g(0.1, 1.5, 0)); }), ErrorCode::InvalidGate);
  EXPECT_EQ(code_of([] { Circuit(2, 3); }), ErrorCode::BadWidth);
  EXPECT_TRUE(c.empty());
}

TEST(Circuit, AppendRelabelsAndInverseReverses) {
  Circuit a(2);
  a.add(Gate::ry(0.3, 0));
  a.add(Gate::cnot(0, 1));
  Circuit big(4);
  big.append(a, {3, 1});
  ASSERT_EQ(big.size(), 2u);
  EXPECT_EQ(big.gates()[0].target, 3u);
  EXPECT_EQ(big.gates()[1].controls[0].qubit, 3u);
  EXPECT_EQ(big.gates()[1].target, 1u);
  auto inv = big.inverse();
  EXPECT_EQ(inv.gates()[0].kind, sp::GateKind::CNOT);
  EXPECT_DOUBLE_EQ(inv.gates()[1].theta, -0.3);
  EXPECT_EQ(inv.inverse(), big);
}

TEST(Gate, InverseOfG) {
  Gate g = Gate::g(sp::Complex(0.3, 0.4), 0.9, 0);
  auto m = sp::mat_mul(sp::single_qubit_matrix(g), sp::single_qubit_matrix(g.inverse()));
  EXPECT_LE(sp::mat_distance(m, sp::mat_identity()), 1e-14);
}

TEST(ApplyClassical, Polarity) {
  BitString x = BitString::parse("010");
  Gate g = Gate::mcx({{0, false}, {1, true}}, 2);
  sp::apply_classical(g, x);
  EXPECT_EQ(x.to_string(), "110");
  sp::apply_classical(Gate::swap(0, 2), x);
  EXPECT_EQ(x.to_string(), "011");
  sp::apply_classical(g, x);
  EXPECT_EQ(x.to_string(), "011");
  EXPECT_EQ(code_of([&] { sp::apply_classical(Gate::ry(1, 0), x); }),
            ErrorCode::InvalidGate);
}

TEST(IntegerHelpers, Logs) {
  EXPECT_TRUE(sp::is_power_of_two(64));
  EXPECT_FALSE(sp::is_power_of_two(0));
  EXPECT_FALSE(sp::is_power_of_two(12));
  EXPECT_EQ(sp::floor_log2(17), 4u);
  EXPECT_EQ(sp::ceil_log2(17), 5u);
  EXPECT_EQ(sp::ceil_log2(16), 4u);
  EXPECT_EQ(sp::ceil_log2(1), 0u);
}

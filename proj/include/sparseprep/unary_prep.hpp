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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sparseprep/core.hpp"

namespace sparseprep {

/**
 * Block structure of the (n, r) one-hot code.
 *
 * Block j covers value bits [j*r, j*r + widths[j]); only the last block may
 * be shorter than r. Block j occupies 2^widths[j] code qubits starting at
 * offsets[j], block 0 lowest; value v of a block sets qubit offsets[j] + v.
 */
struct NrLayout {
  std::size_t n = 0, r = 0;
  std::vector<std::size_t> widths;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;

  std::size_t blocks() const { return widths.size(); }
};

inline NrLayout nr_layout(std::size_t n, std::size_t r) {
  if (r == 0 || r > n || r >= 32)
    throw Error(ErrorCode::BadBlockSize, "block size must be in [1, min(n, 31)]");
  NrLayout l{n, r, {}, {}, 0};
  for (std::size_t lo = 0; lo < n; lo += r) {
    std::size_t w = std::min(r, n - lo);
    l.widths.push_back(w);
    l.offsets.push_back(l.total);
    l.total += std::size_t{1} << w;
  }
  return l;
}

/// Value of bits [lo, lo + w) of x.
inline std::size_t bit_field(const BitString& x, std::size_t lo, std::size_t w) {
  std::size_t v = 0;
  for (std::size_t i = 0; i < w; ++i)
    if (x.test(lo + i)) v |= std::size_t{1} << i;
  return v;
}

/// Code qubits set by x, one per block, block 0 first.
inline std::vector<std::size_t> nr_positions(const BitString& x,
                                             const NrLayout& l) {
  if (x.width() != l.n)
    throw Error(ErrorCode::BadWidth, "value has wrong bit width");
  std::vector<std::size_t> pos;
  for (std::size_t j = 0; j < l.blocks(); ++j)
    pos.push_back(l.offsets[j] + bit_field(x, j * l.r, l.widths[j]));
  return pos;
}

inline BitString nr_encode_bits(const BitString& x, std::size_t n,
                                std::size_t r) {
  NrLayout l = nr_layout(n, r);
  BitString code(l.total);
  for (std::size_t p : nr_positions(x, l)) code.set(p);
  return code;
}

/**
 * Human-readable code word: most significant block first, blocks separated
 * by one space, offset 0 first inside a block.
 */
inline std::string nr_encode(const BitString& x, std::size_t n, std::size_t r) {
  NrLayout l = nr_layout(n, r);
  BitString code = nr_encode_bits(x, n, r);
  std::string s;
  for (std::size_t j = l.blocks(); j-- > 0;) {
    for (std::size_t v = 0; v < (std::size_t{1} << l.widths[j]); ++v)
      s.push_back(code.test(l.offsets[j] + v) ? '1' : '0');
    if (j) s.push_back(' ');
  }
  return s;
}

inline std::string nr_encode(std::uint64_t x, std::size_t n, std::size_t r) {
  return nr_encode(BitString::from_uint(n, x), n, r);
}

inline BitString nr_decode(const BitString& code, std::size_t n, std::size_t r) {
  NrLayout l = nr_layout(n, r);
  if (code.width() != l.total)
    throw Error(ErrorCode::BadWidth, "code word has wrong width");
  BitString x(n);
  for (std::size_t j = 0; j < l.blocks(); ++j) {
    std::size_t found = 0, value = 0;
    for (std::size_t v = 0; v < (std::size_t{1} << l.widths[j]); ++v)
      if (code.test(l.offsets[j] + v)) {
        ++found;
        value = v;
      }
    if (found != 1)
      throw Error(ErrorCode::DomainError, "block is not one-hot");
    for (std::size_t i = 0; i < l.widths[j]; ++i)
      if ((value >> i) & 1) x.set(j * r + i);
  }
  return x;
}

/// beta_i = sqrt(sum_{k >= i} |alpha_k|^2), never below |alpha_i|.
inline std::vector<double> tail_norms(const std::vector<SparseEntry>& e) {
  // beta_i = |(alpha_i, beta_{i+1})| keeps the rotation of the last entry
  // exact, so no amplitude is left behind on the flag.
  std::vector<double> beta(e.size());
  double next = 0;
  for (std::size_t i = e.size(); i-- > 0;) {
    const double a = std::abs(e[i].amplitude);
    beta[i] = next == 0 ? a : std::max(std::hypot(a, next), a);
    next = beta[i];
  }
  return beta;
}

/**
 * Prepares sum_i alpha_i |code(q_i)> on the code qubits, flag ending in |0>.
 *
 * The flag is the last qubit and starts flipped to |1>. Iteration i copies
 * the flag onto the code qubits of q_i, splits off alpha_i with a G gate on
 * the flag controlled by those qubits, and copies the flag back.
 */
inline Circuit synth_nr_unary(const SparseStateSpec& spec, std::size_t r) {
  NrLayout l = nr_layout(spec.n, r);
  const Qubit flag = static_cast<Qubit>(l.total);
  Circuit out(flag + 1, 1);
  for (std::size_t j = 0; j < l.blocks(); ++j) {
    std::vector<Qubit> reg;
    for (std::size_t v = 0; v < (std::size_t{1} << l.widths[j]); ++v)
      reg.push_back(static_cast<Qubit>(l.offsets[j] + v));
    out.set_register("M" + std::to_string(j), reg);
  }
  out.set_register("anc", {flag});

  out.add(Gate::x(flag));
  auto beta = tail_norms(spec.entries);
  for (std::size_t i = 0; i < spec.d(); ++i) {
    if (beta[i] < kAngleEpsilon) continue;
    auto pos = nr_positions(spec.entries[i].q, l);
    for (auto p : pos) out.add(Gate::cnot(flag, static_cast<Qubit>(p)));
    std::vector<Control> ctl;
    for (auto p : pos) ctl.push_back({static_cast<Qubit>(p), true});
    out.add(Gate::mcu(Gate::g(spec.entries[i].amplitude, beta[i], flag), ctl));
    for (auto p : pos) out.add(Gate::cnot(flag, static_cast<Qubit>(p)));
  }
  return out;
}

}  // namespace sparseprep

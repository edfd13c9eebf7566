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

#include <cstddef>
#include <vector>

#include "sparseprep/core.hpp"

namespace sparseprep {

/// unary[i] is the one-hot qubit for value i; binary[b] is bit b of the value.
struct ConversionLayout {
  std::vector<Qubit> unary;
  std::vector<Qubit> binary;
};

inline ConversionLayout default_conversion_layout(std::size_t w) {
  ConversionLayout l;
  const std::size_t u = std::size_t{1} << w;
  for (std::size_t i = 0; i < u; ++i) l.unary.push_back(static_cast<Qubit>(i));
  for (std::size_t b = 0; b < w; ++b)
    l.binary.push_back(static_cast<Qubit>(u + b));
  return l;
}

/**
 * Maps |e_i>|0^w> to |0^(2^w)>|i> for every i < 2^w.
 *
 * Values are handled from 2^w - 1 down to 0: the unary bit of i is copied
 * into the set bits of the binary register, then cleared by an MCX that
 * fires only when the binary register reads i. Handling 0 last keeps its
 * all-negative MCX from firing on a binary register that is still empty.
 * Inputs that are not one-hot are outside the contract.
 */
inline Circuit synth_unary_to_binary(std::size_t w, const ConversionLayout& l,
                                     Qubit width) {
  if (w == 0) throw Error(ErrorCode::BadBlockSize, "w must be positive");
  const std::size_t u = std::size_t{1} << w;
  if (l.unary.size() != u || l.binary.size() != w)
    throw Error(ErrorCode::BadWidth, "layout does not match w");
  Circuit out(width);
  for (std::size_t i = u; i-- > 0;) {
    for (std::size_t b = 0; b < w; ++b)
      if ((i >> b) & 1) out.add(Gate::cnot(l.unary[i], l.binary[b]));
    std::vector<Control> ctl;
    for (std::size_t b = 0; b < w; ++b)
      ctl.push_back({l.binary[b], static_cast<bool>((i >> b) & 1)});
    out.add(Gate::mcx(ctl, l.unary[i]));
  }
  return out;
}

inline Circuit synth_unary_to_binary(std::size_t w) {
  return synth_unary_to_binary(w, default_conversion_layout(w),
                               static_cast<Qubit>((std::size_t{1} << w) + w));
}

}  // namespace sparseprep

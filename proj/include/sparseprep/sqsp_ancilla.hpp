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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/gate_count.hpp"
#include "sparseprep/sqsp.hpp"
#include "sparseprep/unary_prep.hpp"
#include "sparseprep/unary_to_binary.hpp"

namespace sparseprep {

/// Ancillas used by the (n, r) code layout: code qubits plus the flag.
inline std::uint64_t ancilla_usage(std::size_t n, std::size_t r) {
  return nr_layout(n, r).total + 1;
}

/**
 * Block width for an m-ancilla budget: floor(log2(m/n)) clamped to [1, n],
 * lowered until the layout fits in m. nullopt when even r = 1 does not fit.
 */
inline std::optional<std::size_t> choose_r(std::size_t n, std::uint64_t m) {
  if (n == 0) return std::nullopt;
  std::size_t r = m >= n ? floor_log2(m / n) : 0;
  r = std::clamp<std::size_t>(r, 1, std::min<std::size_t>(n, 30));
  for (; r >= 1; --r)
    if (ancilla_usage(n, r) <= m) return r;
  return std::nullopt;
}

/**
 * m-ancilla preparation. Output register R is qubits 0..n-1, followed by the
 * code blocks M_j and then the flag. The code state is prepared first, then
 * each block M_j is converted into R_j = bits [j*r, j*r + w_j) of R.
 */
inline Circuit synth_with_ancilla(const SparseStateSpec& spec, std::uint64_t m) {
  auto r = choose_r(spec.n, m);
  if (!r) throw Error(ErrorCode::TooFewAncillas, "no block width fits in m");
  const std::size_t n = spec.n;
  NrLayout l = nr_layout(n, *r);
  const Qubit width = static_cast<Qubit>(n + l.total + 1);
  Circuit out(width, static_cast<Qubit>(l.total + 1));

  Circuit unary = synth_nr_unary(spec, *r);
  std::vector<Qubit> map;
  for (Qubit q = 0; q < unary.width(); ++q) map.push_back(static_cast<Qubit>(n) + q);
  out.append(unary, map);

  std::vector<Qubit> rq;
  for (std::size_t i = 0; i < n; ++i) rq.push_back(static_cast<Qubit>(i));
  out.set_register("R", rq);
  for (const auto& [name, qs] : unary.layout()) {
    std::vector<Qubit> moved;
    for (Qubit q : qs) moved.push_back(map[q]);
    out.set_register(name, moved);
  }
  for (std::size_t j = 0; j < l.blocks(); ++j) {
    ConversionLayout cl;
    for (std::size_t v = 0; v < (std::size_t{1} << l.widths[j]); ++v)
      cl.unary.push_back(static_cast<Qubit>(n + l.offsets[j] + v));
    for (std::size_t b = 0; b < l.widths[j]; ++b)
      cl.binary.push_back(static_cast<Qubit>(j * *r + b));
    out.set_register("R" + std::to_string(j), cl.binary);
    out.append(synth_unary_to_binary(l.widths[j], cl, width));
  }
  return out;
}

struct DispatchResult {
  Circuit circuit;
  bool used_ancilla = false;
  std::uint64_t no_ancilla_count = 0;
  /// Zero when the ancilla layout does not fit.
  std::uint64_t ancilla_count = 0;
};

/**
 * Picks the ancilla path when it fits and its expanded gate count is
 * smaller. In strict mode the ancilla path is taken exactly when
 * d >= n log2 n and m >= n^2 (and the layout fits).
 */
inline DispatchResult synth_auto_detailed(const SparseStateSpec& spec,
                                          std::uint64_t m, bool strict = false) {
  DispatchResult res;
  res.circuit = synth_no_ancilla(spec);
  res.no_ancilla_count = count_gates(res.circuit).elementary_total;
  if (m == 0 || !choose_r(spec.n, m)) return res;
  Circuit anc = synth_with_ancilla(spec, m);
  res.ancilla_count = count_gates(anc).elementary_total;
  bool take;
  if (strict) {
    double n = static_cast<double>(spec.n);
    take = static_cast<double>(spec.d()) >= n * std::log2(std::max(2.0, n)) &&
           static_cast<double>(m) >= n * n;
  } else {
    take = res.ancilla_count < res.no_ancilla_count;
  }
  if (take) {
    res.circuit = std::move(anc);
    res.used_ancilla = true;
  }
  return res;
}

inline Circuit synth_auto(const SparseStateSpec& spec, std::uint64_t m,
                          bool strict = false) {
  return synth_auto_detailed(spec, m, strict).circuit;
}

}  // namespace sparseprep

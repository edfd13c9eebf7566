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

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/dense_prep.hpp"
#include "sparseprep/perm_synth.hpp"
#include "sparseprep/permutation.hpp"

namespace sparseprep {

/// Permutation sending slot compact_index[q] to q for every basis string q.
struct SigmaPlan {
  Permutation sigma;
  TranspositionSet transpositions;
  /// flag_used[k]: slot k < d is already a basis string of the input state.
  std::vector<bool> flag_used;
  std::map<BitString, std::uint64_t> compact_index;
};

inline std::vector<SparseEntry> sorted_entries(const SparseStateSpec& spec) {
  auto e = spec.entries;
  std::sort(e.begin(), e.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.q < b.q; });
  return e;
}

/**
 * Strings below d keep their own slot; every other string takes the smallest
 * unused slot below d through one transposition.
 */
inline SigmaPlan build_sigma(const SparseStateSpec& spec) {
  const std::uint64_t d = spec.d();
  SigmaPlan plan;
  plan.flag_used.assign(d, false);
  auto entries = sorted_entries(spec);
  for (const auto& e : entries)
    if (e.q.less_than(d)) {
      plan.flag_used[e.q.to_uint()] = true;
      plan.compact_index[e.q] = e.q.to_uint();
    }
  std::uint64_t slot = 0;
  std::vector<bool> taken = plan.flag_used;
  for (const auto& e : entries) {
    if (e.q.less_than(d)) continue;
    while (taken[slot]) ++slot;
    taken[slot] = true;
    plan.compact_index[e.q] = slot;
    plan.transpositions.pairs.emplace_back(BitString::from_uint(spec.n, slot),
                                           e.q);
  }
  plan.sigma = plan.transpositions.as_permutation(spec.n);
  return plan;
}

/**
 * Adds transpositions between unused points so the transposition count is a
 * multiple of m_cap, leaving the prepared state unchanged.
 *
 * New points are the smallest integers >= d that are not basis strings of the
 * spec. Returns sigma itself when m_cap < 2 or nothing is left over.
 */
inline Permutation pad_irrelevant(const SigmaPlan& plan,
                                  const SparseStateSpec& spec,
                                  std::size_t m_cap) {
  const std::size_t count = plan.transpositions.size();
  if (m_cap < 2 || count % m_cap == 0) return plan.sigma;
  const std::size_t needed = 2 * (m_cap - count % m_cap);
  std::set<BitString> forbidden;
  for (const auto& e : spec.entries) forbidden.insert(e.q);
  std::vector<BitString> spare;
  const std::uint64_t limit =
      spec.n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << spec.n);
  for (std::uint64_t x = spec.d(); x < limit && spare.size() < needed; ++x) {
    BitString b = BitString::from_uint(spec.n, x);
    if (!forbidden.count(b)) spare.push_back(b);
  }
  if (spare.size() < needed)
    throw Error(ErrorCode::NoSparePoints, "not enough unused basis states");
  TranspositionSet padded = plan.transpositions;
  for (std::size_t i = 0; i < needed; i += 2)
    padded.pairs.emplace_back(spare[i], spare[i + 1]);
  return padded.as_permutation(spec.n);
}

/**
 * Ancilla-free preparation: a dense state on the low ceil(log2 d) qubits,
 * then a permutation circuit moving each slot to its basis string.
 */
inline Circuit synth_no_ancilla(const SparseStateSpec& spec, bool pad = true) {
  const std::size_t n = spec.n;
  Circuit out(static_cast<Qubit>(n));
  out.set_register("R", [&] {
    std::vector<Qubit> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(static_cast<Qubit>(i));
    return r;
  }());
  if (spec.d() == 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (spec.entries[0].q.test(i)) out.add(Gate::x(static_cast<Qubit>(i)));
    return out;
  }
  SigmaPlan plan = build_sigma(spec);
  const std::size_t k = ceil_log2(spec.d());
  DenseTarget dense{k, std::vector<Complex>(std::size_t{1} << k, 0.0)};
  for (const auto& e : spec.entries)
    dense.amps[plan.compact_index.at(e.q)] = e.amplitude;
  std::vector<Qubit> low;
  for (std::size_t i = 0; i < k; ++i) low.push_back(static_cast<Qubit>(i));
  out.append(synth_dense(dense), low);

  const std::size_t m_cap = batch_capacity(n);
  Permutation sigma = plan.sigma;
  if (pad) {
    try {
      sigma = pad_irrelevant(plan, spec, m_cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSparePoints) throw;
    }
  }
  out.append(synth_permutation(sigma, n, m_cap));
  return out;
}

}  // namespace sparseprep

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

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/permutation.hpp"

namespace sparseprep {

/**
 * The 2m' x n bit matrix of a batch: row 2t is the current image of a_t,
 * row 2t+1 that of b_t, for the batch's transpositions (a_t, b_t).
 */
struct BatchMatrix {
  std::vector<BitString> rows;
  std::size_t m_prime = 0;
  /// Number of distinct nonzero columns, set once columns are deduplicated.
  std::size_t ell = 0;
};

/// Called after every gate of the reduction stage with the updated matrix.
using BatchObserver = std::function<void(const Gate&, const BatchMatrix&)>;

/**
 * Batch size used by synth_permutation for an n-bit domain.
 *
 * 2^floor(log2(log2(n)/4)), raised to 2 for n >= 16 so that every batch
 * leaves a borrowable qubit for its widest MCX, and 1 below 16.
 */
inline std::size_t batch_capacity(std::size_t n) {
  if (n < 16) return 1;
  double v = std::log2(std::log2(static_cast<double>(n)) / 4);
  std::size_t m = v < 1 ? 1 : std::size_t{1} << static_cast<unsigned>(v);
  return std::max<std::size_t>(2, m);
}

namespace detail {

class BatchReducer {
 public:
  BatchReducer(BatchMatrix& a, Circuit& out, const BatchObserver& obs)
      : a_(a), out_(out), obs_(obs) {}

  void emit(Gate g) {
    for (auto& r : a_.rows) apply_classical(g, r);
    out_.add(g);
    if (obs_) obs_(out_.gates().back(), a_);
  }

  std::uint64_t column(std::size_t c) const {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < a_.rows.size(); ++j)
      if (a_.rows[j].test(c)) m |= std::uint64_t{1} << j;
    return m;
  }

 private:
  BatchMatrix& a_;
  Circuit& out_;
  const BatchObserver& obs_;
};

}  // namespace detail

/**
 * Circuit for a batch of m' disjoint transpositions on n qubits.
 *
 * A reduction circuit R sends the 2m' batch points to the integers 0..2m'-1
 * (a_t to 2t, b_t to 2t+1). The result is R^-1 S R where S flips qubit 0 of
 * every state whose qubits p..n-1 are zero, p = log2(2m').
 */
inline Circuit synth_batch(const TranspositionSet& batch, std::size_t n,
                           const BatchObserver& observer = {}) {
  Circuit out(static_cast<Qubit>(n));
  const std::size_t mp = batch.size();
  if (mp == 0) return out;
  if (!is_power_of_two(mp))
    throw Error(ErrorCode::NotPowerOfTwo, "batch size must be a power of 2");
  if (!batch.is_disjoint())
    throw Error(ErrorCode::NotDisjoint, "batch transpositions share a point");
  for (const auto& [a, b] : batch.pairs)
    if (a.width() != n || b.width() != n)
      throw Error(ErrorCode::BadWidth, "batch point has wrong width");
  const std::size_t p = floor_log2(2 * mp);
  // 2m' <= log2 n, i.e. 2^(2m') <= n; single transpositions are always
  // accepted.
  if (mp > 1 && (2 * mp >= 64 || (std::uint64_t{1} << (2 * mp)) > n))
    throw Error(ErrorCode::BatchTooLarge, "2m' exceeds log2 n");
  if (n == 1) {
    out.add(Gate::x(0));
    return out;
  }

  BatchMatrix a;
  a.m_prime = mp;
  for (const auto& [x, y] : batch.pairs) {
    a.rows.push_back(x);
    a.rows.push_back(y);
  }
  Circuit reduce(static_cast<Qubit>(n));
  detail::BatchReducer r(a, reduce, observer);

  // Zero every column that repeats an earlier one.
  std::map<std::uint64_t, std::size_t> first;
  for (std::size_t c = 0; c < n; ++c) {
    std::uint64_t col = r.column(c);
    if (col == 0) continue;
    auto [it, fresh] = first.emplace(col, c);
    if (!fresh) r.emit(Gate::cnot(static_cast<Qubit>(it->second),
                                  static_cast<Qubit>(c)));
  }
  // Move the nonzero columns to the front.
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < n; ++c)
    if (r.column(c)) nonzero.push_back(c);
  a.ell = nonzero.size();
  for (std::size_t i = 0; i < nonzero.size(); ++i)
    if (nonzero[i] != i)
      r.emit(Gate::swap(static_cast<Qubit>(i),
                        static_cast<Qubit>(nonzero[i])));
  // Clear row 0.
  for (std::size_t c = 0; c < a.ell; ++c)
    if (a.rows[0].test(c)) r.emit(Gate::x(static_cast<Qubit>(c)));

  // Bring row j to binary(j) without disturbing rows 0..j-1.
  for (std::size_t j = 1; j < 2 * mp; ++j) {
    auto high_bit = [&]() -> std::size_t {
      for (std::size_t c = p; c < n; ++c)
        if (a.rows[j].test(c)) return c;
      return n;
    };
    std::size_t k = high_bit();
    if (k == n) {
      bool matches = true;
      for (std::size_t c = 0; c < p; ++c)
        if (a.rows[j].test(c) != static_cast<bool>((j >> c) & 1)) matches = false;
      if (matches) continue;
      std::vector<Control> ctl;
      for (std::size_t c = 0; c < p; ++c)
        ctl.push_back({static_cast<Qubit>(c), a.rows[j].test(c)});
      r.emit(Gate::mcx(ctl, static_cast<Qubit>(p)));
      k = p;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (c == k) continue;
      bool want = c < p && ((j >> c) & 1);
      if (a.rows[j].test(c) != want)
        r.emit(Gate::cnot(static_cast<Qubit>(k), static_cast<Qubit>(c)));
    }
    std::vector<Control> ctl;
    for (std::size_t c = 0; c < p; ++c)
      if ((j >> c) & 1) ctl.push_back({static_cast<Qubit>(c), true});
    r.emit(Gate::mcx(ctl, static_cast<Qubit>(k)));
  }

  out.append(reduce);
  std::vector<Control> upper;
  for (std::size_t c = p; c < n; ++c)
    upper.push_back({static_cast<Qubit>(c), false});
  out.add(Gate::mcx(upper, 0));
  out.append(reduce.inverse());
  return out;
}

/**
 * Circuit realizing sigma exactly on every basis state.
 *
 * sigma = second o first with both factors disjoint transpositions; each
 * factor is cut into power-of-two batches of at most m_cap and every batch is
 * synthesized independently.
 */
inline Circuit synth_permutation(const Permutation& sigma, std::size_t n,
                                 std::size_t m_cap = 0) {
  if (sigma.n() != n)
    throw Error(ErrorCode::BadWidth, "permutation width differs from n");
  if (m_cap == 0) m_cap = batch_capacity(n);
  Circuit out(static_cast<Qubit>(n));
  auto [first, second] = split_two_sets(sigma);
  for (const auto* set : {&first, &second})
    for (const auto& b : partition_batches(*set, m_cap).batches)
      out.append(synth_batch(b, n));
  return out;
}

}  // namespace sparseprep

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
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sparseprep/bitstring.hpp"
#include "sparseprep/core.hpp"

namespace sparseprep {

/**
 * A permutation of the n-bit strings, stored as its non-fixed points only.
 */
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n) : n_(n) {}

  /// Builds from an explicit map; fixed points in the map are dropped.
  Permutation(std::size_t n, const std::map<BitString, BitString>& map)
      : n_(n) {
    std::set<BitString> values;
    for (const auto& [k, v] : map) {
      if (k.width() != n || v.width() != n)
        throw Error(ErrorCode::InvalidPermutation, "point has wrong width");
      if (!values.insert(v).second)
        throw Error(ErrorCode::InvalidPermutation, "map is not injective");
      if (k != v) map_.emplace(k, v);
    }
    for (const auto& [k, v] : map_)
      if (!map_.count(v))
        throw Error(ErrorCode::InvalidPermutation,
                    "key set and value set differ");
  }

  /// Builds from cycles (x0 x1 ... ), meaning x_i -> x_{i+1}.
  static Permutation from_cycles(std::size_t n,
                                 const std::vector<std::vector<BitString>>& cs) {
    std::map<BitString, BitString> m;
    std::set<BitString> seen;
    for (const auto& c : cs) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!seen.insert(c[i]).second)
          throw Error(ErrorCode::InvalidPermutation, "cycles overlap");
        m[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(n, m);
  }

  static Permutation from_cycles_uint(
      std::size_t n, const std::vector<std::vector<std::uint64_t>>& cs) {
    std::vector<std::vector<BitString>> b;
    for (const auto& c : cs) {
      b.emplace_back();
      for (auto x : c) b.back().push_back(BitString::from_uint(n, x));
    }
    return from_cycles(n, b);
  }

  std::size_t n() const { return n_; }
  std::size_t size() const { return map_.size(); }
  bool is_identity() const { return map_.empty(); }
  const std::map<BitString, BitString>& map() const { return map_; }

  BitString apply(const BitString& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? x : it->second;
  }
  std::uint64_t apply(std::uint64_t x) const {
    return apply(BitString::from_uint(n_, x)).to_uint();
  }

  Permutation inverse() const {
    std::map<BitString, BitString> m;
    for (const auto& [k, v] : map_) m.emplace(v, k);
    Permutation p(n_);
    p.map_ = std::move(m);
    return p;
  }

  /// (this o first)(x) = this(first(x)).
  Permutation after(const Permutation& first) const {
    std::map<BitString, BitString> m;
    for (const auto& [k, v] : first.map_) m[k] = apply(v);
    for (const auto& [k, v] : map_)
      if (!first.map_.count(k)) m[k] = v;
    return Permutation(n_, m);
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::size_t n_ = 0;
  std::map<BitString, BitString> map_;
};

using Transposition = std::pair<BitString, BitString>;

/// Pairwise disjoint transpositions; their composition is order-free.
struct TranspositionSet {
  std::vector<Transposition> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }

  bool is_disjoint() const {
    std::set<BitString> seen;
    for (const auto& [a, b] : pairs)
      if (a == b || !seen.insert(a).second || !seen.insert(b).second)
        return false;
    return true;
  }

  Permutation as_permutation(std::size_t n) const {
    if (!is_disjoint())
      throw Error(ErrorCode::NotDisjoint, "transpositions share a point");
    std::map<BitString, BitString> m;
    for (const auto& [a, b] : pairs) {
      m[a] = b;
      m[b] = a;
    }
    return Permutation(n, m);
  }
};

struct BatchPlan {
  std::vector<TranspositionSet> batches;
  std::size_t m_cap = 1;
};

using Cycle = std::vector<BitString>;

/// Disjoint cycles of sigma, each starting at its smallest point, ordered by
/// that point.
inline std::vector<Cycle> cycle_decompose(const Permutation& sigma) {
  std::vector<Cycle> out;
  std::set<BitString> visited;
  for (const auto& [start, _] : sigma.map()) {
    if (visited.count(start)) continue;
    Cycle c;
    BitString x = start;
    do {
      visited.insert(x);
      c.push_back(x);
      x = sigma.apply(x);
    } while (x != start);
    out.push_back(std::move(c));
  }
  return out;
}

/**
 * Writes sigma as second o first with both sets disjoint transpositions.
 *
 * A cycle (x_0 ... x_{L-1}) contributes the reflection x_i <-> x_{L-1-i} to
 * the first set and x_i <-> x_{L-i} (indices mod L) to the second.
 */
inline std::pair<TranspositionSet, TranspositionSet> split_two_sets(
    const Permutation& sigma) {
  TranspositionSet first, second;
  for (const auto& c : cycle_decompose(sigma)) {
    const std::size_t len = c.size();
    for (std::size_t i = 0; i < len - 1 - i; ++i)
      first.pairs.emplace_back(c[i], c[len - 1 - i]);
    for (std::size_t i = 1; i < len - i; ++i)
      second.pairs.emplace_back(c[i], c[len - i]);
  }
  return {std::move(first), std::move(second)};
}

/// Full batches of m_cap, then the remainder by its binary expansion,
/// largest power of two first.
inline BatchPlan partition_batches(const TranspositionSet& set,
                                   std::size_t m_cap) {
  if (!is_power_of_two(m_cap))
    throw Error(ErrorCode::NotPowerOfTwo, "batch capacity must be 2^k");
  BatchPlan plan;
  plan.m_cap = m_cap;
  std::size_t pos = 0;
  auto take = [&](std::size_t count) {
    TranspositionSet b;
    b.pairs.assign(set.pairs.begin() + pos, set.pairs.begin() + pos + count);
    pos += count;
    plan.batches.push_back(std::move(b));
  };
  while (set.size() - pos >= m_cap) take(m_cap);
  std::size_t rem = set.size() - pos;
  for (std::size_t bit = m_cap; bit >= 1; bit >>= 1)
    if (rem & bit) take(bit);
  return plan;
}

}  // namespace sparseprep

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

#include <bit>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sparseprep/core.hpp"

namespace sparseprep {

/// A k-qubit state given by all 2^k amplitudes; index bit i is qubit i.
struct DenseTarget {
  std::size_t k = 0;
  std::vector<Complex> amps;
};

namespace detail {

inline int gray_changed_bit(std::size_t j, std::size_t t) {
  std::size_t g0 = j ^ (j >> 1);
  std::size_t j1 = (j + 1) & ((std::size_t{1} << t) - 1);
  std::size_t g1 = j1 ^ (j1 >> 1);
  return static_cast<int>(floor_log2(g0 ^ g1));
}

/**
 * Emits a rotation on target whose angle is angles[x] when the controls
 * hold x (bit i of x is controls[i]). Controls the angles do not depend on
 * are dropped first.
 */
inline void emit_multiplexor(Circuit& out, GateKind kind, Qubit target,
                             std::vector<Qubit> controls,
                             std::vector<double> angles) {
  for (std::size_t i = controls.size(); i-- > 0;) {
    std::size_t bit = std::size_t{1} << i;
    bool independent = true;
    for (std::size_t x = 0; x < angles.size() && independent; ++x)
      if (std::abs(angles[x] - angles[x ^ bit]) > kAngleEpsilon)
        independent = false;
    if (!independent) continue;
    // Compact x by removing bit i.
    std::vector<double> compact(angles.size() / 2);
    for (std::size_t x = 0; x < angles.size(); ++x) {
      if (x & bit) continue;
      std::size_t low = x & (bit - 1), high = (x >> (i + 1)) << i;
      compact[high | low] = angles[x];
    }
    angles = std::move(compact);
    controls.erase(controls.begin() + static_cast<std::ptrdiff_t>(i));
  }
  bool all_zero = true;
  for (double a : angles)
    if (std::abs(a) >= kAngleEpsilon) all_zero = false;
  if (all_zero) return;
  const std::size_t t = controls.size();
  if (t == 0) {
    out.add(Gate::rotation(kind, angles[0], target));
    return;
  }
  const std::size_t size = std::size_t{1} << t;
  for (std::size_t j = 0; j < size; ++j) {
    std::size_t gj = j ^ (j >> 1);
    double beta = 0;
    for (std::size_t x = 0; x < size; ++x)
      beta += (std::popcount(x & gj) & 1 ? -1.0 : 1.0) * angles[x];
    beta /= static_cast<double>(size);
    if (std::abs(beta) >= kAngleEpsilon) {
      out.add(Gate::rotation(kind, beta, target));
    }
    out.add(Gate::cnot(controls[gray_changed_bit(j, t)], target));
  }
}

}  // namespace detail

/**
 * Prepares target.amps from |0...0> up to global phase.
 *
 * Magnitudes come from a tree of multiplexed Ry rotations, top qubit first;
 * relative phases from a cascade of multiplexed Rz rotations, qubit 0 first.
 */
inline Circuit synth_dense(const DenseTarget& target) {
  const std::size_t k = target.k;
  const std::size_t dim = std::size_t{1} << k;
  if (target.amps.size() != dim)
    throw Error(ErrorCode::BadWidth, "dense target needs 2^k amplitudes");
  double norm = 0;
  for (const auto& a : target.amps) norm += std::norm(a);
  if (std::abs(norm - 1) > kNormTolerance)
    throw Error(ErrorCode::NotNormalized, "dense target is not normalized");
  Circuit out(static_cast<Qubit>(k));
  if (k == 0) return out;

  // weight[t][x]: squared norm of the amplitudes whose top t bits are x.
  std::vector<std::vector<double>> weight(k + 1);
  weight[k].resize(dim);
  for (std::size_t i = 0; i < dim; ++i) weight[k][i] = std::norm(target.amps[i]);
  for (std::size_t t = k; t-- > 0;) {
    weight[t].resize(std::size_t{1} << t);
    for (std::size_t x = 0; x < weight[t].size(); ++x)
      weight[t][x] = weight[t + 1][2 * x] + weight[t + 1][2 * x + 1];
  }

  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t nodes = std::size_t{1} << t;
    std::vector<double> angles(nodes, 0.0);
    std::vector<bool> known(nodes, false);
    for (std::size_t x = 0; x < nodes; ++x) {
      if (weight[t][x] == 0) continue;
      angles[x] = 2 * std::atan2(std::sqrt(weight[t + 1][2 * x + 1]),
                                 std::sqrt(weight[t + 1][2 * x]));
      known[x] = true;
    }
    if (t > 0) {
      // Empty subtrees may take any angle; mirror the top control's partner.
      std::size_t top = std::size_t{1} << (t - 1);
      for (std::size_t x = 0; x < nodes; ++x)
        if (!known[x] && known[x ^ top]) angles[x] = angles[x ^ top];
    }
    std::vector<Qubit> controls;
    for (std::size_t i = 0; i < t; ++i)
      controls.push_back(static_cast<Qubit>(k - t + i));
    detail::emit_multiplexor(out, GateKind::Ry, static_cast<Qubit>(k - 1 - t),
                             controls, angles);
  }

  std::vector<double> phase(dim), w = weight[k];
  for (std::size_t i = 0; i < dim; ++i)
    phase[i] = w[i] > 0 ? std::arg(target.amps[i]) : 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t half = phase.size() / 2;
    std::vector<double> angles(half), parent(half), pw(half);
    for (std::size_t x = 0; x < half; ++x) {
      double p0 = phase[2 * x], p1 = phase[2 * x + 1];
      if (w[2 * x] == 0) p0 = p1;
      if (w[2 * x + 1] == 0) p1 = p0;
      angles[x] = p1 - p0;
      parent[x] = (p0 + p1) / 2;
      pw[x] = w[2 * x] + w[2 * x + 1];
    }
    std::vector<Qubit> controls;
    for (std::size_t i = s + 1; i < k; ++i)
      controls.push_back(static_cast<Qubit>(i));
    detail::emit_multiplexor(out, GateKind::Rz, static_cast<Qubit>(s), controls,
                             angles);
    phase = std::move(parent);
    w = std::move(pw);
  }
  return out;
}

}  // namespace sparseprep

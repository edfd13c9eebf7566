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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/gate_count.hpp"
#include "sparseprep/permutation.hpp"

namespace sparseprep {

inline constexpr Qubit kMaxSimWidth = 26;
inline constexpr Qubit kMaxPermutationWidth = 24;

/// Dense state over `width` qubits; amplitude index bit i is qubit i.
struct StateVector {
  Qubit width = 0;
  std::vector<Complex> amps;

  static StateVector basis(Qubit width, std::uint64_t index = 0) {
    if (width > kMaxSimWidth)
      throw Error(ErrorCode::WidthTooLarge, "state too wide to simulate");
    StateVector s{width, std::vector<Complex>(std::uint64_t{1} << width, 0.0)};
    s.amps.at(index) = 1.0;
    return s;
  }

  /// Embeds a sparse spec on the low spec.n qubits of a `width`-qubit state.
  static StateVector from_spec(const SparseStateSpec& spec, Qubit width) {
    if (width < spec.n)
      throw Error(ErrorCode::WidthMismatch, "state narrower than spec");
    StateVector s = basis(width, 0);
    s.amps[0] = 0.0;
    for (const auto& e : spec.entries) s.amps[e.q.to_uint()] += e.amplitude;
    return s;
  }

  double norm() const {
    double t = 0;
    for (const auto& a : amps) t += std::norm(a);
    return std::sqrt(t);
  }
};

enum class SimMode { Native, Expanded };

namespace detail {

struct ControlMask {
  std::uint64_t mask = 0, value = 0;
  bool match(std::uint64_t i) const { return (i & mask) == value; }
};

inline ControlMask control_mask(const std::vector<Control>& cs) {
  ControlMask m;
  for (const auto& c : cs) {
    m.mask |= std::uint64_t{1} << c.qubit;
    if (c.positive) m.value |= std::uint64_t{1} << c.qubit;
  }
  return m;
}

inline void apply_matrix(StateVector& s, const Mat2& u, Qubit t,
                         const ControlMask& cm) {
  const std::uint64_t tb = std::uint64_t{1} << t;
  const std::uint64_t dim = s.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tb || !cm.match(i)) continue;
    Complex a0 = s.amps[i], a1 = s.amps[i | tb];
    s.amps[i] = u[0] * a0 + u[1] * a1;
    s.amps[i | tb] = u[2] * a0 + u[3] * a1;
  }
}

inline void apply_flip(StateVector& s, Qubit t, const ControlMask& cm) {
  const std::uint64_t tb = std::uint64_t{1} << t;
  const std::uint64_t dim = s.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i)
    if (!(i & tb) && cm.match(i)) std::swap(s.amps[i], s.amps[i | tb]);
}

inline void apply_gate(StateVector& s, const Gate& g) {
  switch (g.kind) {
    case GateKind::X:
      return apply_flip(s, g.target, {});
    case GateKind::CNOT:
    case GateKind::MCX:
      return apply_flip(s, g.target, control_mask(g.controls));
    case GateKind::SWAP: {
      const std::uint64_t a = std::uint64_t{1} << g.target;
      const std::uint64_t b = std::uint64_t{1} << g.target2;
      for (std::uint64_t i = 0; i < s.amps.size(); ++i)
        if ((i & a) && !(i & b)) std::swap(s.amps[i], s.amps[(i & ~a) | b]);
      return;
    }
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::G:
      return apply_matrix(s, single_qubit_matrix(g), g.target, {});
    case GateKind::MCU:
      return apply_matrix(s, single_qubit_matrix(g.base()), g.target,
                          control_mask(g.controls));
  }
}

inline std::uint64_t apply_classical_u64(const Gate& g, std::uint64_t x) {
  switch (g.kind) {
    case GateKind::X:
      return x ^ (std::uint64_t{1} << g.target);
    case GateKind::SWAP: {
      std::uint64_t a = (x >> g.target) & 1, b = (x >> g.target2) & 1;
      if (a == b) return x;
      return x ^ (std::uint64_t{1} << g.target) ^ (std::uint64_t{1} << g.target2);
    }
    default: {
      for (const auto& c : g.controls)
        if (((x >> c.qubit) & 1) != static_cast<std::uint64_t>(c.positive))
          return x;
      return x ^ (std::uint64_t{1} << g.target);
    }
  }
}

}  // namespace detail

/// Runs the circuit on `initial`. Expanded mode lowers MCX/MCU/SWAP/G first.
inline StateVector apply(const Circuit& circuit, StateVector initial,
                         SimMode mode = SimMode::Native) {
  if (circuit.width() != initial.width)
    throw Error(ErrorCode::WidthMismatch, "circuit and state widths differ");
  if (circuit.width() > kMaxSimWidth)
    throw Error(ErrorCode::WidthTooLarge, "circuit too wide to simulate");
  if (mode == SimMode::Expanded) {
    Circuit low = lower_circuit(circuit);
    for (const auto& g : low.gates()) detail::apply_gate(initial, g);
  } else {
    for (const auto& g : circuit.gates()) detail::apply_gate(initial, g);
  }
  return initial;
}

/// |<a|b>|, insensitive to global phase.
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.width != b.width)
    throw Error(ErrorCode::WidthMismatch, "state widths differ");
  Complex ip = 0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    ip += std::conj(a.amps[i]) * b.amps[i];
  return std::abs(ip);
}

/// Largest amplitude magnitude on states where some ancilla qubit (index
/// >= data_width) is 1.
inline double ancilla_residual(const StateVector& s, Qubit data_width) {
  double worst = 0;
  const std::uint64_t low = (std::uint64_t{1} << data_width) - 1;
  for (std::uint64_t i = 0; i < s.amps.size(); ++i)
    if (i & ~low) worst = std::max(worst, std::abs(s.amps[i]));
  return worst;
}

/**
 * Basis permutation of an X/CNOT/SWAP/MCX circuit over all 2^width inputs,
 * or nullopt if some gate is not classical.
 */
inline std::optional<Permutation> permutation_action(const Circuit& c) {
  for (const auto& g : c.gates())
    if (!g.is_classical()) return std::nullopt;
  if (c.width() > kMaxPermutationWidth)
    throw Error(ErrorCode::WidthTooLarge, "too wide for exhaustive tracking");
  const std::uint64_t dim = std::uint64_t{1} << c.width();
  std::vector<std::uint32_t> image(dim);
  for (std::uint64_t x = 0; x < dim; ++x) image[x] = static_cast<std::uint32_t>(x);
  for (const auto& g : c.gates())
    for (auto& v : image)
      v = static_cast<std::uint32_t>(detail::apply_classical_u64(g, v));
  std::map<BitString, BitString> m;
  for (std::uint64_t x = 0; x < dim; ++x)
    if (image[x] != x)
      m.emplace(BitString::from_uint(c.width(), x),
                BitString::from_uint(c.width(), image[x]));
  return Permutation(c.width(), m);
}

/// Images of the given points only; any width.
inline std::optional<std::vector<BitString>> permutation_action_on(
    const Circuit& c, std::vector<BitString> points) {
  for (const auto& g : c.gates())
    if (!g.is_classical()) return std::nullopt;
  for (const auto& g : c.gates())
    for (auto& p : points) apply_classical(g, p);
  return points;
}

/// Full unitary (column-major, dim x dim) for small circuits.
inline std::vector<Complex> unitary_of(const Circuit& c,
                                       SimMode mode = SimMode::Native) {
  if (c.width() > 12)
    throw Error(ErrorCode::WidthTooLarge, "unitary accumulation limited to 12");
  const std::uint64_t dim = std::uint64_t{1} << c.width();
  std::vector<Complex> u;
  u.reserve(dim * dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    auto s = apply(c, StateVector::basis(c.width(), col), mode);
    u.insert(u.end(), s.amps.begin(), s.amps.end());
  }
  return u;
}

}  // namespace sparseprep

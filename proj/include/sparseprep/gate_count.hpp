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
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/mcx.hpp"

namespace sparseprep {

/// Fixed elementary cost of one positive-control Toffoli.
inline constexpr std::uint64_t kToffoliSingles = 10;
inline constexpr std::uint64_t kToffoliCnots = 6;

enum class CountPolicy { Raw, ExpandToffoli, ExpandAllMcx };

struct GateCountReport {
  std::map<std::string, std::uint64_t> raw_by_kind;
  std::uint64_t single_qubit = 0;
  std::uint64_t cnot = 0;
  std::uint64_t elementary_total = 0;
  /// Gates the policy left unlowered (SWAP, MCX, MCU as applicable).
  std::uint64_t unexpanded = 0;

  GateCountReport& operator+=(const GateCountReport& o) {
    for (const auto& [k, v] : o.raw_by_kind) raw_by_kind[k] += v;
    single_qubit += o.single_qubit;
    cnot += o.cnot;
    elementary_total += o.elementary_total;
    unexpanded += o.unexpanded;
    return *this;
  }
  friend bool operator==(const GateCountReport&,
                         const GateCountReport&) = default;
};

inline std::string gate_kind_name(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cx";
    case GateKind::SWAP: return "swap";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::G: return "g";
    case GateKind::MCX: return g.controls.size() == 2 ? "ccx" : "mcx";
    case GateKind::MCU: return "mcu";
  }
  return "?";
}

namespace detail {

inline std::size_t negative_count(const Gate& g) {
  std::size_t n = 0;
  for (const auto& c : g.controls) n += !c.positive;
  return n;
}

// Counts one gate that contains no MCU and no MCX with more than 2 controls
// under the Toffoli-expanding policy.
inline void count_lowlevel(const Gate& g, CountPolicy p, GateCountReport& r) {
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::G:
      r.single_qubit += 1;
      return;
    case GateKind::CNOT:
      r.cnot += 1;
      return;
    case GateKind::SWAP:
      if (p == CountPolicy::Raw)
        r.unexpanded += 1;
      else
        r.cnot += 3;
      return;
    case GateKind::MCX: {
      std::size_t k = g.controls.size();
      if (p == CountPolicy::Raw || k > 2) {
        r.unexpanded += 1;
        return;
      }
      r.single_qubit += 2 * negative_count(g);
      if (k == 0) r.single_qubit += 1;
      if (k == 1) r.cnot += 1;
      if (k == 2) {
        r.single_qubit += kToffoliSingles;
        r.cnot += kToffoliCnots;
      }
      return;
    }
    case GateKind::MCU:
      r.unexpanded += 1;
      return;
  }
}

inline GateCountReport count_plain(const Circuit& c, CountPolicy p) {
  GateCountReport r;
  for (const auto& g : c.gates()) {
    r.raw_by_kind[gate_kind_name(g)] += 1;
    count_lowlevel(g, p, r);
  }
  r.elementary_total = r.single_qubit + r.cnot;
  return r;
}

/// Canonical relabelling of a controlled gate: controls 0..k-1, target k,
/// free k+1..; used to share expansions between gates of equal shape.
inline Gate canonical_gate(const Gate& g) {
  Gate c = g;
  for (std::size_t i = 0; i < c.controls.size(); ++i)
    c.controls[i].qubit = static_cast<Qubit>(i);
  c.target = static_cast<Qubit>(c.controls.size());
  return c;
}

using CountKey = std::tuple<int, std::size_t, std::size_t, std::vector<bool>,
                            int, double, double, double, double>;

}  // namespace detail

/**
 * Counts gates under a lowering policy.
 *
 * Raw counts high-level gates by kind and only X/rotation/G/CNOT as
 * elementary. ExpandToffoli lowers SWAP to 3 CNOTs and MCX with at most two
 * controls at 16 per Toffoli. ExpandAllMcx first lowers every MCX and MCU,
 * borrowing all other qubits of the circuit, then applies ExpandToffoli; its
 * raw_by_kind describes the lowered circuit.
 */
inline GateCountReport count_gates(const Circuit& c,
                                   CountPolicy p = CountPolicy::ExpandAllMcx) {
  if (p != CountPolicy::ExpandAllMcx) return detail::count_plain(c, p);
  GateCountReport total;
  std::map<detail::CountKey, GateCountReport> memo;
  for (const auto& g : c.gates()) {
    // Every MCX goes through the expander so that its X sandwiches and
    // low-arity forms show up in raw_by_kind as the gates they become.
    bool controlled = g.kind == GateKind::MCU || g.kind == GateKind::MCX;
    if (!controlled) {
      total.raw_by_kind[gate_kind_name(g)] += 1;
      detail::count_lowlevel(g, CountPolicy::ExpandToffoli, total);
      continue;
    }
    std::size_t k = g.controls.size();
    std::size_t free = c.width() - k - 1;
    std::size_t capped = std::min(free, k + 1);
    std::vector<bool> polarity;
    for (const auto& ctl : g.controls) polarity.push_back(ctl.positive);
    detail::CountKey key{static_cast<int>(g.kind), k, capped, polarity,
                         static_cast<int>(g.payload), g.theta, g.alpha.real(),
                         g.alpha.imag(), g.beta};
    auto it = memo.find(key);
    if (it == memo.end()) {
      Gate cg = detail::canonical_gate(g);
      std::vector<Qubit> pool;
      for (std::size_t i = 0; i < capped; ++i)
        pool.push_back(static_cast<Qubit>(k + 1 + i));
      Circuit sub = expand_controlled_gate(
          cg, pool, static_cast<Qubit>(k + 1 + capped));
      it = memo.emplace(key, detail::count_plain(sub, CountPolicy::ExpandToffoli))
               .first;
    }
    total += it->second;
  }
  total.elementary_total = total.single_qubit + total.cnot;
  return total;
}

/**
 * Rewrites a circuit into X, CNOT, Toffoli (two positive controls), Ry and Rz.
 *
 * SWAP becomes three CNOTs, Rx and G become Z-Y-Z rotations, and MCX/MCU are
 * expanded borrowing every qubit they do not touch. Exact up to global phase.
 */
inline Circuit lower_circuit(const Circuit& c) {
  Circuit out(c.width(), c.ancilla_count());
  for (const auto& [name, qs] : c.layout()) out.set_register(name, qs);
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::Ry:
      case GateKind::Rz:
        out.add(g);
        break;
      case GateKind::SWAP:
        out.add(Gate::cnot(g.target, g.target2));
        out.add(Gate::cnot(g.target2, g.target));
        out.add(Gate::cnot(g.target, g.target2));
        break;
      case GateKind::Rx:
      case GateKind::G:
        out.append(expand_mcu(single_qubit_matrix(g), {}, g.target, {},
                              c.width()));
        break;
      case GateKind::MCX:
      case GateKind::MCU: {
        std::vector<bool> used(c.width(), false);
        for (Qubit q : g.qubits()) used[q] = true;
        std::vector<Qubit> free;
        for (Qubit q = 0; q < c.width(); ++q)
          if (!used[q]) free.push_back(q);
        out.append(expand_controlled_gate(g, free, c.width()));
        break;
      }
    }
  }
  return out;
}

/// Appends the 6-CNOT, 10-single-qubit Toffoli network on (c1, c2, t),
/// with H and the T family written as Ry/Rz up to global phase. The Z halves
/// of both Hadamards are folded into neighbouring Rz gates.
inline void append_toffoli_network(Circuit& out, Qubit c1, Qubit c2, Qubit t) {
  constexpr double pi = std::numbers::pi;
  out.add(Gate::ry(-pi / 2, t));
  out.add(Gate::cnot(c2, t));
  out.add(Gate::rz(3 * pi / 4, t));
  out.add(Gate::cnot(c1, t));
  out.add(Gate::rz(pi / 4, t));
  out.add(Gate::cnot(c2, t));
  out.add(Gate::rz(-pi / 4, t));
  out.add(Gate::cnot(c1, t));
  out.add(Gate::rz(3 * pi / 4, c2));
  out.add(Gate::rz(5 * pi / 4, t));
  out.add(Gate::cnot(c1, c2));
  out.add(Gate::ry(pi / 2, t));
  out.add(Gate::rz(-pi / 4, c2));
  out.add(Gate::cnot(c1, c2));
  out.add(Gate::rz(pi / 4, c1));
  out.add(Gate::rz(pi / 2, c2));
}

}  // namespace sparseprep

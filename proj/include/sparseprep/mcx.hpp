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
#include <numbers>
#include <set>
#include <vector>

#include "sparseprep/core.hpp"

namespace sparseprep {

/**
 * How a multi-controlled X with k >= 3 controls is lowered.
 *
 * Ladder borrows k-2 dirty qubits and uses 4(k-2) Toffolis. Split borrows one
 * dirty qubit and runs two ladders over the halves of the control set.
 * PhaseRecursion uses no borrowed qubit at all and costs O(k^2). Auto takes
 * the cheapest strategy the free pool allows.
 */
enum class McxStrategy { Auto, Ladder, Split, PhaseRecursion };

struct McxRequest {
  std::vector<Control> controls;
  Qubit target = 0;
  /// Qubits in an unknown state that may be used and must be restored.
  std::vector<Qubit> free;
  Qubit width = 0;
};

/// Rz(beta) Ry(gamma) Rz(delta) factorization of a special unitary.
struct ZyzAngles {
  double beta = 0, gamma = 0, delta = 0;
};

inline ZyzAngles zyz_decompose(const Mat2& w) {
  Complex a = w[0], b = w[2];
  ZyzAngles z;
  z.gamma = 2 * std::atan2(std::abs(b), std::abs(a));
  double sum = std::abs(a) > 1e-15 ? -2 * std::arg(a) : 0.0;
  double diff = std::abs(b) > 1e-15 ? 2 * std::arg(b) : 0.0;
  z.beta = (sum + diff) / 2;
  z.delta = (sum - diff) / 2;
  return z;
}

namespace detail {

inline void emit_rot(Circuit& out, GateKind kind, double theta, Qubit t) {
  if (std::abs(theta) < kAngleEpsilon) return;
  out.add(Gate::rotation(kind, theta, t));
}

inline void emit_mcx_positive(Circuit& out, const std::vector<Qubit>& ctrl,
                              Qubit t, const std::vector<Qubit>& free,
                              McxStrategy s);

// Toffoli chain over k controls with borrowed qubits free[0..k-3] and
// free[k-2] standing for the target. The half ladder up to `top` (inclusive)
// toggles that chain element by the AND of c[0..top] and leaves free[j]
// toggled by the AND of c[0..j+1] for j < top-1.
inline void emit_half_ladder(Circuit& out, const std::vector<Qubit>& c,
                             Qubit t, const std::vector<Qubit>& free,
                             std::size_t top) {
  const std::size_t k = c.size();
  auto anc = [&](std::size_t j) { return j == k - 2 ? t : free[j]; };
  auto step = [&](std::size_t i) {
    out.add(Gate::toffoli(c[i], anc(i - 2), anc(i - 1)));
  };
  for (std::size_t i = top; i >= 2; --i) step(i);
  out.add(Gate::toffoli(c[0], c[1], anc(0)));
  for (std::size_t i = 2; i <= top; ++i) step(i);
}

// 4(k-2) Toffolis: the full half ladder toggles t, the shorter one undoes
// what it left on the borrowed qubits.
inline void emit_ladder(Circuit& out, const std::vector<Qubit>& c, Qubit t,
                        const std::vector<Qubit>& free) {
  const std::size_t k = c.size();
  emit_half_ladder(out, c, t, free, k - 1);
  emit_half_ladder(out, c, t, free, k - 2);
}

inline void emit_split(Circuit& out, const std::vector<Qubit>& c, Qubit t,
                       const std::vector<Qubit>& free) {
  const std::size_t k = c.size();
  const std::size_t k1 = (k + 1) / 2;
  Qubit a = free[0];
  std::vector<Qubit> c1(c.begin(), c.begin() + k1);
  std::vector<Qubit> c2(c.begin() + k1, c.end());
  std::vector<Qubit> rest(free.begin() + 1, free.end());

  std::vector<Qubit> free1 = c2;
  free1.push_back(t);
  free1.insert(free1.end(), rest.begin(), rest.end());
  std::vector<Qubit> ctrl2 = c2;
  ctrl2.push_back(a);
  std::vector<Qubit> free2 = c1;
  free2.insert(free2.end(), rest.begin(), rest.end());

  for (int rep = 0; rep < 2; ++rep) {
    emit_mcx_positive(out, c1, a, free1, McxStrategy::Auto);
    emit_mcx_positive(out, ctrl2, t, free2, McxStrategy::Auto);
  }
}

/// Controlled special unitary on t. Exact, including phase, in the
/// controlled subspace.
inline void emit_su2_controlled(Circuit& out, const Mat2& v,
                                const std::vector<Qubit>& ctrl, Qubit t,
                                const std::vector<Qubit>& free) {
  if (mat_distance(v, mat_identity()) < 1e-13) return;
  ZyzAngles z = zyz_decompose(v);
  if (ctrl.empty()) {
    emit_rot(out, GateKind::Rz, z.delta, t);
    emit_rot(out, GateKind::Ry, z.gamma, t);
    emit_rot(out, GateKind::Rz, z.beta, t);
    return;
  }
  // v = A X B X C with ABC = I.
  Mat2 a = mat_mul(rz_matrix(z.beta), ry_matrix(z.gamma / 2));
  Mat2 b = mat_mul(ry_matrix(-z.gamma / 2), rz_matrix(-(z.delta + z.beta) / 2));
  Mat2 c = rz_matrix((z.delta - z.beta) / 2);
  if (ctrl.size() == 1 || !free.empty()) {
    // With a full ladder's worth of borrowed qubits each X is a single half
    // ladder: the first leaves the borrowed qubits offset, the second
    // removes the offset again.
    const bool halves = ctrl.size() >= 3 && free.size() >= ctrl.size() - 2;
    auto toggle = [&] {
      if (halves)
        emit_half_ladder(out, ctrl, t, free, ctrl.size() - 1);
      else
        emit_mcx_positive(out, ctrl, t, free, McxStrategy::Auto);
    };
    emit_rot(out, GateKind::Rz, (z.delta - z.beta) / 2, t);
    toggle();
    emit_rot(out, GateKind::Rz, -(z.delta + z.beta) / 2, t);
    emit_rot(out, GateKind::Ry, -z.gamma / 2, t);
    toggle();
    emit_rot(out, GateKind::Ry, z.gamma / 2, t);
    emit_rot(out, GateKind::Rz, z.beta, t);
    return;
  }
  // No free qubit: the last control gates A, B, C and the rest drive the
  // X gates, which may then borrow that last control.
  Qubit last = ctrl.back();
  std::vector<Qubit> rest(ctrl.begin(), ctrl.end() - 1);
  emit_su2_controlled(out, c, {last}, t, {});
  emit_mcx_positive(out, rest, t, {last}, McxStrategy::Auto);
  emit_su2_controlled(out, b, {last}, t, {});
  emit_mcx_positive(out, rest, t, {last}, McxStrategy::Auto);
  emit_su2_controlled(out, a, {last}, t, {});
}

/// Multiplies by e^{i phi} the basis states where every qubit of s is 1.
/// Exact up to a global phase.
inline void emit_mc_phase(Circuit& out, double phi, const std::vector<Qubit>& s,
                          std::vector<Qubit> free) {
  if (std::abs(phi) < kAngleEpsilon || s.empty()) return;
  if (s.size() == 1) {
    emit_rot(out, GateKind::Rz, phi, s[0]);
    return;
  }
  Qubit q = s.back();
  std::vector<Qubit> rest(s.begin(), s.end() - 1);
  emit_su2_controlled(out, rz_matrix(phi), rest, q, free);
  free.push_back(q);
  emit_mc_phase(out, phi / 2, rest, std::move(free));
}

inline void emit_mcx_positive(Circuit& out, const std::vector<Qubit>& ctrl,
                              Qubit t, const std::vector<Qubit>& free,
                              McxStrategy s) {
  const std::size_t k = ctrl.size();
  if (k == 0) return out.add(Gate::x(t));
  if (k == 1) return out.add(Gate::cnot(ctrl[0], t));
  if (k == 2) return out.add(Gate::toffoli(ctrl[0], ctrl[1], t));
  if (s == McxStrategy::Auto) {
    if (free.size() >= k - 2)
      s = McxStrategy::Ladder;
    else if (!free.empty())
      s = McxStrategy::Split;
    else
      s = McxStrategy::PhaseRecursion;
  }
  switch (s) {
    case McxStrategy::Ladder:
      if (free.size() < k - 2)
        throw Error(ErrorCode::StrategyUnavailable,
                    "ladder needs k-2 borrowed qubits");
      return emit_ladder(out, ctrl, t, free);
    case McxStrategy::Split:
      if (free.empty())
        throw Error(ErrorCode::StrategyUnavailable,
                    "split needs one borrowed qubit");
      return emit_split(out, ctrl, t, free);
    default:
      // X = i Rx(pi): a controlled Rx(pi) plus a phase on the controls.
      emit_su2_controlled(out, rx_matrix(std::numbers::pi), ctrl, t, {});
      emit_mc_phase(out, std::numbers::pi / 2, ctrl, {t});
      return;
  }
}

inline void check_disjoint(const std::vector<Control>& controls, Qubit target,
                           const std::vector<Qubit>& free, Qubit width) {
  std::set<Qubit> seen;
  auto take = [&](Qubit q) {
    if (q >= width)
      throw Error(ErrorCode::BadWidth, "qubit outside register width");
    if (!seen.insert(q).second)
      throw Error(ErrorCode::OverlappingQubits,
                  "controls, target and free qubits must be disjoint");
  };
  for (const auto& c : controls) take(c.qubit);
  take(target);
  for (Qubit q : free) take(q);
}

inline std::vector<Qubit> positive_sandwich_open(Circuit& out,
                                                 const std::vector<Control>& c) {
  std::vector<Qubit> pos;
  for (const auto& x : c) {
    if (!x.positive) out.add(Gate::x(x.qubit));
    pos.push_back(x.qubit);
  }
  return pos;
}

inline void positive_sandwich_close(Circuit& out,
                                    const std::vector<Control>& c) {
  for (const auto& x : c)
    if (!x.positive) out.add(Gate::x(x.qubit));
}

}  // namespace detail

/**
 * Lowers a multi-controlled X to X, CNOT, Toffoli, Ry and Rz gates.
 *
 * Borrowed qubits end in their initial state. Negative controls are wrapped
 * in X gates, two per negative control.
 */
inline Circuit expand_mcx(const McxRequest& req,
                          McxStrategy strategy = McxStrategy::Auto) {
  detail::check_disjoint(req.controls, req.target, req.free, req.width);
  Circuit out(req.width);
  auto pos = detail::positive_sandwich_open(out, req.controls);
  std::vector<Qubit> free =
      strategy == McxStrategy::PhaseRecursion ? std::vector<Qubit>{} : req.free;
  detail::emit_mcx_positive(out, pos, req.target, free, strategy);
  detail::positive_sandwich_close(out, req.controls);
  return out;
}

/**
 * Lowers a multi-controlled single-qubit unitary, exact up to global phase.
 *
 * u = e^{i phi} V with V special unitary; V is realized as A X B X C around
 * two multi-controlled X gates, and phi as a phase on the control set.
 */
inline Circuit expand_mcu(const Mat2& u, const std::vector<Control>& controls,
                          Qubit target, const std::vector<Qubit>& free,
                          Qubit width) {
  if (unitarity_error(u) > 1e-12)
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary");
  detail::check_disjoint(controls, target, free, width);
  Circuit out(width);
  auto pos = detail::positive_sandwich_open(out, controls);
  if (mat_distance(u, x_matrix()) < 1e-12) {
    detail::emit_mcx_positive(out, pos, target, free, McxStrategy::Auto);
  } else {
    Complex det = u[0] * u[3] - u[1] * u[2];
    double phi = std::arg(det) / 2;
    Complex f = std::polar(1.0, -phi);
    Mat2 v = {u[0] * f, u[1] * f, u[2] * f, u[3] * f};
    detail::emit_su2_controlled(out, v, pos, target, free);
    std::vector<Qubit> pfree = free;
    pfree.push_back(target);
    detail::emit_mc_phase(out, phi, pos, pfree);
  }
  detail::positive_sandwich_close(out, controls);
  return out;
}

/// Lowers one MCU or MCX gate of a circuit, borrowing the given qubits.
inline Circuit expand_controlled_gate(const Gate& g,
                                      const std::vector<Qubit>& free,
                                      Qubit width) {
  if (g.kind == GateKind::MCX)
    return expand_mcx({g.controls, g.target, free, width});
  if (g.kind == GateKind::MCU)
    return expand_mcu(single_qubit_matrix(g.base()), g.controls, g.target,
                      free, width);
  throw Error(ErrorCode::InvalidGate, "not a controlled gate");
}

}  // namespace sparseprep

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
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparseprep/bitstring.hpp"

namespace sparseprep {

using Complex = std::complex<double>;
using Qubit = std::uint32_t;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kAngleEpsilon = 1e-14;

enum class ErrorCode {
  DuplicateBasis,
  NotNormalized,
  BadWidth,
  InvalidGate,
  NotPowerOfTwo,
  NotDisjoint,
  BatchTooLarge,
  OverlappingQubits,
  NotUnitary,
  DomainError,
  BadBlockSize,
  NoSparePoints,
  TooFewAncillas,
  WidthMismatch,
  WidthTooLarge,
  ParseError,
  StrategyUnavailable,
  InvalidPermutation,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DuplicateBasis: return "DuplicateBasis";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadWidth: return "BadWidth";
    case ErrorCode::InvalidGate: return "InvalidGate";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::BatchTooLarge: return "BatchTooLarge";
    case ErrorCode::OverlappingQubits: return "OverlappingQubits";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BadBlockSize: return "BadBlockSize";
    case ErrorCode::NoSparePoints: return "NoSparePoints";
    case ErrorCode::TooFewAncillas: return "TooFewAncillas";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::WidthTooLarge: return "WidthTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::StrategyUnavailable: return "StrategyUnavailable";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// 2x2 matrices, row-major: {m00, m01, m10, m11}.

using Mat2 = std::array<Complex, 4>;

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 mat_adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

inline Mat2 mat_identity() { return {1.0, 0.0, 0.0, 1.0}; }

inline double mat_distance(const Mat2& a, const Mat2& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double unitarity_error(const Mat2& a) {
  return mat_distance(mat_mul(mat_adjoint(a), a), mat_identity());
}

inline Mat2 rx_matrix(double theta) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, Complex(0, -s), Complex(0, -s), c};
}

inline Mat2 ry_matrix(double theta) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -s, s, c};
}

inline Mat2 rz_matrix(double theta) {
  return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

inline Mat2 x_matrix() { return {0.0, 1.0, 1.0, 0.0}; }

/**
 * The amplitude-splitting gate G(alpha, beta).
 *
 * (1/beta) * [[s, alpha], [-conj(alpha), s]] with s = sqrt(beta^2 - |alpha|^2).
 * Applied to |1> it yields (alpha|0> + s|1>) / beta. Requires |alpha| <= beta
 * and beta > 0.
 */
inline Mat2 g_matrix(Complex alpha, double beta) {
  double a = std::abs(alpha);
  if (!(beta > 0) || a > beta * (1 + 1e-12))
    throw Error(ErrorCode::DomainError, "G gate requires 0 <= |alpha| <= beta");
  double s = std::sqrt(std::max(0.0, (beta - a) * (beta + a)));
  return {s / beta, alpha / beta, -std::conj(alpha) / beta, s / beta};
}

// ---------------------------------------------------------------------------
// Gates.

enum class GateKind { X, CNOT, SWAP, Rx, Ry, Rz, G, MCX, MCU };

struct Control {
  Qubit qubit;
  bool positive = true;
  friend bool operator==(const Control&, const Control&) = default;
};

/**
 * One circuit operation.
 *
 * CNOT stores its control in controls[0]. SWAP uses target and target2.
 * MCU applies the single-qubit gate described by payload/theta/alpha/beta
 * under the listed controls; payload is one of Rx, Ry, Rz, G.
 */
struct Gate {
  GateKind kind = GateKind::X;
  Qubit target = 0;
  Qubit target2 = 0;
  std::vector<Control> controls;
  GateKind payload = GateKind::X;
  double theta = 0;
  Complex alpha = 0;
  double beta = 1;

  friend bool operator==(const Gate&, const Gate&) = default;

  static Gate x(Qubit t) {
    Gate g;
    g.target = t;
    return g;
  }
  static Gate cnot(Qubit c, Qubit t) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.target = t;
    g.controls = {{c, true}};
    return g;
  }
  static Gate swap(Qubit a, Qubit b) {
    Gate g;
    g.kind = GateKind::SWAP;
    g.target = a;
    g.target2 = b;
    return g;
  }
  /// Rx, Ry or Rz by theta.
  static Gate rotation(GateKind kind, double theta, Qubit t) {
    Gate g;
    g.kind = kind;
    g.target = t;
    g.theta = theta;
    return g;
  }
  static Gate rx(double th, Qubit t) { return rotation(GateKind::Rx, th, t); }
  static Gate ry(double th, Qubit t) { return rotation(GateKind::Ry, th, t); }
  static Gate rz(double th, Qubit t) { return rotation(GateKind::Rz, th, t); }
  static Gate g(Complex alpha, double beta, Qubit t) {
    Gate g;
    g.kind = GateKind::G;
    g.target = t;
    g.alpha = alpha;
    g.beta = beta;
    return g;
  }
  static Gate mcx(std::vector<Control> controls, Qubit t) {
    Gate g;
    g.kind = GateKind::MCX;
    g.target = t;
    g.controls = std::move(controls);
    return g;
  }
  static Gate toffoli(Qubit c1, Qubit c2, Qubit t) {
    return mcx({{c1, true}, {c2, true}}, t);
  }
  /// Controlled version of a single-qubit rotation or G gate.
  static Gate mcu(const Gate& base, std::vector<Control> controls) {
    Gate g = base;
    g.payload = base.kind;
    g.kind = GateKind::MCU;
    g.controls = std::move(controls);
    return g;
  }

  /// Single-qubit part of the gate: the payload of an MCU, the gate itself
  /// for Rx/Ry/Rz/G/X.
  Gate base() const {
    Gate b = *this;
    b.controls.clear();
    if (kind == GateKind::MCU) b.kind = payload;
    if (kind == GateKind::MCX || kind == GateKind::CNOT) b.kind = GateKind::X;
    b.payload = GateKind::X;
    return b;
  }

  std::vector<Qubit> qubits() const {
    std::vector<Qubit> q;
    for (const auto& c : controls) q.push_back(c.qubit);
    q.push_back(target);
    if (kind == GateKind::SWAP) q.push_back(target2);
    return q;
  }

  bool is_classical() const {
    return kind == GateKind::X || kind == GateKind::CNOT ||
           kind == GateKind::SWAP || kind == GateKind::MCX;
  }

  Gate inverse() const {
    Gate g = *this;
    GateKind k = kind == GateKind::MCU ? payload : kind;
    if (k == GateKind::Rx || k == GateKind::Ry || k == GateKind::Rz)
      g.theta = -theta;
    else if (k == GateKind::G)
      g.alpha = -alpha;
    return g;
  }
};

/// 2x2 matrix of a single-qubit gate kind (X, Rx, Ry, Rz, G).
inline Mat2 single_qubit_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return x_matrix();
    case GateKind::Rx: return rx_matrix(g.theta);
    case GateKind::Ry: return ry_matrix(g.theta);
    case GateKind::Rz: return rz_matrix(g.theta);
    case GateKind::G: return g_matrix(g.alpha, g.beta);
    default:
      throw Error(ErrorCode::InvalidGate, "not a single-qubit gate kind");
  }
}

// ---------------------------------------------------------------------------
// Circuits.

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(Qubit width, Qubit ancilla_count = 0)
      : width_(width), ancilla_count_(ancilla_count) {
    if (ancilla_count > width)
      throw Error(ErrorCode::BadWidth, "more ancillas than qubits");
  }

  Qubit width() const { return width_; }
  Qubit ancilla_count() const { return ancilla_count_; }
  Qubit data_width() const { return width_ - ancilla_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  const std::map<std::string, std::vector<Qubit>>& layout() const {
    return layout_;
  }
  void set_register(const std::string& name, std::vector<Qubit> qubits) {
    for (Qubit q : qubits)
      if (q >= width_)
        throw Error(ErrorCode::BadWidth, "register qubit outside circuit");
    layout_[name] = std::move(qubits);
  }

  void add(Gate g) {
    check_gate(g);
    gates_.push_back(std::move(g));
  }

  /// Appends other's gates, relabelling qubit i of other to map[i].
  void append(const Circuit& other, const std::vector<Qubit>& map) {
    for (Gate g : other.gates_) {
      g.target = map.at(g.target);
      if (g.kind == GateKind::SWAP) g.target2 = map.at(g.target2);
      for (auto& c : g.controls) c.qubit = map.at(c.qubit);
      add(std::move(g));
    }
  }

  void append(const Circuit& other) {
    if (other.width_ > width_)
      throw Error(ErrorCode::WidthMismatch, "appended circuit is wider");
    for (const auto& g : other.gates_) add(g);
  }

  Circuit inverse() const {
    Circuit c(width_, ancilla_count_);
    c.layout_ = layout_;
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
      c.gates_.push_back(it->inverse());
    return c;
  }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.width_ == b.width_ && a.ancilla_count_ == b.ancilla_count_ &&
           a.gates_ == b.gates_;
  }

 private:
  void check_gate(const Gate& g) const {
    auto q = g.qubits();
    std::set<Qubit> seen;
    for (Qubit x : q) {
      if (x >= width_)
        throw Error(ErrorCode::InvalidGate, "gate qubit outside circuit width");
      if (!seen.insert(x).second)
        throw Error(ErrorCode::InvalidGate, "gate uses a qubit twice");
    }
    if (g.kind == GateKind::CNOT && g.controls.size() != 1)
      throw Error(ErrorCode::InvalidGate, "CNOT needs exactly one control");
    bool has_g = g.kind == GateKind::G ||
                 (g.kind == GateKind::MCU && g.payload == GateKind::G);
    // beta may exceed 1 by the normalization tolerance of the input state.
    if (has_g && (!(g.beta > 0) || g.beta > 1 + 1e-9 ||
                  std::abs(g.alpha) > g.beta * (1 + 1e-12)))
      throw Error(ErrorCode::InvalidGate, "G gate needs 0 <= |alpha| <= beta <= 1");
    if (g.kind == GateKind::MCU &&
        !(g.payload == GateKind::Rx || g.payload == GateKind::Ry ||
          g.payload == GateKind::Rz || g.payload == GateKind::G))
      throw Error(ErrorCode::InvalidGate, "MCU payload must be Rx, Ry, Rz or G");
  }

  Qubit width_ = 0;
  Qubit ancilla_count_ = 0;
  std::vector<Gate> gates_;
  std::map<std::string, std::vector<Qubit>> layout_;
};

/// Applies an X/CNOT/SWAP/MCX gate to a basis state in place.
inline void apply_classical(const Gate& g, BitString& x) {
  switch (g.kind) {
    case GateKind::X:
      x.flip(g.target);
      return;
    case GateKind::SWAP: {
      bool a = x.test(g.target), b = x.test(g.target2);
      x.set(g.target, b);
      x.set(g.target2, a);
      return;
    }
    case GateKind::CNOT:
    case GateKind::MCX:
      for (const auto& c : g.controls)
        if (x.test(c.qubit) != c.positive) return;
      x.flip(g.target);
      return;
    default:
      throw Error(ErrorCode::InvalidGate, "gate is not classical");
  }
}

// ---------------------------------------------------------------------------
// Sparse input states.

struct SparseEntry {
  Complex amplitude;
  BitString q;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// A validated list of (amplitude, basis string) pairs over n qubits.
struct SparseStateSpec {
  std::size_t n = 0;
  std::vector<SparseEntry> entries;
  std::size_t d() const { return entries.size(); }
  friend bool operator==(const SparseStateSpec&,
                         const SparseStateSpec&) = default;
};

/// Raw, unvalidated entry with an MSB-first bit string.
struct RawEntry {
  Complex amplitude;
  std::string bits;
};

inline SparseStateSpec validate_spec(std::vector<SparseEntry> entries,
                                     std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadWidth, "n must be positive");
  if (entries.empty()) throw Error(ErrorCode::BadWidth, "no entries");
  if (n < 64 && entries.size() > (std::size_t{1} << n))
    throw Error(ErrorCode::BadWidth, "more entries than basis states");
  std::set<BitString> seen;
  double norm = 0;
  for (const auto& e : entries) {
    if (e.q.width() != n)
      throw Error(ErrorCode::BadWidth, "basis string has wrong length");
    if (!seen.insert(e.q).second)
      throw Error(ErrorCode::DuplicateBasis, "repeated basis string " +
                                                 e.q.to_string());
    norm += std::norm(e.amplitude);
  }
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw Error(ErrorCode::NotNormalized, "squared amplitudes sum to " +
                                              std::to_string(norm));
  return SparseStateSpec{n, std::move(entries)};
}

inline SparseStateSpec validate_spec(const std::vector<RawEntry>& raw,
                                     std::size_t n) {
  std::vector<SparseEntry> entries;
  entries.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.bits.size() != n)
      throw Error(ErrorCode::BadWidth, "basis string has wrong length");
    BitString q;
    try {
      q = BitString::parse(r.bits);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::BadWidth, "basis string is not binary");
    }
    entries.push_back({r.amplitude, std::move(q)});
  }
  return validate_spec(std::move(entries), n);
}

inline SparseStateSpec validate_spec(const SparseStateSpec& spec) {
  return validate_spec(spec.entries, spec.n);
}

// ---------------------------------------------------------------------------
// Small integer helpers.

inline bool is_power_of_two(std::uint64_t x) { return x && !(x & (x - 1)); }

inline unsigned floor_log2(std::uint64_t x) {
  unsigned r = 0;
  while (x >>= 1) ++r;
  return r;
}

inline unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : floor_log2(x - 1) + 1;
}

}  // namespace sparseprep

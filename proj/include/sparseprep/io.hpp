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

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparseprep/core.hpp"

namespace sparseprep {

// Circuit text format, one item per line:
//
//   qubits <width> ancillas <m>
//   reg <name> <q>...
//   x <t> | cx <c> <t> | ccx <c1> <c2> <t> | swap <a> <b>
//   rx|ry|rz <theta> <t> | g <re> <im> <beta> <t>
//   mcx [+c|-c]... <t>
//   mcu rx|ry|rz <theta> [+c|-c]... <t>
//   mcu g <re> <im> <beta> [+c|-c]... <t>
//
// Blank lines and lines starting with '#' are ignored.

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string payload_text(const Gate& g, GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return "rx " + fmt_double(g.theta);
    case GateKind::Ry: return "ry " + fmt_double(g.theta);
    case GateKind::Rz: return "rz " + fmt_double(g.theta);
    case GateKind::G:
      return "g " + fmt_double(g.alpha.real()) + " " +
             fmt_double(g.alpha.imag()) + " " + fmt_double(g.beta);
    default: return "?";
  }
}

inline std::string controls_text(const Gate& g) {
  std::string s;
  for (const auto& c : g.controls)
    s += (c.positive ? " +" : " -") + std::to_string(c.qubit);
  return s;
}

}  // namespace detail

inline std::string gate_to_text(const Gate& g) {
  const std::string t = std::to_string(g.target);
  switch (g.kind) {
    case GateKind::X: return "x " + t;
    case GateKind::CNOT: return "cx " + std::to_string(g.controls[0].qubit) + " " + t;
    case GateKind::SWAP: return "swap " + t + " " + std::to_string(g.target2);
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::G:
      return detail::payload_text(g, g.kind) + " " + t;
    case GateKind::MCX:
      if (g.controls.size() == 2 && g.controls[0].positive &&
          g.controls[1].positive)
        return "ccx " + std::to_string(g.controls[0].qubit) + " " +
               std::to_string(g.controls[1].qubit) + " " + t;
      return "mcx" + detail::controls_text(g) + " " + t;
    case GateKind::MCU:
      return "mcu " + detail::payload_text(g, g.payload) +
             detail::controls_text(g) + " " + t;
  }
  return "";
}

inline std::string circuit_to_text(const Circuit& c) {
  std::string s = "qubits " + std::to_string(c.width()) + " ancillas " +
                  std::to_string(c.ancilla_count()) + "\n";
  for (const auto& [name, qs] : c.layout()) {
    s += "reg " + name;
    for (Qubit q : qs) s += " " + std::to_string(q);
    s += "\n";
  }
  for (const auto& g : c.gates()) s += gate_to_text(g) + "\n";
  return s;
}

namespace detail {

class LineReader {
 public:
  LineReader(const std::string& line, std::size_t lineno)
      : in_(line), lineno_(lineno) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) fail("unexpected end of line");
    return w;
  }
  bool done() {
    std::string w;
    return !(in_ >> w);
  }
  double number() {
    std::string w = word();
    try {
      std::size_t used = 0;
      double v = std::stod(w, &used);
      if (used != w.size()) fail("bad number '" + w + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + w + "'");
    }
  }
  Qubit qubit(std::string w) {
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
      fail("bad qubit '" + w + "'");
    try {
      return static_cast<Qubit>(std::stoul(w));
    } catch (const std::logic_error&) {
      fail("bad qubit '" + w + "'");
    }
  }
  Qubit qubit() { return qubit(word()); }
  /// Remaining tokens: signed controls followed by the target.
  void controls_and_target(Gate& g) {
    std::vector<std::string> rest;
    std::string w;
    while (in_ >> w) rest.push_back(w);
    if (rest.empty()) fail("missing target");
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
      const std::string& c = rest[i];
      if (c.size() < 2 || (c[0] != '+' && c[0] != '-'))
        fail("control needs a + or - sign: '" + c + "'");
      g.controls.push_back({qubit(c.substr(1)), c[0] == '+'});
    }
    g.target = qubit(rest.back());
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(lineno_) + ": " + msg);
  }

 private:
  std::istringstream in_;
  std::size_t lineno_;
};

inline void read_payload(LineReader& r, Gate& g, const std::string& kind) {
  if (kind == "rx" || kind == "ry" || kind == "rz") {
    g.payload = kind == "rx" ? GateKind::Rx
                : kind == "ry" ? GateKind::Ry
                               : GateKind::Rz;
    g.theta = r.number();
  } else if (kind == "g") {
    g.payload = GateKind::G;
    double re = r.number(), im = r.number();
    g.alpha = Complex(re, im);
    g.beta = r.number();
  } else {
    r.fail("unknown gate '" + kind + "'");
  }
}

}  // namespace detail

inline Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Circuit c;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    detail::LineReader r(line, lineno);
    std::string op = r.word();
    if (!have_header) {
      if (op != "qubits") r.fail("expected 'qubits <w> ancillas <m>' header");
      Qubit w = r.qubit();
      if (r.word() != "ancillas") r.fail("expected 'ancillas'");
      Qubit m = r.qubit();
      if (!r.done()) r.fail("trailing tokens");
      try {
        c = Circuit(w, m);
      } catch (const Error& e) {
        r.fail(e.what());
      }
      have_header = true;
      continue;
    }
    Gate g;
    if (op == "reg") {
      std::string name = r.word();
      std::vector<Qubit> qs;
      while (true) {
        std::string w;
        try {
          w = r.word();
        } catch (const Error&) {
          break;
        }
        qs.push_back(r.qubit(w));
      }
      try {
        c.set_register(name, qs);
      } catch (const Error& e) {
        r.fail(e.what());
      }
      continue;
    } else if (op == "x") {
      g = Gate::x(r.qubit());
    } else if (op == "cx") {
      Qubit a = r.qubit();
      g = Gate::cnot(a, r.qubit());
    } else if (op == "ccx") {
      Qubit a = r.qubit(), b = r.qubit();
      g = Gate::toffoli(a, b, r.qubit());
    } else if (op == "swap") {
      Qubit a = r.qubit();
      g = Gate::swap(a, r.qubit());
    } else if (op == "rx" || op == "ry" || op == "rz" || op == "g") {
      detail::read_payload(r, g, op);
      g.kind = g.payload;
      g.payload = GateKind::X;
      g.target = r.qubit();
    } else if (op == "mcx") {
      g.kind = GateKind::MCX;
      r.controls_and_target(g);
    } else if (op == "mcu") {
      g.kind = GateKind::MCU;
      detail::read_payload(r, g, r.word());
      r.controls_and_target(g);
    } else {
      r.fail("unknown gate '" + op + "'");
    }
    if (op != "mcx" && op != "mcu" && !r.done()) r.fail("trailing tokens");
    try {
      c.add(std::move(g));
    } catch (const Error& e) {
      r.fail(e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "missing header");
  return c;
}

// State files: {"n": int, "entries": [{"q": "<MSB-first bits>", "re": x,
// "im": y}, ...]}.

inline std::string state_to_json(const SparseStateSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : spec.entries)
    j["entries"].push_back({{"q", e.q.to_string()},
                            {"re", e.amplitude.real()},
                            {"im", e.amplitude.imag()}});
  return j.dump(2) + "\n";
}

/// Parses a state file. Malformed JSON raises ParseError; a well-formed file
/// with invalid content raises the validation error of validate_spec.
inline SparseStateSpec state_from_json(const std::string& text) {
  std::vector<RawEntry> raw;
  std::size_t n = 0;
  try {
    auto j = nlohmann::json::parse(text);
    n = j.at("n").get<std::size_t>();
    for (const auto& e : j.at("entries")) {
      double im = e.contains("im") ? e.at("im").get<double>() : 0.0;
      raw.push_back({Complex(e.at("re").get<double>(), im),
                     e.at("q").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return validate_spec(raw, n);
}

}  // namespace sparseprep

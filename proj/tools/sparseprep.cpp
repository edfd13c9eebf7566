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

// sparseprep command line: synth, verify, permsynth, u2b, bench, random.
//
// Exit codes: 0 ok, 1 parse error, 2 validation error, 3 infeasible,
// 4 too wide to simulate, 5 fidelity below threshold.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparseprep/sparseprep.hpp"

namespace sp = sparseprep;

namespace {

constexpr double kFidelityThreshold = 1 - 1e-9;

int exit_code_for(sp::ErrorCode c) {
  switch (c) {
    case sp::ErrorCode::ParseError: return 1;
    case sp::ErrorCode::TooFewAncillas:
    case sp::ErrorCode::NoSparePoints: return 3;
    case sp::ErrorCode::WidthTooLarge: return 4;
    default: return 2;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sp::Error(sp::ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sp::Error(sp::ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SPARSEPREP_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::logic_error&) {
      throw sp::Error(sp::ErrorCode::ParseError, "bad SPARSEPREP_SEED");
    }
  }
  return 1;
}

void print_report(const sp::Circuit& c) {
  auto rep = sp::count_gates(c);
  std::cout << "width " << c.width() << "\nancillas " << c.ancilla_count()
            << "\nraw_gates " << c.size() << "\n";
  for (const auto& [k, v] : sp::count_gates(c, sp::CountPolicy::Raw).raw_by_kind)
    std::cout << "raw_" << k << " " << v << "\n";
  std::cout << "single_qubit " << rep.single_qubit << "\ncnot " << rep.cnot
            << "\nelementary_total " << rep.elementary_total << "\n";
}

std::string circuit_text(const sp::Circuit& c, bool expand) {
  return sp::circuit_to_text(expand ? sp::lower_circuit(c) : c);
}

// "a b c; d e" -> {{a, b, c}, {d, e}}. ',' also separates groups.
std::vector<std::vector<std::uint64_t>> parse_groups(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::vector<std::vector<std::uint64_t>> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::istringstream in(group);
    std::vector<std::uint64_t> g;
    std::string w;
    while (in >> w) {
      if (w.find_first_not_of("0123456789") != std::string::npos)
        throw sp::Error(sp::ErrorCode::ParseError, "bad point '" + w + "'");
      g.push_back(std::stoull(w));
    }
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

sp::Permutation parse_permutation(std::size_t n, const std::string& cycles,
                                  const std::string& pairs) {
  if (n == 0 || n > 64)
    throw sp::Error(sp::ErrorCode::BadWidth, "permsynth needs 1 <= n <= 64");
  const std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto check = [&](std::uint64_t x) {
    if (x > limit) throw sp::Error(sp::ErrorCode::InvalidPermutation, "point exceeds 2^n");
    return sp::BitString::from_uint(n, x);
  };
  if (!cycles.empty()) {
    auto cs = parse_groups(cycles);
    for (auto& c : cs)
      for (auto x : c) check(x);
    return sp::Permutation::from_cycles_uint(n, cs);
  }
  std::map<sp::BitString, sp::BitString> m;
  for (const auto& p : parse_groups(pairs)) {
    if (p.size() != 2)
      throw sp::Error(sp::ErrorCode::ParseError, "pairs are 'x y' separated by ';' or ','");
    if (!m.emplace(check(p[0]), check(p[1])).second)
      throw sp::Error(sp::ErrorCode::InvalidPermutation, "point mapped twice");
  }
  return sp::Permutation(n, m);
}

std::vector<sp::BenchCell> parse_grid(const std::string& text, std::uint64_t& seed,
                                      bool& verify) {
  std::vector<sp::BenchCell> grid;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("verify")) verify = j.at("verify").get<bool>();
    for (const auto& c : j.at("cells")) {
      sp::BenchCell cell;
      cell.n = c.at("n").get<std::size_t>();
      cell.d = c.at("d").get<std::size_t>();
      cell.m = c.contains("m") ? c.at("m").get<std::uint64_t>() : 0;
      cell.method = sp::parse_method(c.at("method").get<std::string>());
      grid.push_back(cell);
    }
  } catch (const nlohmann::json::exception& e) {
    throw sp::Error(sp::ErrorCode::ParseError, e.what());
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse quantum state preparation circuits"};
  app.require_subcommand(1);

  std::string in_path, out_path = "-", mode = "auto", circuit_path, state_path;
  std::uint64_t m = 0;
  bool expand = false, strict = false;
  auto* synth = app.add_subcommand("synth", "Synthesize a circuit for a state file");
  synth->add_option("--in", in_path, "State file (JSON)")->required();
  synth->add_option("--out", out_path, "Circuit file, '-' for stdout");
  synth->add_option("--mode", mode, "no-ancilla, ancilla or auto")
      ->check(CLI::IsMember({"no-ancilla", "ancilla", "auto"}));
  synth->add_option("--m", m, "Ancilla budget");
  synth->add_flag("--expand", expand, "Lower to x, cx, ccx, ry, rz");
  synth->add_flag("--strict", strict, "auto mode: use the asymptotic regime test");

  auto* verify = app.add_subcommand("verify", "Simulate a circuit against a state file");
  verify->add_option("--circuit", circuit_path)->required();
  verify->add_option("--state", state_path)->required();

  std::size_t n = 0, m_cap = 0, w = 0;
  std::string cycles, pairs;
  auto* perm = app.add_subcommand("permsynth", "Synthesize a basis permutation");
  perm->add_option("--n", n, "Number of qubits")->required();
  auto* cyc = perm->add_option("--cycles", cycles, "Cycles, e.g. \"0 1 5 7; 2 4\"");
  perm->add_option("--pairs", pairs, "Images, e.g. \"0 1; 1 0\"")->excludes(cyc);
  perm->add_option("--m-cap", m_cap, "Transpositions per batch (0 picks one)");
  perm->add_option("--out", out_path);
  perm->add_flag("--expand", expand);

  auto* u2b = app.add_subcommand("u2b", "Emit the unary to binary converter");
  u2b->add_option("--w", w, "Binary width")->required()->check(CLI::Range(1, 20));
  u2b->add_option("--out", out_path);
  u2b->add_flag("--expand", expand);

  std::string grid_path;
  unsigned threads = 0;
  auto* bench = app.add_subcommand("bench", "Run a gate count grid");
  bench->add_option("--grid", grid_path, "Grid file (JSON)")->required();
  bench->add_option("--out", out_path, "CSV output, '-' for stdout");
  bench->add_option("--threads", threads);

  std::size_t d = 0;
  auto* random = app.add_subcommand("random", "Write a random sparse state file");
  random->add_option("--n", n)->required();
  random->add_option("--d", d)->required();
  random->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*synth) {
      auto spec = sp::state_from_json(read_file(in_path));
      sp::Circuit c;
      if (mode == "no-ancilla") {
        c = sp::synth_no_ancilla(spec);
      } else if (mode == "ancilla") {
        c = sp::synth_with_ancilla(spec, m);
      } else {
        auto res = sp::synth_auto_detailed(spec, m, strict);
        std::cout << "path " << (res.used_ancilla ? "ancilla" : "no-ancilla")
                  << "\nno_ancilla_count " << res.no_ancilla_count
                  << "\nancilla_count " << res.ancilla_count << "\n";
        c = std::move(res.circuit);
      }
      write_output(out_path, circuit_text(c, expand));
      if (out_path != "-") print_report(c);
      return 0;
    }
    if (*verify) {
      auto c = sp::circuit_from_text(read_file(circuit_path));
      auto spec = sp::state_from_json(read_file(state_path));
      if (c.width() > sp::kMaxSimWidth) {
        std::cerr << "circuit width " << c.width() << " exceeds "
                  << sp::kMaxSimWidth << "\n";
        return 4;
      }
      if (c.width() < spec.n)
        throw sp::Error(sp::ErrorCode::WidthMismatch, "circuit narrower than state");
      auto out = sp::apply(c, sp::StateVector::basis(c.width(), 0));
      double f = sp::fidelity(out, sp::StateVector::from_spec(spec, c.width()));
      double res = sp::ancilla_residual(out, static_cast<sp::Qubit>(spec.n));
      std::printf("fidelity %.15f\nancilla_residual %.3e\n", f, res);
      bool ok = f >= kFidelityThreshold && res < 1e-10;
      std::cout << (ok ? "ok" : "below threshold") << "\n";
      return ok ? 0 : 5;
    }
    if (*perm) {
      auto sigma = parse_permutation(n, cycles, pairs);
      auto c = sp::synth_permutation(sigma, n, m_cap);
      write_output(out_path, circuit_text(c, expand));
      if (out_path != "-") print_report(c);
      return 0;
    }
    if (*u2b) {
      auto c = sp::synth_unary_to_binary(w);
      write_output(out_path, circuit_text(c, expand));
      if (out_path != "-") print_report(c);
      return 0;
    }
    if (*bench) {
      sp::BenchOptions opt;
      opt.threads = threads;
      auto grid = parse_grid(read_file(grid_path), opt.seed, opt.verify);
      // The environment seed wins over the grid file's.
      if (std::getenv("SPARSEPREP_SEED")) opt.seed = default_seed();
      auto recs = sp::run_bench(grid, opt);
      write_output(out_path, sp::bench_csv(recs));
      std::ostream& log = out_path == "-" ? std::cerr : std::cout;
      for (const auto& [method, fc] : sp::fitted_constants(recs))
        log << "C_" << method << " " << fc.max_ratio << " spread "
                  << fc.spread() << " cells " << fc.cells << "\n";
      return 0;
    }
    if (*random) {
      std::mt19937_64 rng(default_seed());
      write_output(out_path, sp::state_to_json(sp::random_spec(n, d, rng)));
      return 0;
    }
  } catch (const sp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return 0;
}

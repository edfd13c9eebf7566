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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sparseprep/core.hpp"
#include "sparseprep/gate_count.hpp"
#include "sparseprep/mcx.hpp"
#include "sparseprep/simulator.hpp"
#include "sparseprep/sqsp.hpp"
#include "sparseprep/sqsp_ancilla.hpp"

namespace sparseprep {

// ---------------------------------------------------------------------------
// Random sparse states.

/// d distinct uniformly random n-bit strings with random complex amplitudes.
inline SparseStateSpec random_spec(std::size_t n, std::size_t d,
                                   std::mt19937_64& rng) {
  if (n < 63 && d > (std::uint64_t{1} << n))
    throw Error(ErrorCode::BadWidth, "d exceeds 2^n");
  std::set<BitString> seen;
  std::vector<SparseEntry> entries;
  std::normal_distribution<double> gauss;
  while (entries.size() < d) {
    BitString q(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng() & 1) q.set(i);
    if (!seen.insert(q).second) continue;
    entries.push_back({Complex(gauss(rng), gauss(rng)), q});
  }
  double norm = 0;
  for (const auto& e : entries) norm += std::norm(e.amplitude);
  norm = std::sqrt(norm);
  for (auto& e : entries) e.amplitude /= norm;
  return validate_spec(std::move(entries), n);
}

// ---------------------------------------------------------------------------
// Naive comparison circuit: one full-width transposition per moved point.

namespace detail {

inline void append_transposition(Circuit& out, BitString a, BitString b) {
  const std::size_t n = a.width();
  std::size_t k = 0;
  while (a.test(k) == b.test(k)) ++k;
  if (a.test(k)) std::swap(a, b);
  std::vector<Gate> fan;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k && a.test(i) != b.test(i))
      fan.push_back(Gate::cnot(static_cast<Qubit>(k), static_cast<Qubit>(i)));
  for (const auto& g : fan) out.add(g);
  std::vector<Control> ctl;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k) ctl.push_back({static_cast<Qubit>(i), a.test(i)});
  out.add(Gate::mcx(ctl, static_cast<Qubit>(k)));
  for (auto it = fan.rbegin(); it != fan.rend(); ++it) out.add(*it);
}

}  // namespace detail

/// Dense prep of the slot state followed by one transposition circuit per
/// transposition of sigma; each holds an (n-1)-controlled X.
inline Circuit naive_baseline(const SparseStateSpec& spec) {
  const std::size_t n = spec.n;
  Circuit out(static_cast<Qubit>(n));
  if (spec.d() == 1) return synth_no_ancilla(spec);
  SigmaPlan plan = build_sigma(spec);
  const std::size_t k = ceil_log2(spec.d());
  DenseTarget dense{k, std::vector<Complex>(std::size_t{1} << k, 0.0)};
  for (const auto& e : spec.entries)
    dense.amps[plan.compact_index.at(e.q)] = e.amplitude;
  std::vector<Qubit> low;
  for (std::size_t i = 0; i < k; ++i) low.push_back(static_cast<Qubit>(i));
  out.append(synth_dense(dense), low);
  for (const auto& [a, b] : plan.transpositions.pairs)
    detail::append_transposition(out, a, b);
  return out;
}

/**
 * Expanded count of the naive circuit with every full-width MCX priced as if
 * one borrowed qubit were available (linear cost). This undercounts the
 * naive circuit, which has no spare qubit.
 */
inline std::uint64_t naive_baseline_count(const Circuit& naive) {
  std::uint64_t total = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> memo;
  Circuit rest(naive.width());
  for (const auto& g : naive.gates()) {
    if (g.kind != GateKind::MCX || g.controls.size() <= 2) {
      rest.add(g);
      continue;
    }
    std::size_t k = g.controls.size(), neg = detail::negative_count(g);
    auto key = std::make_pair(k, neg);
    auto it = memo.find(key);
    if (it == memo.end()) {
      std::vector<Control> ctl;
      for (std::size_t i = 0; i < k; ++i)
        ctl.push_back({static_cast<Qubit>(i), i >= neg});
      Circuit e = expand_mcx({ctl, static_cast<Qubit>(k),
                              {static_cast<Qubit>(k + 1)},
                              static_cast<Qubit>(k + 2)});
      it = memo.emplace(key, count_gates(e, CountPolicy::ExpandToffoli)
                                 .elementary_total)
               .first;
    }
    total += it->second;
  }
  return total + count_gates(rest).elementary_total;
}

// ---------------------------------------------------------------------------
// Benchmark grid.

enum class BenchMethod { NoAncilla, Ancilla, NaiveBaseline };

inline std::string method_name(BenchMethod m) {
  switch (m) {
    case BenchMethod::NoAncilla: return "no_ancilla";
    case BenchMethod::Ancilla: return "ancilla";
    case BenchMethod::NaiveBaseline: return "naive_baseline";
  }
  return "?";
}

inline BenchMethod parse_method(const std::string& s) {
  if (s == "no_ancilla") return BenchMethod::NoAncilla;
  if (s == "ancilla") return BenchMethod::Ancilla;
  if (s == "naive_baseline") return BenchMethod::NaiveBaseline;
  throw Error(ErrorCode::ParseError, "unknown method '" + s + "'");
}

struct BenchCell {
  std::size_t n = 0, d = 0;
  std::uint64_t m = 0;
  BenchMethod method = BenchMethod::NoAncilla;
};

struct BenchRecord {
  BenchCell cell;
  std::string status = "ok";
  std::uint64_t raw_count = 0;
  std::uint64_t expanded_count = 0;
  std::size_t r = 0;
  std::size_t width = 0;
  double bound = 0;
  double ratio = 0;
  /// Present only when the circuit was simulated.
  std::optional<bool> sim_verified;
  double wall_time_ms = 0;
};

/// n*d/log2(n) + n for the ancilla-free paths; n*d/log2(m+n) + n*2^r for
/// the ancilla path.
inline double bench_bound(const BenchCell& c, std::size_t r) {
  double n = static_cast<double>(c.n), d = static_cast<double>(c.d);
  if (c.method == BenchMethod::Ancilla)
    return n * d / std::log2(static_cast<double>(c.m) + n) +
           n * std::ldexp(1.0, static_cast<int>(r));
  return n * d / std::log2(std::max(2.0, n)) + n;
}

struct BenchOptions {
  std::uint64_t seed = 1;
  bool verify = true;
  unsigned threads = 0;
};

inline BenchRecord run_bench_cell(const BenchCell& cell, std::uint64_t seed,
                                  bool verify) {
  BenchRecord rec;
  rec.cell = cell;
  auto start = std::chrono::steady_clock::now();
  try {
    std::mt19937_64 rng(seed);
    SparseStateSpec spec = random_spec(cell.n, cell.d, rng);
    Circuit c;
    if (cell.method == BenchMethod::Ancilla) {
      auto r = choose_r(cell.n, cell.m);
      if (!r) {
        rec.status = "infeasible";
        return rec;
      }
      rec.r = *r;
      c = synth_with_ancilla(spec, cell.m);
    } else if (cell.method == BenchMethod::NoAncilla) {
      c = synth_no_ancilla(spec);
    } else {
      c = naive_baseline(spec);
    }
    rec.width = c.width();
    rec.raw_count = c.size();
    rec.expanded_count = cell.method == BenchMethod::NaiveBaseline
                             ? naive_baseline_count(c)
                             : count_gates(c).elementary_total;
    rec.bound = bench_bound(cell, rec.r);
    rec.ratio = static_cast<double>(rec.expanded_count) / rec.bound;
    if (verify && c.width() <= kMaxSimWidth) {
      auto out = apply(c, StateVector::basis(c.width(), 0));
      double f = fidelity(out, StateVector::from_spec(spec, c.width()));
      rec.sim_verified = f >= 1 - 1e-9 && ancilla_residual(out, spec.n) < 1e-10;
    }
  } catch (const Error& e) {
    rec.status = std::string("error:") + error_code_name(e.code());
  }
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rec;
}

/// Runs every cell on a worker pool; records come back in grid order. Cell i
/// uses seed + i, so results do not depend on scheduling.
inline std::vector<BenchRecord> run_bench(const std::vector<BenchCell>& grid,
                                          const BenchOptions& opt = {}) {
  std::vector<BenchRecord> out(grid.size());
  unsigned threads = opt.threads ? opt.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(
                                            std::max<std::size_t>(1, grid.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < grid.size();)
      out[i] = run_bench_cell(grid[i], opt.seed + i, opt.verify);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline std::string bench_csv_header() {
  return "n,d,m,method,status,r,width,raw_count,expanded_count,bound,ratio,"
         "sim_verified,wall_time_ms\n";
}

inline std::string bench_csv(const std::vector<BenchRecord>& recs) {
  std::ostringstream s;
  s << bench_csv_header();
  for (const auto& r : recs) {
    s << r.cell.n << ',' << r.cell.d << ',' << r.cell.m << ','
      << method_name(r.cell.method) << ',' << r.status << ',' << r.r << ','
      << r.width << ',' << r.raw_count << ',' << r.expanded_count << ','
      << r.bound << ',' << r.ratio << ',';
    if (r.sim_verified) s << (*r.sim_verified ? "true" : "false");
    s << ',' << r.wall_time_ms << '\n';
  }
  return s.str();
}

struct FittedConstant {
  double max_ratio = 0;
  double min_ratio = 0;
  std::size_t cells = 0;
  double spread() const { return min_ratio > 0 ? max_ratio / min_ratio : 0; }
};

/// Per method, the largest and smallest count/bound ratio over ok cells.
inline std::map<std::string, FittedConstant> fitted_constants(
    const std::vector<BenchRecord>& recs) {
  std::map<std::string, FittedConstant> out;
  for (const auto& r : recs) {
    if (r.status != "ok") continue;
    auto& f = out[method_name(r.cell.method)];
    if (f.cells == 0) {
      f.max_ratio = f.min_ratio = r.ratio;
    } else {
      f.max_ratio = std::max(f.max_ratio, r.ratio);
      f.min_ratio = std::min(f.min_ratio, r.ratio);
    }
    ++f.cells;
  }
  return out;
}

}  // namespace sparseprep

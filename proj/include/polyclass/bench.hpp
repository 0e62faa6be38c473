#pragma once

// Canonization benchmark over a generator family: node count, canonical
// text length and mean canonization time per dimension.

#include <chrono>
#include <cstddef>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polyclass/canon.hpp"
#include "polyclass/error.hpp"
#include "polyclass/generators.hpp"
#include "polyclass/graph.hpp"

namespace polyclass {

enum class BenchFamily { cyclic, nash, katsura };

inline BenchFamily parse_bench_family(std::string_view name) {
  if (name == "cyclic") return BenchFamily::cyclic;
  if (name == "nash") return BenchFamily::nash;
  if (name == "katsura") return BenchFamily::katsura;
  throw InvalidArgument("unknown benchmark family '" + std::string(name) + "' (expected cyclic, nash or katsura)");
}

inline PolySystem generate(BenchFamily family, std::size_t n) {
  switch (family) {
    case BenchFamily::cyclic: return gen_cyclic(n);
    case BenchFamily::nash: return gen_nash(n);
    case BenchFamily::katsura: return gen_katsura(n);
  }
  throw InvalidArgument("unknown benchmark family");
}

struct BenchRow {
  std::size_t n = 0;
  std::optional<double> mean_time_s;  // empty on timeout or in nodes-only runs
  std::size_t nodes = 0;
  std::optional<std::size_t> chars;
  bool timed_out = false;
};

struct BenchOptions {
  std::size_t trials = 3;
  std::optional<std::chrono::milliseconds> row_timeout;
  bool nodes_only = false;  // skip canonization entirely
  bool parallel = false;    // only honored together with nodes_only
};

// Times encode + canonical labeling; generation is outside the clock.
inline BenchRow bench_row(BenchFamily family, std::size_t n, const BenchOptions& opts) {
  const SupportFamily fam = support_family(generate(family, n));
  BenchRow row;
  row.n = n;
  row.nodes = encode_partitioned(fam).nverts;
  if (opts.nodes_only) return row;
  if (opts.trials == 0) throw InvalidArgument("trials must be at least 1");

  double total = 0;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    CanonOptions copts;
    const auto start = std::chrono::steady_clock::now();
    if (opts.row_timeout) copts.deadline = start + *opts.row_timeout;
    try {
      const Labeling l = canonical_labeling(encode_partitioned(fam), copts);
      total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.chars = l.form.text.size();
    } catch (const DeadlineExceeded&) {
      row.timed_out = true;
      return row;
    }
  }
  row.mean_time_s = total / static_cast<double>(opts.trials);
  return row;
}

inline std::vector<BenchRow> run_bench(BenchFamily family, const std::vector<std::size_t>& n_values,
                                       const BenchOptions& opts = {}) {
  std::vector<BenchRow> rows;
  if (opts.parallel && opts.nodes_only) {
    std::vector<std::future<BenchRow>> jobs;
    for (std::size_t n : n_values) jobs.push_back(std::async(std::launch::async, bench_row, family, n, opts));
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
  }
  for (std::size_t n : n_values) rows.push_back(bench_row(family, n, opts));
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,mean_time_s,nodes,chars\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',';
    if (r.timed_out) {
      out << "timeout";
    } else if (r.mean_time_s) {
      std::ostringstream t;
      t.precision(6);
      t << std::fixed << *r.mean_time_s;
      out << t.str();
    }
    out << ',' << r.nodes << ',';
    if (r.chars) out << *r.chars;
    out << '\n';
  }
}

// Rows where the mean time dropped below the previous row. Informational:
// small timings are noisy.
inline std::vector<std::string> time_trend_warnings(const std::vector<BenchRow>& rows) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].mean_time_s && rows[i - 1].mean_time_s && *rows[i].mean_time_s < *rows[i - 1].mean_time_s)
      out.push_back("time decreased from n=" + std::to_string(rows[i - 1].n) + " to n=" + std::to_string(rows[i].n));
  }
  return out;
}

}  // namespace polyclass

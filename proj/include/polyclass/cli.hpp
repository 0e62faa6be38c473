#pragma once

// Command-line front end. dispatch() is the whole program minus process
// setup, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 usage, 2 input error, 3 internal error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyclass/bench.hpp"
#include "polyclass/canon.hpp"
#include "polyclass/error.hpp"
#include "polyclass/generators.hpp"
#include "polyclass/graph.hpp"
#include "polyclass/oracle.hpp"
#include "polyclass/poly.hpp"
#include "polyclass/service.hpp"
#include "polyclass/store.hpp"
#include "polyclass/version.hpp"

namespace polyclass::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

inline constexpr const char* kDefaultDataDir = "polyclass-data";

// Unreadable or missing input file.
class InputError : public Error {
public:
  using Error::Error;
};

inline std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

inline PolySystem read_system(const std::string& path) {
  try {
    return parse_system(read_input(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

inline std::string data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("POLYCLASS_DATA"); env && *env) return env;
  return kDefaultDataDir;
}

inline std::string perm_string(const std::vector<std::size_t>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

inline nlohmann::json canon_json(const SystemCanon& c) {
  return {{"key", c.form.key},
          {"counts", counts_json(c.form)},
          {"graph_length", c.form.text.size()},
          {"variable_generators", c.gens.generators}};
}

inline void print_canon(std::ostream& out, const PolySystem& sys, const SystemCanon& c) {
  const auto& k = c.form.counts;
  std::size_t nodes = 0;
  for (const auto& cell : parse_canonical_header(c.form.text).cells) nodes += cell.second;
  out << "key: " << c.form.key << '\n'
      << "variables: " << sys.nvars() << ", equations: " << sys.npolys() << '\n'
      << "nodes: " << nodes << " (variable " << k.n_node_variable << ", monomial " << k.n_node_monomial
      << ", equation " << k.n_node_equation << ", degree " << k.n_node_degree << ")\n"
      << "n_degree: " << c.form.n_degree << ", degrees: " << join_degrees(c.form.degrees) << '\n'
      << "graph_length: " << c.form.text.size() << '\n'
      << "variable generators: " << c.gens.generators.size() << '\n';
  for (const auto& g : c.gens.generators) {
    out << "  ";
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != i) out << sys.vars[i] << "->" << sys.vars[g[i]] << ' ';
    out << perm_string(g) << '\n';
  }
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify polynomial systems by the isomorphism class of their support sets", "polyclass"};
  app.set_version_flag("--version", std::string("polyclass ") + std::string(kVersion) + " (canonical format " +
                                        std::string(kCanonicalFormatVersion) + ")");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  // canon
  auto* canon = app.add_subcommand("canon", "Print the canonical key, node counts and variable symmetries");
  std::string canon_file;
  bool canon_text = false;
  bool canon_no_prune = false;
  canon->add_option("file", canon_file, "System file (.pols), '-' for stdin")->required();
  canon->add_flag("--text", canon_text, "Also print the canonical form text");
  canon->add_flag("--no-prune", canon_no_prune, "Disable automorphism pruning");

  // iso
  auto* iso = app.add_subcommand("iso", "Decide whether two systems have isomorphic support families");
  std::string iso_a, iso_b;
  bool iso_oracle = false;
  iso->add_option("a", iso_a, "First system")->required();
  iso->add_option("b", iso_b, "Second system")->required();
  iso->add_flag("--oracle", iso_oracle, "Cross-check with the brute-force oracle");

  // graph-iso
  auto* giso = app.add_subcommand("graph-iso", "Decide plain graph isomorphism through incidence polynomials");
  std::string giso_a, giso_b;
  bool giso_oracle = false;
  giso->add_option("a", giso_a, "First graph dump")->required();
  giso->add_option("b", giso_b, "Second graph dump")->required();
  giso->add_flag("--oracle", giso_oracle, "Cross-check with the brute-force oracle");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark or random system");
  std::string gen_family;
  std::size_t gen_n = 0;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  std::size_t gen_eqs = 0, gen_terms = 3, gen_degree = 3;
  gen->add_option("family", gen_family, "cyclic, nash, katsura or random")
      ->required()
      ->check(CLI::IsMember({"cyclic", "nash", "katsura", "random"}));
  gen->add_option("n", gen_n, "Dimension (number of variables for random)")->required();
  gen->add_option("--seed", gen_seed, "Coefficient/fuzz seed");
  gen->add_option("-o,--output", gen_out, "Write to file instead of stdout");
  gen->add_option("--eqs", gen_eqs, "random: number of equations (default n)");
  gen->add_option("--terms", gen_terms, "random: maximum terms per equation");
  gen->add_option("--degree", gen_degree, "random: maximum total degree");

  // bench
  auto* bench = app.add_subcommand("bench", "Time canonization over a range of dimensions");
  std::string bench_family, bench_csv;
  std::size_t bench_from = 0, bench_to = 0, bench_step = 1, bench_trials = 3;
  double bench_timeout = 0;
  bool bench_parallel = false, bench_nodes_only = false;
  bench->add_option("family", bench_family, "cyclic, nash or katsura")
      ->required()
      ->check(CLI::IsMember({"cyclic", "nash", "katsura"}));
  bench->add_option("--from", bench_from, "First dimension")->required();
  bench->add_option("--to", bench_to, "Last dimension (inclusive)")->required();
  bench->add_option("--step", bench_step, "Dimension step")->check(CLI::PositiveNumber);
  bench->add_option("--trials", bench_trials, "Trials per row")->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "Write CSV here (default stdout)");
  bench->add_option("--timeout", bench_timeout, "Per-trial timeout in seconds (0 = none)");
  bench->add_flag("--nodes-only", bench_nodes_only, "Only count nodes, no timing");
  bench->add_flag("--parallel", bench_parallel, "Run rows concurrently (with --nodes-only)");

  // db
  auto* db = app.add_subcommand("db", "Store and look up canonical forms");
  db->require_subcommand(1);
  std::string db_dir;
  db->add_option("--data", db_dir, "Data directory (default $POLYCLASS_DATA or ./polyclass-data)");
  auto* db_insert = db->add_subcommand("insert", "Insert a system's isomorphism class");
  std::string db_insert_file, db_note;
  db_insert->add_option("file", db_insert_file, "System file")->required();
  db_insert->add_option("--note", db_note, "Free-text reference stored with the record");
  auto* db_lookup = db->add_subcommand("lookup", "Look up a system's isomorphism class");
  std::string db_lookup_file;
  db_lookup->add_option("file", db_lookup_file, "System file")->required();
  auto* db_stats = db->add_subcommand("stats", "Summarize the store");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP classification service");
  std::string serve_addr = "127.0.0.1:8080", serve_dir, serve_tokens;
  double serve_deadline = 30;
  std::size_t serve_workers = 0;
  serve->add_option("--addr", serve_addr, "HOST:PORT to listen on");
  serve->add_option("--data", serve_dir, "Data directory (default $POLYCLASS_DATA or ./polyclass-data)");
  serve->add_option("--tokens", serve_tokens, "File of accepted bearer tokens, one per line");
  serve->add_option("--deadline", serve_deadline, "Canonization deadline per request, seconds");
  serve->add_option("--workers", serve_workers, "Worker threads (default: core count)");

  std::vector<std::string> argv_store{"polyclass"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*canon) {
      const PolySystem sys = read_system(canon_file);
      CanonOptions opts;
      opts.prune = !canon_no_prune;
      const SystemCanon c = canonical_form_of_system(sys, opts);
      if (json) {
        auto j = canon_json(c);
        if (canon_text) j["text"] = c.form.text;
        out << j.dump() << '\n';
      } else {
        print_canon(out, sys, c);
        if (canon_text) out << c.form.text << '\n';
      }
      return kExitOk;
    }

    if (*iso) {
      const PolySystem a = read_system(iso_a);
      const PolySystem b = read_system(iso_b);
      const bool verdict = systems_isomorphic(a, b);
      std::optional<bool> oracle_verdict;
      if (iso_oracle)
        oracle_verdict = oracle::brute_force_family_isomorphic(support_family(a), support_family(b));
      auto word = [](bool v) { return v ? "isomorphic" : "not isomorphic"; };
      if (json) {
        nlohmann::json j{{"isomorphic", verdict}};
        if (oracle_verdict) j["oracle"] = *oracle_verdict;
        out << j.dump() << '\n';
      } else if (oracle_verdict) {
        out << "canon: " << word(verdict) << '\n' << "oracle: " << word(*oracle_verdict) << '\n';
      } else {
        out << word(verdict) << '\n';
      }
      if (oracle_verdict && *oracle_verdict != verdict) {
        err << "error: canonical form and oracle disagree\n";
        return kExitInternal;
      }
      return kExitOk;
    }

    if (*giso) {
      const EncodedGraph a = parse_graph_dump(read_input(giso_a));
      const EncodedGraph b = parse_graph_dump(read_input(giso_b));
      const bool verdict = graphs_isomorphic_via_poly(a, b);
      std::optional<bool> oracle_verdict;
      if (giso_oracle) oracle_verdict = oracle::brute_force_graph_isomorphic(a, b);
      auto word = [](bool v) { return v ? "isomorphic" : "not isomorphic"; };
      if (json) {
        nlohmann::json j{{"isomorphic", verdict}};
        if (oracle_verdict) j["oracle"] = *oracle_verdict;
        out << j.dump() << '\n';
      } else if (oracle_verdict) {
        out << "via polynomial: " << word(verdict) << '\n' << "oracle: " << word(*oracle_verdict) << '\n';
      } else {
        out << word(verdict) << '\n';
      }
      if (oracle_verdict && *oracle_verdict != verdict) {
        err << "error: polynomial reduction and oracle disagree\n";
        return kExitInternal;
      }
      return kExitOk;
    }

    if (*gen) {
      PolySystem sys;
      if (gen_family == "cyclic") {
        sys = gen_cyclic(gen_n);
      } else if (gen_family == "nash") {
        sys = gen_nash(gen_n, gen_seed.value_or(kDefaultNashSeed));
      } else if (gen_family == "katsura") {
        sys = gen_katsura(gen_n);
      } else {
        sys = gen_random(gen_n, gen_eqs ? gen_eqs : gen_n, gen_terms, gen_degree, gen_seed.value_or(1));
      }
      const std::string text = format_system(sys);
      if (gen_out.empty()) {
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
      } else {
        std::ofstream f(gen_out);
        if (!(f << text)) throw Error("cannot write " + gen_out);
        if (json) out << nlohmann::json{{"file", gen_out}, {"bytes", text.size()}}.dump() << '\n';
      }
      return kExitOk;
    }

    if (*bench) {
      if (bench_to < bench_from) throw InvalidArgument("--to must not be smaller than --from");
      std::vector<std::size_t> ns;
      for (std::size_t n = bench_from; n <= bench_to; n += bench_step) ns.push_back(n);
      BenchOptions opts;
      opts.trials = bench_trials;
      opts.nodes_only = bench_nodes_only;
      opts.parallel = bench_parallel;
      if (bench_timeout > 0)
        opts.row_timeout = std::chrono::milliseconds(static_cast<long long>(bench_timeout * 1000));
      const auto rows = run_bench(parse_bench_family(bench_family), ns, opts);
      if (bench_csv.empty()) {
        write_bench_csv(out, rows);
      } else {
        std::ofstream f(bench_csv);
        write_bench_csv(f, rows);
        if (!f) throw Error("cannot write " + bench_csv);
      }
      for (const auto& w : time_trend_warnings(rows)) err << "warning: " << w << '\n';
      return kExitOk;
    }

    if (*db) {
      Store store(data_dir(db_dir));
      if (*db_insert) {
        const PolySystem sys = read_system(db_insert_file);
        const SystemCanon c = canonical_form_of_system(sys);
        const InsertResult r = store.insert(c.form, sys, db_note);
        if (json) {
          out << nlohmann::json{{"key", r.key}, {"created", r.created}}.dump() << '\n';
        } else {
          out << (r.created ? "inserted " : "exists ") << r.key << '\n';
        }
        return kExitOk;
      }
      if (*db_lookup) {
        const SystemCanon c = canonical_form_of_system(read_system(db_lookup_file));
        const auto rec = store.lookup(c.form);
        if (json) {
          nlohmann::json j{{"key", c.form.key}, {"found", rec.has_value()}};
          if (rec) j["record"] = record_json(*rec);
          out << j.dump() << '\n';
        } else if (rec) {
          out << "found " << rec->key << '\n';
          if (!rec->note.empty()) out << "note: " << rec->note << '\n';
          out << "system: " << (store.dir() / rec->poly_filename).string() << '\n';
        } else {
          out << "not found " << c.form.key << '\n';
        }
        return kExitOk;
      }
      if (*db_stats) {
        const StoreStats s = store.stats();
        if (json) {
          nlohmann::json hist = nlohmann::json::object();
          for (auto [k, v] : s.by_equation_count) hist[std::to_string(k)] = v;
          out << nlohmann::json{{"records", s.records}, {"bytes_on_disk", s.bytes_on_disk}, {"by_equations", hist}}
                     .dump()
              << '\n';
        } else {
          out << "records: " << s.records << '\n' << "bytes on disk: " << s.bytes_on_disk << '\n';
          for (auto [k, v] : s.by_equation_count) out << "  equations=" << k << ": " << v << '\n';
        }
        return kExitOk;
      }
    }

    if (*serve) {
      const auto colon = serve_addr.rfind(':');
      if (colon == std::string::npos) throw InvalidArgument("--addr must be HOST:PORT");
      const std::string host = serve_addr.substr(0, colon);
      const int port = std::stoi(serve_addr.substr(colon + 1));
      Store store(data_dir(serve_dir));
      ServiceConfig cfg;
      cfg.deadline = std::chrono::milliseconds(static_cast<long long>(serve_deadline * 1000));
      if (!serve_tokens.empty()) cfg.tokens = load_tokens(serve_tokens);
      if (serve_workers) cfg.workers = serve_workers;
      Service service(store, cfg);
      err << "listening on " << host << ':' << port << ", data " << store.dir().string() << '\n';
      if (!service.listen(host, port)) {
        err << "error: cannot listen on " << serve_addr << '\n';
        return kExitInternal;
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace polyclass::cli

#pragma once

// Persistent store of canonical forms.
//
// Layout of a data directory:
//   index.sqlite                 one row per isomorphism class
//   objects/<k0k1>/<k2..>.graph  canonical form text, named by its key
//   objects/<k0k1>/<k2..>.pols   representative system as submitted
//
// The index is sorted on the node counts, then (n_degree, degrees), then
// graph_length, so a lookup narrows through a single B-tree descent before
// the final comparison on the full canonical text.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <sqlite3.h>

#include "polyclass/canon.hpp"
#include "polyclass/digest.hpp"
#include "polyclass/error.hpp"
#include "polyclass/poly.hpp"

namespace polyclass {

struct DbRecord {
  std::int64_t n_node_variable = 0;
  std::int64_t n_node_monomial = 0;
  std::int64_t n_node_equation = 0;
  std::int64_t n_node_degree = 0;
  std::int64_t n_degree = 0;
  std::string degrees;  // comma separated, ascending
  std::int64_t graph_length = 0;
  std::string graph_filename;
  std::string poly_filename;
  std::string note;
  std::string key;
  std::string created_at;  // UTC, ISO 8601

  friend bool operator==(const DbRecord&, const DbRecord&) = default;
};

struct InsertResult {
  std::string key;
  bool created = false;
};

struct StoreStats {
  std::size_t records = 0;
  std::uintmax_t bytes_on_disk = 0;
  std::map<std::int64_t, std::size_t> by_equation_count;  // n_node_equation -> records
};

inline std::string join_degrees(const std::vector<Exponent>& degrees) {
  std::string out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out += (i ? "," : "") + std::to_string(degrees[i]);
  return out;
}

namespace detail {

struct SqliteCloser {
  void operator()(sqlite3* db) const { sqlite3_close_v2(db); }
};
struct StmtCloser {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};
using SqliteHandle = std::unique_ptr<sqlite3, SqliteCloser>;
using Stmt = std::unique_ptr<sqlite3_stmt, StmtCloser>;

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StoreError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so readers never observe a partial object.
inline void write_file_atomic(const std::filesystem::path& p, std::string_view data) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw StoreError("cannot create " + p.parent_path().string() + ": " + ec.message());
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw StoreError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw StoreError("cannot rename " + tmp + ": " + ec.message());
}

}  // namespace detail

class Store {
public:
  explicit Store(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_ / "objects", ec);
    if (ec) throw StoreError("cannot create data directory " + dir_.string() + ": " + ec.message());
    sqlite3* raw = nullptr;
    const int rc = sqlite3_open_v2((dir_ / "index.sqlite").c_str(), &raw,
                                   SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX, nullptr);
    db_.reset(raw);
    if (rc != SQLITE_OK) throw StoreError("cannot open index: " + std::string(sqlite3_errstr(rc)));
    sqlite3_busy_timeout(db_.get(), 5000);
    exec("PRAGMA journal_mode=WAL; PRAGMA synchronous=NORMAL;");
    exec(R"(
      CREATE TABLE IF NOT EXISTS systems (
        n_node_variable INTEGER NOT NULL,
        n_node_monomial INTEGER NOT NULL,
        n_node_equation INTEGER NOT NULL,
        n_node_degree   INTEGER NOT NULL,
        n_degree        INTEGER NOT NULL,
        degrees         TEXT    NOT NULL,
        graph_length    INTEGER NOT NULL,
        graph_filename  TEXT    NOT NULL,
        poly_filename   TEXT    NOT NULL,
        note            TEXT    NOT NULL,
        key             TEXT    PRIMARY KEY,
        created_at      TEXT    NOT NULL);
      CREATE INDEX IF NOT EXISTS systems_narrowing ON systems (
        n_node_variable, n_node_monomial, n_node_equation, n_node_degree,
        n_degree, degrees, graph_length);
      CREATE TABLE IF NOT EXISTS meta (name TEXT PRIMARY KEY, value TEXT NOT NULL);
    )");
    check_meta("digest", std::string(kDigestAlgorithm));
    check_meta("format", std::string(kCanonicalFormatVersion));
  }

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  InsertResult insert(const CanonicalForm& form, const PolySystem& sys, std::string_view note = {}) {
    std::unique_lock lock(mu_);
    if (auto hit = lookup_locked(form)) return {hit->key, false};
    if (auto existing = get_locked(form.key)) {
      // Same key but the narrowing columns or the text disagree.
      throw CorruptionError("record " + form.key + " does not match its canonical form");
    }

    DbRecord r = record_for(form);
    r.poly_filename = object_name(form.key, ".pols");
    r.note = std::string(note);
    r.created_at = detail::utc_now();
    detail::write_file_atomic(dir_ / r.graph_filename, form.text);
    detail::write_file_atomic(dir_ / r.poly_filename, format_system(sys));

    auto stmt = prepare(
        "INSERT INTO systems (n_node_variable, n_node_monomial, n_node_equation, n_node_degree, n_degree, "
        "degrees, graph_length, graph_filename, poly_filename, note, key, created_at) "
        "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
    bind_narrowing(stmt.get(), r);
    bind_text(stmt.get(), 8, r.graph_filename);
    bind_text(stmt.get(), 9, r.poly_filename);
    bind_text(stmt.get(), 10, r.note);
    bind_text(stmt.get(), 11, r.key);
    bind_text(stmt.get(), 12, r.created_at);
    step_done(stmt.get());
    return {r.key, true};
  }

  std::optional<DbRecord> lookup(const CanonicalForm& form) const {
    std::shared_lock lock(mu_);
    return lookup_locked(form);
  }

  // Direct access by key, without the narrowing descent.
  std::optional<DbRecord> get(std::string_view key) const {
    std::shared_lock lock(mu_);
    return get_locked(key);
  }

  std::string read_graph(const DbRecord& r) const { return verified_graph(r); }
  std::string read_poly(const DbRecord& r) const { return detail::read_file(dir_ / r.poly_filename); }

  // Every record, in index order.
  std::vector<DbRecord> scan() const {
    std::shared_lock lock(mu_);
    auto stmt = prepare(std::string(kSelect) + " ORDER BY key");
    std::vector<DbRecord> out;
    while (step_row(stmt.get())) out.push_back(row(stmt.get()));
    return out;
  }

  StoreStats stats() const {
    std::shared_lock lock(mu_);
    StoreStats s;
    auto stmt = prepare("SELECT n_node_equation, COUNT(*) FROM systems GROUP BY n_node_equation");
    while (step_row(stmt.get())) {
      const auto n = static_cast<std::size_t>(sqlite3_column_int64(stmt.get(), 1));
      s.by_equation_count[sqlite3_column_int64(stmt.get(), 0)] = n;
      s.records += n;
    }
    std::error_code ec;
    for (auto it = std::filesystem::recursive_directory_iterator(dir_, ec);
         !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
      if (it->is_regular_file(ec)) s.bytes_on_disk += it->file_size(ec);
    }
    return s;
  }

  // True when a new object could be created in the data directory right now.
  bool writable() const {
    const auto probe = dir_ / ".write-probe";
    std::ofstream out(probe, std::ios::trunc);
    if (!out) return false;
    out << "ok";
    out.close();
    std::error_code ec;
    std::filesystem::remove(probe, ec);
    return !ec && static_cast<bool>(out);
  }

private:
  static constexpr const char* kSelect =
      "SELECT n_node_variable, n_node_monomial, n_node_equation, n_node_degree, n_degree, degrees, "
      "graph_length, graph_filename, poly_filename, note, key, created_at FROM systems";

  static std::string object_name(std::string_view key, std::string_view ext) {
    return "objects/" + std::string(key.substr(0, 2)) + "/" + std::string(key.substr(2)) + std::string(ext);
  }

  static DbRecord record_for(const CanonicalForm& form) {
    DbRecord r;
    r.n_node_variable = static_cast<std::int64_t>(form.counts.n_node_variable);
    r.n_node_monomial = static_cast<std::int64_t>(form.counts.n_node_monomial);
    r.n_node_equation = static_cast<std::int64_t>(form.counts.n_node_equation);
    r.n_node_degree = static_cast<std::int64_t>(form.counts.n_node_degree);
    r.n_degree = static_cast<std::int64_t>(form.n_degree);
    r.degrees = join_degrees(form.degrees);
    r.graph_length = static_cast<std::int64_t>(form.text.size());
    r.graph_filename = object_name(form.key, ".graph");
    r.key = form.key;
    return r;
  }

  std::optional<DbRecord> lookup_locked(const CanonicalForm& form) const {
    const DbRecord probe = record_for(form);
    auto stmt = prepare(std::string(kSelect) +
                        " WHERE n_node_variable = ? AND n_node_monomial = ? AND n_node_equation = ? AND "
                        "n_node_degree = ? AND n_degree = ? AND degrees = ? AND graph_length = ?");
    bind_narrowing(stmt.get(), probe);
    while (step_row(stmt.get())) {
      DbRecord r = row(stmt.get());
      if (verified_graph(r) == form.text) return r;
    }
    return std::nullopt;
  }

  std::optional<DbRecord> get_locked(std::string_view key) const {
    auto stmt = prepare(std::string(kSelect) + " WHERE key = ?");
    bind_text(stmt.get(), 1, key);
    if (!step_row(stmt.get())) return std::nullopt;
    return row(stmt.get());
  }

  std::string verified_graph(const DbRecord& r) const {
    const auto path = dir_ / r.graph_filename;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) throw CorruptionError("missing object " + r.graph_filename);
    std::string text = detail::read_file(path);
    if (sha256_hex(text) != r.key) throw CorruptionError("object " + r.graph_filename + " does not match its key");
    return text;
  }

  void check_meta(const std::string& name, const std::string& value) {
    auto sel = prepare("SELECT value FROM meta WHERE name = ?");
    bind_text(sel.get(), 1, name);
    if (step_row(sel.get())) {
      const std::string have = reinterpret_cast<const char*>(sqlite3_column_text(sel.get(), 0));
      if (have != value) throw StoreError("store uses " + name + " '" + have + "', expected '" + value + "'");
      return;
    }
    auto ins = prepare("INSERT INTO meta (name, value) VALUES (?, ?)");
    bind_text(ins.get(), 1, name);
    bind_text(ins.get(), 2, value);
    step_done(ins.get());
  }

  void exec(const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_.get(), sql, nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown error";
      sqlite3_free(err);
      throw StoreError("index error: " + msg);
    }
  }

  detail::Stmt prepare(const std::string& sql) const {
    sqlite3_stmt* raw = nullptr;
    if (sqlite3_prepare_v2(db_.get(), sql.c_str(), -1, &raw, nullptr) != SQLITE_OK)
      throw StoreError("index error: " + std::string(sqlite3_errmsg(db_.get())));
    return detail::Stmt(raw);
  }

  static void bind_text(sqlite3_stmt* s, int i, std::string_view v) {
    sqlite3_bind_text(s, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
  }

  static void bind_narrowing(sqlite3_stmt* s, const DbRecord& r) {
    sqlite3_bind_int64(s, 1, r.n_node_variable);
    sqlite3_bind_int64(s, 2, r.n_node_monomial);
    sqlite3_bind_int64(s, 3, r.n_node_equation);
    sqlite3_bind_int64(s, 4, r.n_node_degree);
    sqlite3_bind_int64(s, 5, r.n_degree);
    bind_text(s, 6, r.degrees);
    sqlite3_bind_int64(s, 7, r.graph_length);
  }

  bool step_row(sqlite3_stmt* s) const {
    const int rc = sqlite3_step(s);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StoreError("index error: " + std::string(sqlite3_errmsg(db_.get())));
  }

  void step_done(sqlite3_stmt* s) const {
    if (sqlite3_step(s) != SQLITE_DONE) throw StoreError("index error: " + std::string(sqlite3_errmsg(db_.get())));
  }

  static DbRecord row(sqlite3_stmt* s) {
    auto text = [s](int i) {
      const auto* p = sqlite3_column_text(s, i);
      return p ? std::string(reinterpret_cast<const char*>(p)) : std::string();
    };
    DbRecord r;
    r.n_node_variable = sqlite3_column_int64(s, 0);
    r.n_node_monomial = sqlite3_column_int64(s, 1);
    r.n_node_equation = sqlite3_column_int64(s, 2);
    r.n_node_degree = sqlite3_column_int64(s, 3);
    r.n_degree = sqlite3_column_int64(s, 4);
    r.degrees = text(5);
    r.graph_length = sqlite3_column_int64(s, 6);
    r.graph_filename = text(7);
    r.poly_filename = text(8);
    r.note = text(9);
    r.key = text(10);
    r.created_at = text(11);
    return r;
  }

  std::filesystem::path dir_;
  detail::SqliteHandle db_;
  mutable std::shared_mutex mu_;
};

}  // namespace polyclass

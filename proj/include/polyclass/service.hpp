#pragma once

// HTTP front end over a Store.
//
//   POST /v1/classify        canonize and look up, never writes
//   POST /v1/systems         canonize and insert (bearer token when configured)
//   GET  /v1/systems/{key}   record as JSON, ?include=graph for the canonical text
//   GET  /v1/health          liveness plus record count

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "polyclass/canon.hpp"
#include "polyclass/error.hpp"
#include "polyclass/poly.hpp"
#include "polyclass/store.hpp"
#include "polyclass/version.hpp"

namespace polyclass {

struct ServiceConfig {
  std::size_t max_body_bytes = 10 * 1024 * 1024;
  std::chrono::milliseconds deadline{30'000};
  std::set<std::string> tokens;  // empty: no authentication
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::size_t> max_inflight;  // concurrent canonizations; unset means 4 * workers
};

// One token per line; blank lines and '#' comments ignored.
inline std::set<std::string> load_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read token file " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.insert(line.substr(first, last - first + 1));
  }
  return out;
}

inline nlohmann::json counts_json(const CanonicalForm& f) {
  return {{"n_node_variable", f.counts.n_node_variable},
          {"n_node_monomial", f.counts.n_node_monomial},
          {"n_node_equation", f.counts.n_node_equation},
          {"n_node_degree", f.counts.n_node_degree},
          {"n_degree", f.n_degree},
          {"degrees", f.degrees}};
}

inline nlohmann::json record_json(const DbRecord& r) {
  return {{"key", r.key},
          {"n_node_variable", r.n_node_variable},
          {"n_node_monomial", r.n_node_monomial},
          {"n_node_equation", r.n_node_equation},
          {"n_node_degree", r.n_node_degree},
          {"n_degree", r.n_degree},
          {"degrees", r.degrees},
          {"graph_length", r.graph_length},
          {"graph_filename", r.graph_filename},
          {"poly_filename", r.poly_filename},
          {"note", r.note},
          {"created_at", r.created_at}};
}

class Service {
public:
  Service(Store& store, ServiceConfig cfg) : store_(store), cfg_(std::move(cfg)) {
    if (!cfg_.max_inflight) cfg_.max_inflight = 4 * cfg_.workers;
    const std::size_t workers = cfg_.workers;
    server_.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
    server_.set_payload_max_length(cfg_.max_body_bytes);
    server_.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      reply(res, 500, {{"error", what}});
    });

    server_.Post("/v1/classify", [this](const httplib::Request& req, httplib::Response& res) { classify(req, res); });
    server_.Post("/v1/systems", [this](const httplib::Request& req, httplib::Response& res) { submit(req, res); });
    server_.Get(R"(/v1/systems/([^/]*))",
                [this](const httplib::Request& req, httplib::Response& res) { fetch(req, res); });
    server_.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) { health(res); });
  }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }

  // Binds to a free port and returns it; serve with listen_after_bind().
  int bind_any(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  void stop() { server_.stop(); }

private:
  static void reply(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  // Counts requests in flight; `ok` is false when the limit was reached.
  class Slot {
  public:
    Slot(std::atomic<std::size_t>& n, std::size_t limit) : n_(n) { ok_ = n_.fetch_add(1) < limit; }
    ~Slot() { n_.fetch_sub(1); }
    bool ok() const { return ok_; }

  private:
    std::atomic<std::size_t>& n_;
    bool ok_ = false;
  };

  // Parses and canonizes the request body. Returns false after writing an
  // error response.
  bool canonize(const httplib::Request& req, httplib::Response& res, PolySystem& sys, SystemCanon& canon) {
    if (req.body.size() > cfg_.max_body_bytes) {
      reply(res, 413, {{"error", "request body too large"}});
      return false;
    }
    try {
      sys = parse_system(req.body);
    } catch (const ParseError& e) {
      reply(res, 400, {{"error", e.what()}, {"line", e.line()}, {"column", e.column()}});
      return false;
    }
    Slot slot(inflight_, *cfg_.max_inflight);
    if (!slot.ok()) {
      reply(res, 429, {{"error", "too many classifications in progress"}});
      return false;
    }
    CanonOptions opts;
    opts.deadline = std::chrono::steady_clock::now() + cfg_.deadline;
    try {
      canon = canonical_form_of_system(sys, opts);
    } catch (const DeadlineExceeded& e) {
      reply(res, 504, {{"error", e.what()}});
      return false;
    }
    return true;
  }

  void classify(const httplib::Request& req, httplib::Response& res) {
    PolySystem sys;
    SystemCanon canon;
    if (!canonize(req, res, sys, canon)) return;
    const bool known = store_.lookup(canon.form).has_value();
    reply(res, 200,
          {{"key", canon.form.key},
           {"known", known},
           {"counts", counts_json(canon.form)},
           {"symmetry_generator_count", canon.gens.generators.size()},
           {"variable_generators", canon.gens.generators}});
  }

  bool authorized(const httplib::Request& req) const {
    if (cfg_.tokens.empty()) return true;
    const std::string auth = req.get_header_value("Authorization");
    const std::string prefix = "Bearer ";
    if (auth.compare(0, prefix.size(), prefix) != 0) return false;
    return cfg_.tokens.count(auth.substr(prefix.size())) > 0;
  }

  void submit(const httplib::Request& req, httplib::Response& res) {
    if (!authorized(req)) {
      reply(res, 401, {{"error", "missing or invalid bearer token"}});
      return;
    }
    PolySystem sys;
    SystemCanon canon;
    if (!canonize(req, res, sys, canon)) return;
    const std::string note = req.has_param("note") ? req.get_param_value("note") : std::string();
    const InsertResult r = store_.insert(canon.form, sys, note);
    reply(res, r.created ? 201 : 200, {{"key", r.key}, {"created", r.created}});
  }

  void fetch(const httplib::Request& req, httplib::Response& res) {
    const std::string key = req.matches[1];
    if (!is_hex_key(key)) {
      reply(res, 400, {{"error", "key must be 64 lowercase hex characters"}});
      return;
    }
    const auto rec = store_.get(key);
    if (!rec) {
      reply(res, 404, {{"error", "unknown key"}});
      return;
    }
    if (req.has_param("include") && req.get_param_value("include") == "graph") {
      res.status = 200;
      res.set_header("Content-Disposition", "attachment; filename=\"" + key + ".graph\"");
      res.set_content(store_.read_graph(*rec), "text/plain");
      return;
    }
    reply(res, 200, record_json(*rec));
  }

  void health(httplib::Response& res) {
    nlohmann::json body{{"version", std::string(kVersion)}};
    try {
      body["store_records"] = store_.stats().records;
      body["status"] = store_.writable() ? "ok" : "degraded";
    } catch (const std::exception& e) {
      body["store_records"] = 0;
      body["status"] = "degraded";
      body["error"] = e.what();
    }
    reply(res, 200, body);
  }

  Store& store_;
  ServiceConfig cfg_;
  httplib::Server server_;
  std::atomic<std::size_t> inflight_{0};
};

}  // namespace polyclass

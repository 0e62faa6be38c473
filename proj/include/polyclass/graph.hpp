#pragma once

// Graph encodings of support families.
//
// encode_partitioned() builds the compact encoding used for canonization:
// exponents are routed through exponent vertices and the vertex classes are
// given as an ordered partition. encode_selfloop() builds the proof-style
// encoding where degrees are chains of anonymous vertices and the vertex
// classes are marked by self-loop multiplicities.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polyclass/error.hpp"
#include "polyclass/poly.hpp"

namespace polyclass {

using Vertex = std::uint32_t;

enum class CellKind { root, equations, monomials, variables, constant_unit, exponent, plain };

struct Cell {
  CellKind kind;
  Exponent exponent = 0;  // meaningful for CellKind::exponent only
  Vertex begin = 0;
  Vertex end = 0;  // exclusive

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline std::string cell_tag(const Cell& c) {
  switch (c.kind) {
    case CellKind::root: return "root";
    case CellKind::equations: return "equations";
    case CellKind::monomials: return "monomials";
    case CellKind::variables: return "variables";
    case CellKind::constant_unit: return "constant_unit";
    case CellKind::exponent: return "exp" + std::to_string(c.exponent);
    case CellKind::plain: return "plain";
  }
  return "?";
}

inline std::optional<Cell> parse_cell_tag(const std::string& tag) {
  static const std::map<std::string, CellKind> fixed = {
      {"root", CellKind::root},           {"equations", CellKind::equations},
      {"monomials", CellKind::monomials}, {"variables", CellKind::variables},
      {"constant_unit", CellKind::constant_unit}, {"plain", CellKind::plain}};
  if (auto it = fixed.find(tag); it != fixed.end()) return Cell{it->second};
  if (tag.size() > 3 && tag.compare(0, 3, "exp") == 0 &&
      tag.find_first_not_of("0123456789", 3) == std::string::npos) {
    const unsigned long long e = std::stoull(tag.substr(3));
    if (e > kMaxExponent) return std::nullopt;
    return Cell{CellKind::exponent, static_cast<Exponent>(e)};
  }
  return std::nullopt;
}

struct EncodedGraph {
  std::size_t nverts = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // u < v, sorted, unique
  std::vector<std::uint32_t> loop_mult;          // one entry per vertex
  std::vector<Cell> cells;
  std::vector<Exponent> exponent_values;  // distinct positive exponents, ascending

  const Cell* find_cell(CellKind kind) const {
    for (const Cell& c : cells)
      if (c.kind == kind) return &c;
    return nullptr;
  }

  bool has_loops() const {
    return std::any_of(loop_mult.begin(), loop_mult.end(), [](std::uint32_t m) { return m != 0; });
  }

  // A single cell spanning every vertex and no loops.
  bool is_plain() const {
    return !has_loops() && (cells.empty() || (cells.size() == 1 && cells[0].size() == nverts));
  }

  friend bool operator==(const EncodedGraph&, const EncodedGraph&) = default;
};

// Builds a plain graph (one trivial cell, no loops) from an edge list.
inline EncodedGraph make_plain_graph(std::size_t nverts, std::vector<std::pair<Vertex, Vertex>> edges) {
  EncodedGraph g;
  g.nverts = nverts;
  for (auto& [u, v] : edges) {
    if (u == v) throw InvalidArgument("plain graphs have no self-loops");
    if (u >= nverts || v >= nverts) throw InvalidArgument("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.loop_mult.assign(nverts, 0);
  g.cells.push_back({CellKind::plain, 0, 0, static_cast<Vertex>(nverts)});
  return g;
}

namespace detail {

inline void check_family(const SupportFamily& fam) {
  if (fam.supports.empty()) throw InvalidArgument("support family has no support sets");
  for (const auto& s : fam.supports) {
    if (s.empty()) throw InvalidArgument("empty support set");
    for (const auto& t : s)
      if (t.size() != fam.nvars) throw InvalidArgument("exponent tuple length differs from variable count");
  }
}

inline bool is_constant(const ExponentTuple& t) {
  return std::all_of(t.begin(), t.end(), [](Exponent e) { return e == 0; });
}

inline void finish_edges(EncodedGraph& g) {
  for (auto& [u, v] : g.edges)
    if (u > v) std::swap(u, v);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

}  // namespace detail

// Vertex layout: root, equations, monomials (per equation, not shared),
// variables, constant unit, then exponent vertices grouped by value. The
// zero-exponent vertex, when present, is the exp0 cell.
inline EncodedGraph encode_partitioned(const SupportFamily& fam) {
  detail::check_family(fam);
  const std::size_t neq = fam.supports.size();
  const std::size_t nv = fam.nvars;

  std::size_t nmon = 0;
  bool has_constant = false;
  // exponent value -> variables that carry it
  std::map<Exponent, std::vector<bool>> carriers;
  for (const auto& s : fam.supports) {
    nmon += s.size();
    for (const auto& t : s) {
      if (detail::is_constant(t)) has_constant = true;
      for (std::size_t v = 0; v < nv; ++v) {
        if (t[v] == 0) continue;
        auto& mask = carriers[t[v]];
        if (mask.empty()) mask.assign(nv, false);
        mask[v] = true;
      }
    }
  }

  EncodedGraph g;
  Vertex next = 0;
  auto add_cell = [&](CellKind kind, std::size_t count, Exponent e = 0) {
    Cell c{kind, e, next, static_cast<Vertex>(next + count)};
    next = c.end;
    g.cells.push_back(c);
    return c;
  };
  const Cell root = add_cell(CellKind::root, 1);
  const Cell eqs = add_cell(CellKind::equations, neq);
  const Cell mons = add_cell(CellKind::monomials, nmon);
  const Cell vars = add_cell(CellKind::variables, nv);
  std::optional<Cell> unit;
  std::optional<Cell> zero;
  if (has_constant) unit = add_cell(CellKind::constant_unit, 1);
  if (has_constant) zero = add_cell(CellKind::exponent, 1, 0);

  // (variable, exponent) -> vertex
  std::map<std::pair<std::size_t, Exponent>, Vertex> expo_vertex;
  for (const auto& [e, mask] : carriers) {
    std::size_t count = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    const Cell c = add_cell(CellKind::exponent, count, e);
    Vertex at = c.begin;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!mask[v]) continue;
      expo_vertex[{v, e}] = at;
      g.edges.emplace_back(at, static_cast<Vertex>(vars.begin + v));
      ++at;
    }
    g.exponent_values.push_back(e);
  }
  g.nverts = next;
  g.loop_mult.assign(g.nverts, 0);

  if (zero) g.edges.emplace_back(zero->begin, unit->begin);
  Vertex mon = mons.begin;
  for (std::size_t j = 0; j < neq; ++j) {
    const Vertex eq = static_cast<Vertex>(eqs.begin + j);
    g.edges.emplace_back(root.begin, eq);
    for (const auto& t : fam.supports[j]) {
      g.edges.emplace_back(eq, mon);
      if (detail::is_constant(t)) g.edges.emplace_back(mon, zero->begin);
      for (std::size_t v = 0; v < nv; ++v)
        if (t[v] != 0) g.edges.emplace_back(mon, expo_vertex.at({v, t[v]}));
      ++mon;
    }
  }
  detail::finish_edges(g);
  return g;
}

inline constexpr std::uint32_t kLoopRoot = 1;
inline constexpr std::uint32_t kLoopEquation = 2;
inline constexpr std::uint32_t kLoopMonomial = 3;
inline constexpr std::uint32_t kLoopVariable = 4;
inline constexpr std::uint32_t kLoopConstant = 5;

// Vertex order: root, equations, monomials, variables, constant vertex (only
// when a constant monomial occurs), then chain vertices.
inline EncodedGraph encode_selfloop(const SupportFamily& fam) {
  detail::check_family(fam);
  const std::size_t neq = fam.supports.size();
  const std::size_t nv = fam.nvars;
  std::size_t nmon = 0;
  bool has_constant = false;
  for (const auto& s : fam.supports) {
    nmon += s.size();
    for (const auto& t : s) has_constant = has_constant || detail::is_constant(t);
  }

  const Vertex root = 0;
  const Vertex eq0 = 1;
  const Vertex mon0 = static_cast<Vertex>(eq0 + neq);
  const Vertex var0 = static_cast<Vertex>(mon0 + nmon);
  const Vertex constant = static_cast<Vertex>(var0 + nv);
  Vertex next = has_constant ? constant + 1 : constant;

  EncodedGraph g;
  std::vector<std::uint32_t> loops(next, 0);
  loops[root] = kLoopRoot;
  for (std::size_t j = 0; j < neq; ++j) loops[eq0 + j] = kLoopEquation;
  for (std::size_t m = 0; m < nmon; ++m) loops[mon0 + m] = kLoopMonomial;
  for (std::size_t v = 0; v < nv; ++v) loops[var0 + v] = kLoopVariable;
  if (has_constant) loops[constant] = kLoopConstant;

  Vertex mon = mon0;
  for (std::size_t j = 0; j < neq; ++j) {
    g.edges.emplace_back(root, static_cast<Vertex>(eq0 + j));
    for (const auto& t : fam.supports[j]) {
      g.edges.emplace_back(static_cast<Vertex>(eq0 + j), mon);
      if (detail::is_constant(t)) g.edges.emplace_back(mon, constant);
      for (std::size_t v = 0; v < nv; ++v) {
        if (t[v] == 0) continue;
        Vertex prev = mon;
        for (Exponent k = 1; k < t[v]; ++k) {
          loops.push_back(0);
          g.edges.emplace_back(prev, next);
          prev = next++;
        }
        g.edges.emplace_back(prev, static_cast<Vertex>(var0 + v));
      }
      ++mon;
    }
  }
  g.nverts = next;
  g.loop_mult = std::move(loops);
  g.cells.push_back({CellKind::plain, 0, 0, next});
  detail::finish_edges(g);
  return g;
}

// Rows are vertices, columns are edges. A column holds two ones for an
// ordinary edge and a single one for a self-loop.
struct IncidenceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> entries;  // row-major

  std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  std::uint8_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
};

inline IncidenceMatrix incidence_matrix(const EncodedGraph& g) {
  IncidenceMatrix a;
  a.rows = g.nverts;
  std::size_t loop_cols = 0;
  for (std::uint32_t m : g.loop_mult) loop_cols += m;
  a.cols = g.edges.size() + loop_cols;
  a.entries.assign(a.rows * a.cols, 0);
  std::size_t c = 0;
  for (auto [u, v] : g.edges) {
    a.at(u, c) = 1;
    a.at(v, c) = 1;
    ++c;
  }
  for (std::size_t v = 0; v < g.loop_mult.size(); ++v)
    for (std::uint32_t k = 0; k < g.loop_mult[v]; ++k) a.at(v, c++) = 1;
  return a;
}

// One variable x1..xn per row, one monomial per column, coefficients 1.
// Equal columns merge into a single term whose coefficient is the count.
inline PolySystem incidence_to_poly(const IncidenceMatrix& a) {
  if (a.rows == 0 || a.cols == 0) throw InvalidArgument("empty incidence matrix");
  if (a.entries.size() != a.rows * a.cols) throw InvalidArgument("incidence matrix has wrong entry count");
  for (std::size_t c = 0; c < a.cols; ++c) {
    std::size_t ones = 0;
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (a.at(r, c) > 1) throw InvalidArgument("incidence matrix entries must be 0 or 1");
      ones += a.at(r, c);
    }
    if (ones != 1 && ones != 2) throw InvalidArgument("incidence column must contain one or two ones");
  }
  PolySystem sys;
  for (std::size_t r = 0; r < a.rows; ++r) sys.vars.push_back("x" + std::to_string(r + 1));
  Polynomial p;
  std::map<ExponentTuple, std::size_t> where;
  for (std::size_t c = 0; c < a.cols; ++c) {
    ExponentTuple e(a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) e[r] = a.at(r, c);
    auto [it, inserted] = where.emplace(e, p.terms.size());
    if (inserted) {
      p.terms.push_back({Rational(1), std::move(e)});
    } else {
      p.terms[it->second].coeff += 1;
    }
  }
  sys.polys.push_back(std::move(p));
  return sys;
}

// Text dump: "<nverts> <nedges>", the cells as "tag:begin..end" (end
// exclusive), the exponent values, then one "u v" line per edge and one
// "u u m" line per looped vertex, sorted.
inline std::string dump_graph(const EncodedGraph& g) {
  std::ostringstream out;
  out << g.nverts << ' ' << g.edges.size() << '\n';
  for (std::size_t i = 0; i < g.cells.size(); ++i)
    out << (i ? " " : "") << cell_tag(g.cells[i]) << ':' << g.cells[i].begin << ".." << g.cells[i].end;
  out << '\n';
  for (std::size_t i = 0; i < g.exponent_values.size(); ++i) out << (i ? " " : "") << g.exponent_values[i];
  out << '\n';
  std::vector<std::tuple<Vertex, Vertex, std::uint32_t>> rows;
  for (auto [u, v] : g.edges) rows.emplace_back(u, v, 0);
  for (std::size_t v = 0; v < g.loop_mult.size(); ++v)
    if (g.loop_mult[v]) rows.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v), g.loop_mult[v]);
  std::sort(rows.begin(), rows.end());
  for (auto [u, v, m] : rows) {
    out << u << ' ' << v;
    if (u == v) out << ' ' << m;
    out << '\n';
  }
  return out.str();
}

inline EncodedGraph parse_graph_dump(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto bad = [](const std::string& why) { return InvalidArgument("graph dump: " + why); };
  EncodedGraph g;
  std::size_t nedges = 0;
  if (!std::getline(in, line)) throw bad("missing header line");
  {
    std::istringstream hs(line);
    if (!(hs >> g.nverts >> nedges)) throw bad("header must be '<nverts> <nedges>'");
  }
  g.loop_mult.assign(g.nverts, 0);
  if (!std::getline(in, line)) throw bad("missing cell line");
  {
    std::istringstream cs(line);
    std::string item;
    Vertex expect_begin = 0;
    while (cs >> item) {
      const auto colon = item.rfind(':');
      const auto dots = item.find("..", colon == std::string::npos ? 0 : colon);
      if (colon == std::string::npos || dots == std::string::npos) throw bad("malformed cell '" + item + "'");
      auto cell = parse_cell_tag(item.substr(0, colon));
      if (!cell) throw bad("unknown cell tag in '" + item + "'");
      cell->begin = static_cast<Vertex>(std::stoul(item.substr(colon + 1, dots - colon - 1)));
      cell->end = static_cast<Vertex>(std::stoul(item.substr(dots + 2)));
      if (cell->begin != expect_begin || cell->end < cell->begin) throw bad("cells must be contiguous ranges");
      expect_begin = cell->end;
      g.cells.push_back(*cell);
    }
    if (expect_begin != g.nverts) throw bad("cells do not cover every vertex");
  }
  if (!std::getline(in, line)) throw bad("missing exponent line");
  {
    std::istringstream es(line);
    Exponent e;
    while (es >> e) g.exponent_values.push_back(e);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Vertex u, v;
    if (!(ls >> u >> v)) throw bad("malformed edge line '" + line + "'");
    if (u >= g.nverts || v >= g.nverts) throw bad("edge endpoint out of range");
    if (u == v) {
      std::uint32_t m;
      if (!(ls >> m)) throw bad("loop line needs a multiplicity");
      g.loop_mult[u] += m;
    } else {
      g.edges.emplace_back(u, v);
    }
  }
  detail::finish_edges(g);
  if (g.edges.size() != nedges) throw bad("edge count does not match header");
  return g;
}

}  // namespace polyclass

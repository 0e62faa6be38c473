#pragma once

// Canonical labeling of cell-partitioned graphs by individualization and
// refinement, plus the system-level pipeline built on top of it.
//
// The search refines the input ordered partition to the coarsest equitable
// partition, individualizes each vertex of the first smallest non-singleton
// cell in turn and recurses until the partition is discrete. Every discrete
// leaf yields a relabeled adjacency structure; the smallest one in
// lexicographic order is canonical. Two leaves with identical relabeled
// adjacency give an automorphism, which is used to skip sibling branches in
// the same orbit and to return early from subtrees already known to be
// equivalent to an explored one.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyclass/digest.hpp"
#include "polyclass/error.hpp"
#include "polyclass/graph.hpp"
#include "polyclass/poly.hpp"

namespace polyclass {

inline constexpr std::string_view kCanonicalFormatVersion = "SSC1";

struct SplitRecord {
  std::uint32_t cell_start;
  std::uint32_t pieces;
  friend bool operator==(const SplitRecord&, const SplitRecord&) = default;
};

// Ordered partition of the vertex set. cells[i] lists the vertices of the
// i-th cell; trace records the splits that produced it.
struct ColoredPartition {
  std::vector<std::vector<Vertex>> cells;
  std::vector<SplitRecord> trace;
};

struct CanonicalCounts {
  std::size_t n_node_variable = 0;
  std::size_t n_node_monomial = 0;
  std::size_t n_node_equation = 0;
  std::size_t n_node_degree = 0;

  friend bool operator==(const CanonicalCounts&, const CanonicalCounts&) = default;
};

struct CanonicalForm {
  std::string text;
  std::string key;  // sha256 of text, lowercase hex
  CanonicalCounts counts;
  std::uint64_t n_degree = 0;     // sum of exponent values over exponent vertices
  std::vector<Exponent> degrees;  // distinct positive exponents, ascending
};

// Variable permutations: generator[i] is the image of variable i.
struct SymmetryGenerators {
  std::vector<std::vector<std::size_t>> generators;
};

struct CanonOptions {
  bool prune = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t pruned = 0;
};

struct Labeling {
  std::vector<Vertex> perm;  // vertex -> canonical label
  CanonicalForm form;
  SymmetryGenerators gens;
  std::vector<std::vector<Vertex>> automorphisms;  // vertex permutations found during search
  SearchStats stats;
};

namespace detail {

// Compressed adjacency. Each loop adds the vertex itself to its own row.
struct Adjacency {
  std::vector<std::uint32_t> offset;
  std::vector<Vertex> nbr;
  std::vector<std::uint32_t> loops;

  explicit Adjacency(const EncodedGraph& g) : offset(g.nverts + 1, 0), loops(g.loop_mult) {
    loops.resize(g.nverts, 0);
    for (auto [u, v] : g.edges) {
      if (u >= g.nverts || v >= g.nverts) throw InvalidArgument("edge endpoint out of range");
      ++offset[u + 1];
      ++offset[v + 1];
    }
    for (std::size_t v = 0; v < g.nverts; ++v) offset[v + 1] += loops[v];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    nbr.resize(offset.back());
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (auto [u, v] : g.edges) {
      nbr[fill[u]++] = v;
      nbr[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < g.nverts; ++v)
      for (std::uint32_t k = 0; k < loops[v]; ++k) nbr[fill[v]++] = static_cast<Vertex>(v);
    for (std::size_t v = 0; v < g.nverts; ++v) std::sort(nbr.begin() + offset[v], nbr.begin() + offset[v + 1]);
  }

  std::size_t size() const { return offset.size() - 1; }
  std::span<const Vertex> operator[](Vertex v) const {
    return {nbr.data() + offset[v], nbr.data() + offset[v + 1]};
  }
};

// Cells are contiguous ranges of `lab`, identified by their start index.
struct Partition {
  std::vector<Vertex> lab;
  std::vector<std::uint32_t> pos;   // vertex -> index in lab
  std::vector<std::uint32_t> cell;  // vertex -> start of its cell
  std::vector<std::uint32_t> end;   // cell start -> one past its last index
  std::size_t ncells = 0;

  std::size_t size() const { return lab.size(); }
  bool discrete() const { return ncells == lab.size(); }

  std::vector<std::uint32_t> cell_starts() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < lab.size(); s = end[s]) out.push_back(s);
    return out;
  }
};

inline Partition make_partition(std::size_t n, const std::vector<std::vector<Vertex>>& cells) {
  Partition p;
  p.lab.reserve(n);
  p.pos.assign(n, 0);
  p.cell.assign(n, 0);
  p.end.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& c : cells) {
    if (c.empty()) continue;
    const auto start = static_cast<std::uint32_t>(p.lab.size());
    for (Vertex v : c) {
      if (v >= n || seen[v]) throw InvalidArgument("partition cells must be disjoint vertex sets");
      seen[v] = true;
      p.pos[v] = static_cast<std::uint32_t>(p.lab.size());
      p.cell[v] = start;
      p.lab.push_back(v);
    }
    p.end[start] = static_cast<std::uint32_t>(p.lab.size());
    ++p.ncells;
  }
  if (p.lab.size() != n) throw InvalidArgument("partition cells must cover every vertex");
  return p;
}

// Splits cells until every cell is equitable with respect to every other
// cell. `queue` holds the starts of the cells to use as splitters.
class Refiner {
public:
  explicit Refiner(const Adjacency& adj)
      : adj_(adj), count_(adj.size(), 0), queued_(adj.size(), 0), marked_(adj.size(), 0) {}

  void run(Partition& p, std::deque<std::uint32_t> queue, std::vector<SplitRecord>* trace = nullptr) {
    for (auto s : queue) queued_[s] = 1;
    std::vector<Vertex> touched;
    std::vector<std::uint32_t> cells;
    while (!queue.empty()) {
      if (p.discrete()) break;
      const std::uint32_t w = queue.front();
      queue.pop_front();
      queued_[w] = 0;

      touched.clear();
      for (std::uint32_t i = w; i < p.end[w]; ++i) {
        const Vertex v = p.lab[i];
        for (Vertex u : adj_[v]) {
          if (count_[u]++ == 0) touched.push_back(u);
        }
      }
      cells.clear();
      for (Vertex u : touched) {
        const std::uint32_t c = p.cell[u];
        if (!marked_[c]) {
          marked_[c] = 1;
          cells.push_back(c);
        }
      }
      std::sort(cells.begin(), cells.end());
      for (std::uint32_t c : cells) {
        marked_[c] = 0;
        split(p, c, queue, trace);
      }
      for (Vertex u : touched) count_[u] = 0;
    }
    for (auto s : queue) queued_[s] = 0;
  }

private:
  void split(Partition& p, std::uint32_t c, std::deque<std::uint32_t>& queue, std::vector<SplitRecord>* trace) {
    const std::uint32_t e = p.end[c];
    if (e - c == 1) return;
    auto first = p.lab.begin() + c;
    auto last = p.lab.begin() + e;
    std::stable_sort(first, last, [&](Vertex a, Vertex b) { return count_[a] < count_[b]; });
    if (count_[p.lab[c]] == count_[p.lab[e - 1]]) return;

    std::uint32_t pieces = 0;
    std::uint32_t start = c;
    while (start < e) {
      std::uint32_t stop = start + 1;
      while (stop < e && count_[p.lab[stop]] == count_[p.lab[start]]) ++stop;
      for (std::uint32_t i = start; i < stop; ++i) {
        p.pos[p.lab[i]] = i;
        p.cell[p.lab[i]] = start;
      }
      p.end[start] = stop;
      if (!queued_[start]) {
        queued_[start] = 1;
        queue.push_back(start);
      }
      ++pieces;
      start = stop;
    }
    p.ncells += pieces - 1;
    if (trace) trace->push_back({c, pieces});
  }

  const Adjacency& adj_;
  std::vector<std::uint32_t> count_;
  std::vector<char> queued_;
  std::vector<char> marked_;
};

// Input cells in order, each split by loop multiplicity (ascending).
inline std::vector<std::vector<Vertex>> initial_cells(const EncodedGraph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> covered(g.nverts, false);
  auto push_split = [&](std::vector<Vertex> vs) {
    std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return g.loop_mult[a] < g.loop_mult[b]; });
    std::size_t i = 0;
    while (i < vs.size()) {
      std::size_t j = i + 1;
      while (j < vs.size() && g.loop_mult[vs[j]] == g.loop_mult[vs[i]]) ++j;
      out.emplace_back(vs.begin() + static_cast<std::ptrdiff_t>(i), vs.begin() + static_cast<std::ptrdiff_t>(j));
      i = j;
    }
  };
  if (g.loop_mult.size() != g.nverts) throw InvalidArgument("loop multiplicity list has wrong length");
  if (g.cells.empty()) {
    std::vector<Vertex> all(g.nverts);
    std::iota(all.begin(), all.end(), Vertex{0});
    push_split(std::move(all));
    return out;
  }
  for (const Cell& c : g.cells) {
    if (c.end > g.nverts || c.begin > c.end) throw InvalidArgument("cell range out of bounds");
    std::vector<Vertex> vs;
    for (Vertex v = c.begin; v < c.end; ++v) {
      if (covered[v]) throw InvalidArgument("cells overlap");
      covered[v] = true;
      vs.push_back(v);
    }
    if (!vs.empty()) push_split(std::move(vs));
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw InvalidArgument("cells do not cover every vertex");
  return out;
}

inline std::deque<std::uint32_t> all_cells(const Partition& p) {
  auto starts = p.cell_starts();
  return {starts.begin(), starts.end()};
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }
  Vertex find(Vertex v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<Vertex> parent_;
};

class CanonSearch {
public:
  CanonSearch(const EncodedGraph& g, const CanonOptions& opts) : g_(g), adj_(g), refiner_(adj_), opts_(opts) {}

  void run() {
    Partition p = make_partition(g_.nverts, initial_cells(g_));
    refiner_.run(p, all_cells(p));
    std::vector<Vertex> path;
    search(p, path);
  }

  const std::vector<Vertex>& best_lab() const { return best_->lab; }
  const std::vector<Vertex>& best_form() const { return best_->form; }
  const std::vector<std::vector<Vertex>>& automorphisms() const { return autos_; }
  const SearchStats& stats() const { return stats_; }
  const Adjacency& adjacency() const { return adj_; }

private:
  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);

  struct Leaf {
    std::vector<Vertex> lab;
    std::vector<std::uint32_t> pos;
    std::vector<Vertex> path;
    std::vector<Vertex> form;
  };

  void check_deadline() {
    if (opts_.deadline && std::chrono::steady_clock::now() > *opts_.deadline)
      throw DeadlineExceeded("canonization exceeded its deadline");
  }

  std::vector<Vertex> leaf_form(const Partition& p) const {
    std::vector<Vertex> form;
    form.reserve(adj_.nbr.size());
    std::vector<Vertex> row;
    for (std::size_t i = 0; i < p.size(); ++i) {
      row.clear();
      for (Vertex u : adj_[p.lab[i]]) row.push_back(p.pos[u]);
      std::sort(row.begin(), row.end());
      form.insert(form.end(), row.begin(), row.end());
    }
    return form;
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  // The vertex at position i of `ref` maps to the vertex at position i of `leaf`.
  void record_automorphism(const Leaf& ref, const Partition& leaf) {
    std::vector<Vertex> gamma(g_.nverts);
    for (std::size_t v = 0; v < g_.nverts; ++v) gamma[v] = leaf.lab[ref.pos[v]];
    autos_.push_back(std::move(gamma));
  }

  std::size_t process_leaf(const Partition& p, const std::vector<Vertex>& path) {
    ++stats_.leaves;
    std::vector<Vertex> form = leaf_form(p);
    if (!first_) {
      first_ = Leaf{p.lab, p.pos, path, std::move(form)};
      best_ = first_;
      return kNoJump;
    }
    if (form == first_->form) {
      record_automorphism(*first_, p);
      return opts_.prune ? common_prefix(first_->path, path) : kNoJump;
    }
    if (form < best_->form) {
      best_ = Leaf{p.lab, p.pos, path, std::move(form)};
      return kNoJump;
    }
    if (form == best_->form) {
      record_automorphism(*best_, p);
      return opts_.prune ? common_prefix(best_->path, path) : kNoJump;
    }
    return kNoJump;
  }

  std::uint32_t target_cell(const Partition& p) const {
    std::uint32_t best = 0;
    std::uint32_t best_size = 0;
    for (std::uint32_t s = 0; s < p.size(); s = p.end[s]) {
      const std::uint32_t size = p.end[s] - s;
      if (size > 1 && (best_size == 0 || size < best_size)) {
        best = s;
        best_size = size;
      }
    }
    return best;
  }

  // Orbits of the group generated by the known automorphisms that fix every
  // vertex of `path`.
  UnionFind stabilizer_orbits(const std::vector<Vertex>& path) const {
    UnionFind uf(g_.nverts);
    for (const auto& gamma : autos_) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](Vertex v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (std::size_t v = 0; v < gamma.size(); ++v) uf.unite(static_cast<Vertex>(v), gamma[v]);
    }
    return uf;
  }

  std::size_t search(const Partition& p, std::vector<Vertex>& path) {
    ++stats_.nodes;
    check_deadline();
    if (p.discrete()) return process_leaf(p, path);

    const std::uint32_t tc = target_cell(p);
    std::vector<Vertex> children(p.lab.begin() + tc, p.lab.begin() + p.end[tc]);
    std::sort(children.begin(), children.end());

    const std::size_t level = path.size();
    std::vector<Vertex> explored;
    std::size_t autos_seen = 0;
    std::optional<UnionFind> orbits;
    for (Vertex w : children) {
      if (opts_.prune && !explored.empty()) {
        if (!orbits || autos_seen != autos_.size()) {
          orbits = stabilizer_orbits(path);
          autos_seen = autos_.size();
        }
        const Vertex rw = orbits->find(w);
        bool same = std::any_of(explored.begin(), explored.end(), [&](Vertex e) { return orbits->find(e) == rw; });
        if (same) {
          ++stats_.pruned;
          continue;
        }
      }
      Partition child = p;
      individualize(child, w);
      path.push_back(w);
      const std::size_t jump = search(child, path);
      path.pop_back();
      explored.push_back(w);
      if (jump != kNoJump && jump < level) return jump;
    }
    return kNoJump;
  }

  void individualize(Partition& p, Vertex w) {
    const std::uint32_t c = p.cell[w];
    const std::uint32_t e = p.end[c];
    const std::uint32_t at = p.pos[w];
    std::swap(p.lab[c], p.lab[at]);
    p.pos[p.lab[at]] = at;
    p.pos[w] = c;
    p.end[c] = c + 1;
    p.end[c + 1] = e;
    for (std::uint32_t i = c + 1; i < e; ++i) p.cell[p.lab[i]] = c + 1;
    ++p.ncells;
    refiner_.run(p, {c});
  }

  const EncodedGraph& g_;
  Adjacency adj_;
  Refiner refiner_;
  CanonOptions opts_;
  std::optional<Leaf> first_;
  std::optional<Leaf> best_;
  std::vector<std::vector<Vertex>> autos_;
  SearchStats stats_;
};

inline CanonicalCounts counts_of(const std::vector<Cell>& cells) {
  CanonicalCounts c;
  for (const Cell& cell : cells) {
    switch (cell.kind) {
      case CellKind::variables: c.n_node_variable += cell.size(); break;
      case CellKind::monomials: c.n_node_monomial += cell.size(); break;
      case CellKind::equations: c.n_node_equation += cell.size(); break;
      case CellKind::exponent: c.n_node_degree += cell.size(); break;
      default: break;
    }
  }
  return c;
}

}  // namespace detail

inline ColoredPartition initial_partition(const EncodedGraph& g) {
  return {detail::initial_cells(g), {}};
}

// Coarsest equitable refinement of `p`. Cells of `p` are never merged and
// every output cell lies inside one input cell.
inline ColoredPartition refine(const EncodedGraph& g, const ColoredPartition& p) {
  detail::Adjacency adj(g);
  detail::Partition part = detail::make_partition(g.nverts, p.cells);
  ColoredPartition out;
  out.trace = p.trace;
  detail::Refiner(adj).run(part, detail::all_cells(part), &out.trace);
  for (std::uint32_t s : part.cell_starts())
    out.cells.emplace_back(part.lab.begin() + s, part.lab.begin() + part.end[s]);
  return out;
}

// Header fields recovered from a canonical text.
struct CanonicalHeader {
  std::vector<std::pair<std::string, std::size_t>> cells;
  std::vector<Exponent> exponents;
};

inline CanonicalHeader parse_canonical_header(std::string_view text) {
  auto bad = [] { return InvalidArgument("malformed canonical form text"); };
  const std::string prefix = std::string(kCanonicalFormatVersion) + "|cells=";
  if (text.substr(0, prefix.size()) != prefix) throw bad();
  text.remove_prefix(prefix.size());
  const auto bar = text.find("|exps=");
  if (bar == std::string_view::npos) throw bad();
  CanonicalHeader h;
  std::string_view cells = text.substr(0, bar);
  while (!cells.empty()) {
    const auto comma = cells.find(',');
    std::string_view item = cells.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw bad();
    h.cells.emplace_back(std::string(item.substr(0, colon)), std::stoul(std::string(item.substr(colon + 1))));
    cells = comma == std::string_view::npos ? std::string_view{} : cells.substr(comma + 1);
  }
  text.remove_prefix(bar + 6);
  const auto adj = text.find("|adj=");
  if (adj == std::string_view::npos) throw bad();
  std::string_view exps = text.substr(0, adj);
  while (!exps.empty()) {
    const auto comma = exps.find(',');
    h.exponents.push_back(static_cast<Exponent>(std::stoul(std::string(exps.substr(0, comma)))));
    exps = comma == std::string_view::npos ? std::string_view{} : exps.substr(comma + 1);
  }
  return h;
}

// Counts, n_degree and degrees recomputed from a canonical text.
inline CanonicalForm form_from_text(std::string text) {
  const CanonicalHeader h = parse_canonical_header(text);
  CanonicalForm f;
  for (const auto& [tag, size] : h.cells) {
    auto cell = parse_cell_tag(tag);
    if (!cell) throw InvalidArgument("unknown cell tag '" + tag + "' in canonical form");
    cell->end = static_cast<Vertex>(size);
    const std::vector<Cell> one{*cell};
    const CanonicalCounts c = detail::counts_of(one);
    f.counts.n_node_variable += c.n_node_variable;
    f.counts.n_node_monomial += c.n_node_monomial;
    f.counts.n_node_equation += c.n_node_equation;
    f.counts.n_node_degree += c.n_node_degree;
    if (cell->kind == CellKind::exponent) f.n_degree += static_cast<std::uint64_t>(cell->exponent) * size;
  }
  f.degrees = h.exponents;
  f.key = sha256_hex(text);
  f.text = std::move(text);
  return f;
}

inline Labeling canonical_labeling(const EncodedGraph& g, const CanonOptions& opts = {}) {
  detail::CanonSearch search(g, opts);
  search.run();

  Labeling out;
  const auto& lab = search.best_lab();
  out.perm.assign(g.nverts, 0);
  for (std::size_t i = 0; i < lab.size(); ++i) out.perm[lab[i]] = static_cast<Vertex>(i);

  std::ostringstream text;
  text << kCanonicalFormatVersion << "|cells=";
  bool first = true;
  for (const Cell& c : g.cells) {
    text << (first ? "" : ",") << cell_tag(c) << ':' << c.size();
    first = false;
  }
  if (g.cells.empty()) text << "plain:" << g.nverts;
  text << "|exps=";
  for (std::size_t i = 0; i < g.exponent_values.size(); ++i) text << (i ? "," : "") << g.exponent_values[i];
  text << "|adj=";
  const auto& form = search.best_form();
  const auto& adj = search.adjacency();
  std::size_t k = 0;
  for (std::size_t i = 0; i < lab.size(); ++i) {
    text << (i ? ";" : "") << i << ':';
    const std::size_t deg = adj[lab[i]].size();
    for (std::size_t d = 0; d < deg; ++d) text << (d ? "," : "") << form[k++];
  }

  out.form.text = text.str();
  out.form.key = sha256_hex(out.form.text);
  out.form.counts = detail::counts_of(g.cells);
  for (const Cell& c : g.cells)
    if (c.kind == CellKind::exponent) out.form.n_degree += static_cast<std::uint64_t>(c.exponent) * c.size();
  out.form.degrees = g.exponent_values;

  out.automorphisms = search.automorphisms();
  out.stats = search.stats();
  if (const Cell* vars = g.find_cell(CellKind::variables); vars && vars->size() > 0) {
    std::set<std::vector<std::size_t>> seen;
    for (const auto& gamma : out.automorphisms) {
      std::vector<std::size_t> proj(vars->size());
      bool identity = true;
      for (std::size_t i = 0; i < proj.size(); ++i) {
        const Vertex img = gamma[vars->begin + i];
        if (img < vars->begin || img >= vars->end) throw Error("automorphism left the variables cell");
        proj[i] = img - vars->begin;
        identity = identity && proj[i] == i;
      }
      if (!identity && seen.insert(proj).second) out.gens.generators.push_back(std::move(proj));
    }
  }
  return out;
}

struct SystemCanon {
  CanonicalForm form;
  SymmetryGenerators gens;
};

inline SystemCanon canonical_form_of_family(const SupportFamily& fam, const CanonOptions& opts = {}) {
  Labeling l = canonical_labeling(encode_partitioned(fam), opts);
  return {std::move(l.form), std::move(l.gens)};
}

inline SystemCanon canonical_form_of_system(const PolySystem& sys, const CanonOptions& opts = {}) {
  return canonical_form_of_family(support_family(sys), opts);
}

inline bool systems_isomorphic(const PolySystem& a, const PolySystem& b, const CanonOptions& opts = {}) {
  if (a.nvars() != b.nvars() || a.npolys() != b.npolys()) return false;
  return canonical_form_of_system(a, opts).form.key == canonical_form_of_system(b, opts).form.key;
}

// Plain-graph isomorphism through the incidence-matrix polynomial of each graph.
inline bool graphs_isomorphic_via_poly(const EncodedGraph& g, const EncodedGraph& h) {
  if (!g.is_plain() || !h.is_plain())
    throw InvalidArgument("graphs_isomorphic_via_poly expects loop-free graphs with a single trivial cell");
  // No edges means no columns and hence no polynomial; only the vertex count is left.
  if (g.edges.empty() || h.edges.empty()) return g.edges.empty() && h.edges.empty() && g.nverts == h.nverts;
  const PolySystem pg = incidence_to_poly(incidence_matrix(g));
  const PolySystem ph = incidence_to_poly(incidence_matrix(h));
  return canonical_form_of_system(pg).form.key == canonical_form_of_system(ph).form.key;
}

// True when permuting the family's variables by `perm` leaves it unchanged
// as a multiset of support sets.
inline bool fixes_family(const SupportFamily& fam, std::span<const std::size_t> perm) {
  return same_family(permute_family(fam, perm), fam);
}

}  // namespace polyclass

#pragma once

// Helpers shared by the unit and acceptance suites: seeded permutations,
// scrambled copies of systems, the small random corpus and independent
// reference computations used as oracles.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyclass/generators.hpp"
#include "polyclass/graph.hpp"
#include "polyclass/poly.hpp"

namespace polyclass::testing {

inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline std::vector<std::size_t> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[draw(rng, 0, i - 1)]);
  return p;
}

inline std::vector<std::size_t> inverse(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

// Fresh variable names, term order shuffled within every polynomial.
inline PolySystem rename_and_shuffle(PolySystem s, std::mt19937_64& rng) {
  const auto names = random_perm(s.nvars(), rng);
  for (std::size_t i = 0; i < s.nvars(); ++i) s.vars[i] = "v" + std::to_string(names[i]) + "_" + std::to_string(rng() % 97);
  for (auto& p : s.polys) {
    const auto order = random_perm(p.terms.size(), rng);
    std::vector<Term> terms(p.terms.size());
    for (std::size_t i = 0; i < order.size(); ++i) terms[order[i]] = p.terms[i];
    p.terms = std::move(terms);
  }
  return s;
}

// Random variable and equation permutation plus renaming.
inline PolySystem scramble(const PolySystem& s, std::mt19937_64& rng) {
  const auto vp = random_perm(s.nvars(), rng);
  const auto ep = random_perm(s.npolys(), rng);
  return rename_and_shuffle(permute_system(s, vp, ep), rng);
}

// Systems with at most 4 variables, 3 equations and total degree 3. About a
// third are scrambled copies of earlier members so that isomorphic pairs
// actually occur.
inline std::vector<PolySystem> small_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PolySystem> out;
  while (out.size() < count) {
    if (!out.empty() && draw(rng, 0, 2) == 0) {
      out.push_back(scramble(out[draw(rng, 0, out.size() - 1)], rng));
      continue;
    }
    out.push_back(gen_random(draw(rng, 1, 4), draw(rng, 1, 3), draw(rng, 1, 4), draw(rng, 1, 3), rng()));
  }
  return out;
}

// Isomorphism invariant used to bucket candidate pairs.
inline std::string family_bucket(const SupportFamily& f) {
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> eqs;
  for (const auto& s : f.supports) {
    std::vector<std::size_t> degs;
    for (const auto& t : s) degs.push_back(std::accumulate(t.begin(), t.end(), std::size_t{0}));
    std::sort(degs.begin(), degs.end());
    eqs.emplace_back(s.size(), std::move(degs));
  }
  std::sort(eqs.begin(), eqs.end());
  std::string key = std::to_string(f.nvars) + "/" + std::to_string(f.supports.size());
  for (const auto& [n, degs] : eqs) {
    key += "|" + std::to_string(n) + ":";
    for (auto d : degs) key += std::to_string(d) + ",";
  }
  return key;
}

// Random simple graph with at least one edge.
inline EncodedGraph random_graph(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  const std::size_t density = draw(rng, 20, 70);
  while (edges.empty()) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (draw(rng, 0, 99) < density) edges.emplace_back(u, v);
  }
  return make_plain_graph(n, edges);
}

inline EncodedGraph relabel(const EncodedGraph& g, const std::vector<std::size_t>& p) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(static_cast<Vertex>(p[u]), static_cast<Vertex>(p[v]));
  return make_plain_graph(g.nverts, edges);
}

// Naive colour refinement: recolour by (colour, sorted neighbour colours)
// until the number of colours stops growing. Returns the set partition as
// sorted vertex lists, sorted.
inline std::vector<std::vector<Vertex>> naive_color_refinement(const EncodedGraph& g,
                                                               const std::vector<std::vector<Vertex>>& cells) {
  std::vector<std::vector<Vertex>> adj(g.nverts);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::size_t> color(g.nverts, 0);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (Vertex v : cells[c]) color[v] = c;
  std::size_t ncolors = cells.size();
  while (true) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::size_t> next(g.nverts);
    for (std::size_t v = 0; v < g.nverts; ++v) {
      std::vector<std::size_t> nc;
      for (Vertex u : adj[v]) nc.push_back(color[u]);
      std::sort(nc.begin(), nc.end());
      auto [it, _] = ids.emplace(std::make_pair(color[v], nc), ids.size());
      next[v] = it->second;
    }
    color = std::move(next);
    if (ids.size() == ncolors) break;
    ncolors = ids.size();
  }
  std::map<std::size_t, std::vector<Vertex>> groups;
  for (std::size_t v = 0; v < g.nverts; ++v) groups[color[v]].push_back(static_cast<Vertex>(v));
  std::vector<std::vector<Vertex>> out;
  for (auto& [c, vs] : groups) out.push_back(vs);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<Vertex>> as_set_partition(std::vector<std::vector<Vertex>> cells) {
  for (auto& c : cells) std::sort(c.begin(), c.end());
  std::sort(cells.begin(), cells.end());
  return cells;
}

// Closure of a set of permutations under composition; stops at `limit`.
inline std::set<std::vector<std::size_t>> generated_group(std::size_t n,
                                                          const std::vector<std::vector<std::size_t>>& gens,
                                                          std::size_t limit = 50000) {
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::set<std::vector<std::size_t>> seen{id};
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty() && seen.size() < limit) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        std::vector<std::size_t> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = g[p[i]];
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

inline std::vector<std::size_t> cyclic_shift(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

inline std::vector<std::size_t> transposition(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::swap(p[a], p[b]);
  return p;
}

}  // namespace polyclass::testing

#pragma once

// Exhaustive isomorphism checks for small instances. These are the ground
// truth the canonical labeling is tested against, so they share no code
// with it beyond the basic data types.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyclass/error.hpp"
#include "polyclass/graph.hpp"
#include "polyclass/poly.hpp"

namespace polyclass::oracle {

inline constexpr std::size_t kMaxOracleVars = 8;
inline constexpr std::size_t kMaxOracleSupports = 6;
inline constexpr std::size_t kMaxOracleVertices = 8;

namespace detail {

inline std::vector<std::vector<ExponentTuple>> sorted_supports(const SupportFamily& f,
                                                               const std::vector<std::size_t>* perm) {
  std::vector<std::vector<ExponentTuple>> out;
  for (const auto& s : f.supports) {
    std::vector<ExponentTuple> set;
    for (const auto& t : s) {
      if (!perm) {
        set.push_back(t);
        continue;
      }
      ExponentTuple e(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) e[(*perm)[i]] = t[i];
      set.push_back(std::move(e));
    }
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Tries every variable permutation; for each one the support sets are
// matched as multisets by sorting.
inline bool brute_force_family_isomorphic(const SupportFamily& a, const SupportFamily& b) {
  for (const SupportFamily* f : {&a, &b}) {
    if (f->nvars > kMaxOracleVars)
      throw GuardExceeded("oracle supports at most " + std::to_string(kMaxOracleVars) + " variables");
    if (f->supports.size() > kMaxOracleSupports)
      throw GuardExceeded("oracle supports at most " + std::to_string(kMaxOracleSupports) + " support sets");
  }
  if (a.nvars != b.nvars || a.supports.size() != b.supports.size()) return false;
  const auto target = detail::sorted_supports(b, nullptr);
  std::vector<std::size_t> perm(a.nvars);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    if (detail::sorted_supports(a, &perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Tries every vertex bijection, honoring loop multiplicities. Cells are
// ignored: the oracle decides plain (uncolored) isomorphism.
inline bool brute_force_graph_isomorphic(const EncodedGraph& g, const EncodedGraph& h) {
  for (const EncodedGraph* x : {&g, &h})
    if (x->nverts > kMaxOracleVertices)
      throw GuardExceeded("oracle supports at most " + std::to_string(kMaxOracleVertices) + " vertices");
  if (g.nverts != h.nverts || g.edges.size() != h.edges.size()) return false;
  const std::size_t n = g.nverts;
  std::vector<std::vector<bool>> hadj(n, std::vector<bool>(n, false));
  for (auto [u, v] : h.edges) hadj[u][v] = hadj[v][u] = true;
  auto loops = [n](const EncodedGraph& x, std::size_t v) {
    return x.loop_mult.size() == n ? x.loop_mult[v] : 0u;
  };
  std::vector<std::size_t> phi(n);
  std::iota(phi.begin(), phi.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) ok = loops(g, v) == loops(h, phi[v]);
    for (auto it = g.edges.begin(); ok && it != g.edges.end(); ++it) ok = hadj[phi[it->first]][phi[it->second]];
    if (ok) return true;
  } while (std::next_permutation(phi.begin(), phi.end()));
  return false;
}

// The same graph with every self-loop removed and the cells collapsed into one.
inline EncodedGraph strip_loops(const EncodedGraph& g) {
  return make_plain_graph(g.nverts, g.edges);
}

}  // namespace polyclass::oracle

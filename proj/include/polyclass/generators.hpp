#pragma once

// Benchmark and fuzz system generators. Every generator is a pure function of
// its arguments.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "polyclass/error.hpp"
#include "polyclass/poly.hpp"

namespace polyclass {

inline constexpr std::uint64_t kDefaultNashSeed = 20150601;

namespace detail {

// Uniform integer in [lo, hi]. Plain modulo keeps the stream identical across
// standard library implementations.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline std::vector<std::string> indexed_names(const std::string& stem, std::size_t first, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

// Collects terms in order of first appearance, merging equal exponents.
class TermBuilder {
public:
  explicit TermBuilder(std::size_t nvars) : nvars_(nvars) {}

  void add(const ExponentTuple& e, const Rational& c) {
    auto [it, inserted] = where_.emplace(e, poly_.terms.size());
    if (inserted) {
      poly_.terms.push_back({c, e});
    } else {
      poly_.terms[it->second].coeff += c;
    }
  }

  Polynomial take() {
    std::erase_if(poly_.terms, [](const Term& t) { return t.coeff == 0; });
    return std::move(poly_);
  }

  std::size_t nvars() const { return nvars_; }

private:
  std::size_t nvars_;
  Polynomial poly_;
  std::map<ExponentTuple, std::size_t> where_;
};

}  // namespace detail

// Cyclic n-roots: for k = 0..n-2 the sum of all products of k+1 cyclically
// consecutive variables, then x1*...*xn - 1.
inline PolySystem gen_cyclic(std::size_t n) {
  if (n < 2) throw InvalidArgument("cyclic systems need n >= 2");
  PolySystem sys;
  sys.vars = detail::indexed_names("x", 1, n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    detail::TermBuilder b(n);
    for (std::size_t i = 0; i < n; ++i) {
      ExponentTuple e(n, 0);
      for (std::size_t j = i; j <= i + k; ++j) e[j % n] += 1;
      b.add(e, 1);
    }
    sys.polys.push_back(b.take());
  }
  detail::TermBuilder last(n);
  last.add(ExponentTuple(n, 1), 1);
  last.add(ExponentTuple(n, 0), -1);
  sys.polys.push_back(last.take());
  return sys;
}

// Equation i carries every squarefree monomial in the variables other than
// p_i, constant included, with generic coefficients in [1, 1000].
inline PolySystem gen_nash(std::size_t n, std::uint64_t seed = kDefaultNashSeed) {
  if (n < 2) throw InvalidArgument("Nash systems need n >= 2");
  if (n > 24) throw InvalidArgument("Nash systems are limited to n <= 24");
  std::mt19937_64 rng(seed);
  PolySystem sys;
  sys.vars = detail::indexed_names("p", 1, n);
  const std::size_t others = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    detail::TermBuilder b(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others); ++mask) {
      ExponentTuple e(n, 0);
      std::size_t bit = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == i) continue;
        if (mask >> bit & 1) e[v] = 1;
        ++bit;
      }
      b.add(e, Rational(detail::draw(rng, 1, 1000)));
    }
    sys.polys.push_back(b.take());
  }
  return sys;
}

// Katsura's magnetism system in u0..un:
//   sum_{l=-n}^{n} u_|l| u_|m-l| - u_m = 0   for m = 0..n-1
//   u0 + 2 (u1 + ... + un) - 1 = 0
inline PolySystem gen_katsura(std::size_t n) {
  if (n < 1) throw InvalidArgument("Katsura systems need n >= 1");
  const std::size_t nv = n + 1;
  PolySystem sys;
  sys.vars = detail::indexed_names("u", 0, nv);
  const auto sn = static_cast<long long>(n);
  for (long long m = 0; m < sn; ++m) {
    detail::TermBuilder b(nv);
    for (long long l = -sn; l <= sn; ++l) {
      const long long a = l < 0 ? -l : l;
      const long long c = m - l < 0 ? l - m : m - l;
      if (c > sn) continue;
      ExponentTuple e(nv, 0);
      e[static_cast<std::size_t>(a)] += 1;
      e[static_cast<std::size_t>(c)] += 1;
      b.add(e, 1);
    }
    ExponentTuple lin(nv, 0);
    lin[static_cast<std::size_t>(m)] = 1;
    b.add(lin, -1);
    sys.polys.push_back(b.take());
  }
  detail::TermBuilder last(nv);
  for (std::size_t l = 0; l < nv; ++l) {
    ExponentTuple e(nv, 0);
    e[l] = 1;
    last.add(e, l == 0 ? 1 : 2);
  }
  last.add(ExponentTuple(nv, 0), -1);
  sys.polys.push_back(last.take());
  return sys;
}

// Random system: each equation gets 1..max_terms distinct monomials of total
// degree <= max_degree and nonzero integer coefficients in [-9, 9].
inline PolySystem gen_random(std::size_t nvars, std::size_t neqs, std::size_t max_terms, std::size_t max_degree,
                             std::uint64_t seed) {
  if (nvars == 0 || neqs == 0 || max_terms == 0 || max_degree == 0)
    throw InvalidArgument("random system bounds must all be at least 1");
  std::mt19937_64 rng(seed);
  // number of monomials in nvars variables of total degree <= max_degree
  std::uint64_t space = 1;
  for (std::size_t i = 1; i <= nvars; ++i) {
    space = space * (max_degree + i) / i;
    if (space > 1'000'000) break;
  }
  PolySystem sys;
  sys.vars = detail::indexed_names("x", 1, nvars);
  for (std::size_t j = 0; j < neqs; ++j) {
    auto want = static_cast<std::size_t>(detail::draw(rng, 1, static_cast<std::int64_t>(max_terms)));
    want = static_cast<std::size_t>(std::min<std::uint64_t>(want, space));
    std::set<ExponentTuple> seen;
    Polynomial p;
    while (p.terms.size() < want) {
      ExponentTuple e(nvars);
      std::size_t total = 0;
      for (auto& x : e) {
        x = static_cast<Exponent>(detail::draw(rng, 0, static_cast<std::int64_t>(max_degree)));
        total += x;
      }
      if (total > max_degree || !seen.insert(e).second) continue;
      std::int64_t c = detail::draw(rng, 1, 9);
      if (detail::draw(rng, 0, 1)) c = -c;
      p.terms.push_back({Rational(c), std::move(e)});
    }
    sys.polys.push_back(std::move(p));
  }
  return sys;
}

}  // namespace polyclass

#pragma once

// Polynomial systems: representation, the `.pols` text format, support
// families and variable/equation permutations.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyclass/error.hpp"

namespace polyclass {

using Rational = boost::multiprecision::cpp_rational;
using Exponent = std::uint32_t;
using ExponentTuple = std::vector<Exponent>;

inline constexpr Exponent kMaxExponent = 2147483647u;

struct Term {
  Rational coeff;
  ExponentTuple expo;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Polynomial {
  std::vector<Term> terms;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct PolySystem {
  std::vector<std::string> vars;
  std::vector<Polynomial> polys;

  std::size_t nvars() const noexcept { return vars.size(); }
  std::size_t npolys() const noexcept { return polys.size(); }

  friend bool operator==(const PolySystem&, const PolySystem&) = default;
};

// Multiset of support sets. Each support set is kept sorted; the outer
// sequence keeps equation order, so use same_family() for multiset equality.
struct SupportFamily {
  std::size_t nvars = 0;
  std::vector<std::vector<ExponentTuple>> supports;

  friend bool operator==(const SupportFamily&, const SupportFamily&) = default;
};

inline bool is_valid_var_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

namespace detail {

enum class Tok { ident, integer, slash, plus, minus, star, caret, semicolon, colon, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "", line_, col_});
        return out;
      }
      const std::size_t line = line_, col = col_;
      const char c = src_[pos_];
      auto uc = static_cast<unsigned char>(c);
      if (std::isalpha(uc) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), line, col});
        continue;
      }
      if (std::isdigit(uc)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
          throw ParseError("floating-point literals are not supported", line, col);
        out.push_back({Tok::integer, std::string(src_.substr(start, pos_ - start)), line, col});
        continue;
      }
      Tok kind;
      switch (c) {
        case '/': kind = Tok::slash; break;
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '*': kind = Tok::star; break;
        case '^': kind = Tok::caret; break;
        case ';': kind = Tok::semicolon; break;
        case ':': kind = Tok::colon; break;
        case ',': kind = Tok::comma; break;
        case '.': throw ParseError("floating-point literals are not supported", line, col);
        case '(':
        case ')': throw ParseError("parentheses are not supported; write polynomials in expanded form", line, col);
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      advance();
      out.push_back({kind, std::string(1, c), line, col});
    }
  }

private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct SparseTerm {
  Rational coeff;
  std::map<std::size_t, std::uint64_t> powers;  // variable index -> exponent
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PolySystem run() {
    if (peek().kind == Tok::ident && peek().text == "vars" && peek(1).kind == Tok::colon) {
      parse_header();
    }
    std::vector<std::vector<SparseTerm>> polys;
    while (peek().kind != Tok::end) polys.push_back(parse_polynomial());
    if (polys.empty()) {
      const Token& t = peek();
      throw ParseError("system has no polynomials", t.line, t.column);
    }

    PolySystem sys;
    sys.vars = vars_;
    const std::size_t n = vars_.size();
    for (auto& sparse : polys) {
      Polynomial p;
      p.terms.reserve(sparse.size());
      for (auto& st : sparse) {
        ExponentTuple e(n, 0);
        for (auto [v, k] : st.powers) e[v] = static_cast<Exponent>(k);
        p.terms.push_back({std::move(st.coeff), std::move(e)});
      }
      sys.polys.push_back(std::move(p));
    }
    return sys;
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }

  const Token& expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) fail(std::string("expected ") + what, t);
    return take();
  }

  void parse_header() {
    take();  // vars
    take();  // :
    declared_ = true;
    if (peek().kind == Tok::semicolon) {
      take();
      return;
    }
    while (true) {
      const Token& id = expect(Tok::ident, "variable name");
      if (index_.count(id.text)) fail("duplicate variable declaration '" + id.text + "'", id);
      index_.emplace(id.text, vars_.size());
      vars_.push_back(id.text);
      if (peek().kind == Tok::comma) {
        take();
        continue;
      }
      expect(Tok::semicolon, "',' or ';' after variable name");
      return;
    }
  }

  std::size_t variable(const Token& id) {
    auto it = index_.find(id.text);
    if (it != index_.end()) return it->second;
    if (declared_) fail("undeclared variable '" + id.text + "'", id);
    index_.emplace(id.text, vars_.size());
    vars_.push_back(id.text);
    return vars_.size() - 1;
  }

  static std::uint64_t parse_exponent(const Token& t) {
    std::uint64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v > kMaxExponent) throw ParseError("exponent overflow (maximum 2147483647)", t.line, t.column);
    }
    return v;
  }

  SparseTerm parse_term(bool negative) {
    SparseTerm term{Rational(negative ? -1 : 1), {}};
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::integer) {
        take();
        boost::multiprecision::cpp_int num(t.text);
        boost::multiprecision::cpp_int den(1);
        if (peek().kind == Tok::slash) {
          take();
          const Token& d = expect(Tok::integer, "integer denominator after '/'");
          den = boost::multiprecision::cpp_int(d.text);
          if (den == 0) fail("zero denominator", d);
        }
        term.coeff *= Rational(num, den);
      } else if (t.kind == Tok::ident) {
        take();
        const std::size_t v = variable(t);
        std::uint64_t k = 1;
        if (peek().kind == Tok::caret) {
          take();
          const Token& e = peek();
          if (e.kind == Tok::minus) fail("negative exponents are not allowed", e);
          k = parse_exponent(expect(Tok::integer, "non-negative integer exponent after '^'"));
        }
        std::uint64_t& slot = term.powers[v];
        slot += k;
        if (slot > kMaxExponent) fail("exponent overflow (maximum 2147483647)", t);
      } else {
        fail("expected a number or a variable", t);
      }
      if (peek().kind != Tok::star) return term;
      take();
    }
  }

  std::vector<SparseTerm> parse_polynomial() {
    const Token start = peek();
    std::vector<SparseTerm> terms;
    std::map<std::map<std::size_t, std::uint64_t>, std::size_t> where;
    auto add = [&](SparseTerm t) {
      for (auto it = t.powers.begin(); it != t.powers.end();) {
        it = it->second == 0 ? t.powers.erase(it) : std::next(it);
      }
      auto [it, inserted] = where.emplace(t.powers, terms.size());
      if (inserted) {
        terms.push_back(std::move(t));
      } else {
        terms[it->second].coeff += t.coeff;
      }
    };

    bool negative = false;
    if (peek().kind == Tok::plus || peek().kind == Tok::minus) negative = take().kind == Tok::minus;
    add(parse_term(negative));
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      negative = take().kind == Tok::minus;
      add(parse_term(negative));
    }
    const Token& t = peek();
    if (t.kind == Tok::end) fail("missing ';' at end of polynomial", t);
    if (t.kind != Tok::semicolon) {
      if (t.kind == Tok::ident || t.kind == Tok::integer)
        fail("expected an operator (implicit multiplication is not allowed)", t);
      fail("expected '+', '-', '*' or ';'", t);
    }
    take();

    std::erase_if(terms, [](const SparseTerm& s) { return s.coeff == 0; });
    if (terms.empty()) fail("polynomial has no terms after merging", start);
    return terms;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool declared_ = false;
  std::vector<std::string> vars_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline void check_permutation(std::span<const std::size_t> perm, std::size_t n, const char* what) {
  if (perm.size() != n)
    throw InvalidArgument(std::string(what) + " permutation has size " + std::to_string(perm.size()) +
                          ", expected " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw InvalidArgument(std::string(what) + " permutation is not a bijection");
    seen[p] = true;
  }
}

}  // namespace detail

inline PolySystem parse_system(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).run();
}

inline std::string format_system(const PolySystem& sys) {
  std::ostringstream out;
  if (!sys.vars.empty()) {
    out << "vars: ";
    for (std::size_t i = 0; i < sys.vars.size(); ++i) out << (i ? ", " : "") << sys.vars[i];
    out << ";\n";
  }
  for (const Polynomial& p : sys.polys) {
    bool first = true;
    for (const Term& t : p.terms) {
      const bool neg = t.coeff < 0;
      const Rational mag = neg ? Rational(-t.coeff) : t.coeff;
      if (first) {
        if (neg) out << '-';
      } else {
        out << (neg ? " - " : " + ");
      }
      first = false;

      bool wrote = false;
      const bool constant = std::all_of(t.expo.begin(), t.expo.end(), [](Exponent e) { return e == 0; });
      if (mag != 1 || constant) {
        out << mag.str();
        wrote = true;
      }
      for (std::size_t v = 0; v < t.expo.size(); ++v) {
        if (t.expo[v] == 0) continue;
        if (wrote) out << '*';
        out << sys.vars[v];
        if (t.expo[v] != 1) out << '^' << t.expo[v];
        wrote = true;
      }
    }
    out << ";\n";
  }
  std::string s = out.str();
  if (sys.vars.empty() && sys.polys.size() == 1) s.pop_back();  // "5;" stays on one line
  return s;
}

inline SupportFamily support_family(const PolySystem& sys) {
  SupportFamily fam;
  fam.nvars = sys.nvars();
  fam.supports.reserve(sys.polys.size());
  for (const Polynomial& p : sys.polys) {
    std::vector<ExponentTuple> s;
    s.reserve(p.terms.size());
    for (const Term& t : p.terms) s.push_back(t.expo);
    std::sort(s.begin(), s.end());
    fam.supports.push_back(std::move(s));
  }
  return fam;
}

// Variable i moves to position var_perm[i]; equation j moves to eq_perm[j].
inline PolySystem permute_system(const PolySystem& sys, std::span<const std::size_t> var_perm,
                                 std::span<const std::size_t> eq_perm) {
  detail::check_permutation(var_perm, sys.nvars(), "variable");
  detail::check_permutation(eq_perm, sys.npolys(), "equation");
  PolySystem out;
  out.vars.resize(sys.nvars());
  for (std::size_t i = 0; i < sys.nvars(); ++i) out.vars[var_perm[i]] = sys.vars[i];
  out.polys.resize(sys.npolys());
  for (std::size_t j = 0; j < sys.npolys(); ++j) {
    Polynomial p;
    p.terms.reserve(sys.polys[j].terms.size());
    for (const Term& t : sys.polys[j].terms) {
      ExponentTuple e(t.expo.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[var_perm[i]] = t.expo[i];
      p.terms.push_back({t.coeff, std::move(e)});
    }
    out.polys[eq_perm[j]] = std::move(p);
  }
  return out;
}

// Reindexes every tuple of the family: position i moves to var_perm[i].
inline SupportFamily permute_family(const SupportFamily& fam, std::span<const std::size_t> var_perm) {
  detail::check_permutation(var_perm, fam.nvars, "variable");
  SupportFamily out;
  out.nvars = fam.nvars;
  for (const auto& s : fam.supports) {
    std::vector<ExponentTuple> moved;
    moved.reserve(s.size());
    for (const ExponentTuple& t : s) {
      ExponentTuple e(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) e[var_perm[i]] = t[i];
      moved.push_back(std::move(e));
    }
    std::sort(moved.begin(), moved.end());
    out.supports.push_back(std::move(moved));
  }
  return out;
}

// Equation order forgotten: supports sorted as a multiset.
inline SupportFamily sorted_family(SupportFamily fam) {
  for (auto& s : fam.supports) std::sort(s.begin(), s.end());
  std::sort(fam.supports.begin(), fam.supports.end());
  return fam;
}

inline bool same_family(const SupportFamily& a, const SupportFamily& b) {
  return a.nvars == b.nvars && sorted_family(a) == sorted_family(b);
}

}  // namespace polyclass

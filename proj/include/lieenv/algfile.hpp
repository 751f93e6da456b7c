#ifndef LIEENV_ALGFILE_HPP
#define LIEENV_ALGFILE_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "env.hpp"
#include "gf.hpp"
#include "liealg.hpp"

namespace lieenv {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input that parses but fails a mathematical requirement (bad field
/// parameters, inconsistent structure constants, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed algebra description: the algebra itself plus named subspaces
/// (given in files as lists of basis names) and named elements. "L" is
/// bound to the full algebra unless the file defines it.
struct AlgebraFile {
  std::shared_ptr<const LieAlgebra> algebra;
  std::vector<std::pair<std::string, Subspace>> subspaces;
  std::vector<std::pair<std::string, EnvElement>> elements;

  const Subspace* find_subspace(const std::string& name) const {
    for (const auto& [n, s] : subspaces)
      if (n == name) return &s;
    return nullptr;
  }
  const EnvElement* find_element(const std::string& name) const {
    for (const auto& [n, e] : elements)
      if (n == name) return &e;
    return nullptr;
  }
};

namespace detail {

struct Token {
  enum Kind { Name, Int, Plus, Minus, Star, Caret, LParen, RParen, Comma, End } kind;
  std::string text;
  std::int64_t value = 0;
};

inline std::vector<Token> tokenize_expr(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t{Token::Int, s.substr(i, j - i)};
      t.value = std::stoll(t.text);
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Name, s.substr(i, j - i)});
      i = j;
      continue;
    }
    switch (c) {
      case '+': out.push_back({Token::Plus, "+"}); break;
      case '-': out.push_back({Token::Minus, "-"}); break;
      case '*': out.push_back({Token::Star, "*"}); break;
      case '^': out.push_back({Token::Caret, "^"}); break;
      case '(': out.push_back({Token::LParen, "("}); break;
      case ')': out.push_back({Token::RParen, ")"}); break;
      case ',': out.push_back({Token::Comma, ","}); break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' in expression");
    }
    ++i;
  }
  out.push_back({Token::End, ""});
  return out;
}

class ExprParser {
public:
  ExprParser(std::shared_ptr<const LieAlgebra> alg, const std::string& src)
      : alg_(std::move(alg)), toks_(tokenize_expr(src)) {}

  EnvElement parse() {
    EnvElement e = parse_expr();
    if (cur().kind != Token::End) throw ParseError("trailing input in expression");
    return e;
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  EnvElement parse_expr() {
    const Field& F = alg_->field();
    bool neg = false;
    if (cur().kind == Token::Minus) {
      neg = true;
      advance();
    } else if (cur().kind == Token::Plus) {
      advance();
    }
    EnvElement acc = parse_term();
    if (neg) acc = env_scale(F.neg(F.one()), acc);
    while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
      bool minus = cur().kind == Token::Minus;
      advance();
      EnvElement t = parse_term();
      acc = minus ? env_sub(acc, t) : env_add(acc, t);
    }
    return acc;
  }

  EnvElement parse_term() {
    EnvElement acc = parse_factor();
    while (cur().kind == Token::Star) {
      advance();
      acc = env_mul(acc, parse_factor());
    }
    return acc;
  }

  // factor := INT | '(' INT (',' INT)* ')' | NAME ('^' INT)?
  // parentheses introduce scalar coefficient tuples only, never grouping
  EnvElement parse_factor() {
    const Field& F = alg_->field();
    if (cur().kind == Token::Int) {
      std::int64_t v = cur().value;
      advance();
      return env_scalar(alg_, F.from_int(v));
    }
    if (cur().kind == Token::LParen) {
      advance();
      std::vector<std::int64_t> cs;
      for (;;) {
        if (cur().kind != Token::Int)
          throw ParseError("expected integer inside scalar tuple");
        cs.push_back(cur().value);
        advance();
        if (cur().kind == Token::Comma) {
          advance();
          continue;
        }
        break;
      }
      if (cur().kind != Token::RParen) throw ParseError("expected ')' after scalar tuple");
      advance();
      if (cs.size() > F.k())
        throw ParseError("scalar tuple longer than the extension degree");
      return env_scalar(alg_, F.make(cs));
    }
    if (cur().kind == Token::Name) {
      auto idx = alg_->index_of(cur().text);
      if (!idx) throw ParseError("unknown basis name " + cur().text);
      advance();
      std::uint32_t e = 1;
      if (cur().kind == Token::Caret) {
        advance();
        if (cur().kind != Token::Int || cur().value < 0)
          throw ParseError("expected nonnegative exponent after '^'");
        e = static_cast<std::uint32_t>(cur().value);
        advance();
      }
      Monomial m(alg_->dim(), 0);
      m[*idx] = e;
      TermMap t;
      t.emplace(std::move(m), alg_->field().one());
      return env_from_terms(alg_, std::move(t));
    }
    throw ParseError("expected scalar, tuple, or basis name");
  }

  std::shared_ptr<const LieAlgebra> alg_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace detail

/// Parses one expression over an existing algebra (used for CLI operands).
inline EnvElement parse_element(std::shared_ptr<const LieAlgebra> alg,
                                const std::string& src) {
  return detail::ExprParser(std::move(alg), src).parse();
}

inline AlgebraFile parse_algebra_file(const std::string& text,
                                      bool check_structure = true) {
  enum Section { None, FieldSec, BasisSec, BracketsSec, SubspacesSec, ElementsSec };
  Section sec = None;
  std::optional<std::uint32_t> p;
  std::vector<std::uint32_t> modulus;
  std::vector<std::string> names;
  std::vector<std::tuple<int, std::string, std::string>> bracket_lines;  // line, lhs, rhs
  std::vector<std::tuple<int, std::string, std::string>> subspace_lines;
  std::vector<std::tuple<int, std::string, std::string>> element_lines;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [](int line, const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "malformed section header");
      std::string name = line.substr(1, line.size() - 2);
      if (name == "field") sec = FieldSec;
      else if (name == "basis") sec = BasisSec;
      else if (name == "brackets") sec = BracketsSec;
      else if (name == "subspaces") sec = SubspacesSec;
      else if (name == "elements") sec = ElementsSec;
      else fail(lineno, "unknown section [" + name + "]");
      continue;
    }
    switch (sec) {
      case None:
        fail(lineno, "content before any section header");
        break;
      case FieldSec: {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string val = detail::trim(line.substr(eq + 1));
        try {
          if (key == "p") {
            p = static_cast<std::uint32_t>(std::stoul(val));
          } else if (key == "modulus") {
            for (const auto& tok : detail::split(val, ','))
              modulus.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
          } else {
            fail(lineno, "unknown field key " + key);
          }
        } catch (const std::invalid_argument&) {
          fail(lineno, "malformed number in field section");
        }
        break;
      }
      case BasisSec: {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
          for (char c : tok)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
              fail(lineno, "invalid basis name " + tok);
          if (std::isdigit(static_cast<unsigned char>(tok.front())))
            fail(lineno, "basis name may not start with a digit: " + tok);
          names.push_back(tok);
        }
        break;
      }
      case BracketsSec:
      case SubspacesSec:
      case ElementsSec: {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected name = value");
        std::string lhs = detail::trim(line.substr(0, eq));
        std::string rhs = detail::trim(line.substr(eq + 1));
        if (sec == BracketsSec) bracket_lines.emplace_back(lineno, lhs, rhs);
        if (sec == SubspacesSec) subspace_lines.emplace_back(lineno, lhs, rhs);
        if (sec == ElementsSec) element_lines.emplace_back(lineno, lhs, rhs);
        break;
      }
    }
  }

  if (!p) throw ParseError("missing [field] section with p = ...");
  std::shared_ptr<const Field> F;
  try {
    F = std::make_shared<const Field>(*p, modulus);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("field: ") + e.what());
  }
  if (names.empty()) throw ParseError("missing or empty [basis] section");

  // brackets are linear expressions; read them over a scratch abelian copy
  std::shared_ptr<const LieAlgebra> scratch = LieAlgebra::create(F, names, {});
  std::vector<BracketEntry> entries;
  for (const auto& [line, lhs, rhs] : bracket_lines) {
    auto parts = detail::split(lhs, ',');
    if (parts.size() != 2) fail(line, "bracket key must be two basis names");
    auto i = scratch->index_of(parts[0]);
    auto j = scratch->index_of(parts[1]);
    if (!i) fail(line, "unknown basis name " + parts[0]);
    if (!j) fail(line, "unknown basis name " + parts[1]);
    EnvElement e;
    try {
      e = parse_element(scratch, rhs);
    } catch (const ParseError& pe) {
      fail(line, pe.what());
    }
    std::vector<Scalar> coords(names.size(), F->zero());
    for (const auto& [m, c] : e.terms) {
      if (mono_degree(m) != 1)
        fail(line, "bracket right-hand side must be a linear combination of basis names");
      for (std::size_t t = 0; t < m.size(); ++t)
        if (m[t] == 1) coords[t] = c;
    }
    entries.push_back({*i, *j, std::move(coords)});
  }

  AlgebraFile out;
  try {
    out.algebra = LieAlgebra::create(F, names, entries);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (check_structure) {
    LieValidation val = out.algebra->validate();
    if (!val.ok()) {
      std::string msg = "structure constants are inconsistent:";
      for (const auto& issue : val.issues) msg += "\n  " + issue;
      throw ValidationError(msg);
    }
  }

  for (const auto& [line, name, rhs] : subspace_lines) {
    std::vector<LieVec> gens;
    for (const auto& tok : detail::split(rhs, ',')) {
      auto idx = out.algebra->index_of(tok);
      if (!idx) fail(line, "unknown basis name " + tok + " in subspace " + name);
      gens.push_back(out.algebra->basis_vec(*idx));
    }
    if (out.find_subspace(name)) fail(line, "duplicate subspace name " + name);
    out.subspaces.emplace_back(name, Subspace::from_vectors(out.algebra, gens));
  }
  if (!out.find_subspace("L"))
    out.subspaces.emplace_back("L", Subspace::full(out.algebra));

  for (const auto& [line, name, rhs] : element_lines) {
    if (out.find_element(name)) fail(line, "duplicate element name " + name);
    try {
      out.elements.emplace_back(name, parse_element(out.algebra, rhs));
    } catch (const ParseError& pe) {
      fail(line, pe.what());
    }
  }
  return out;
}

/// Canonical text form of the algebra itself (field, basis, brackets).
/// Stable under parse/serialize round trips; also the digest input.
inline std::string serialize_algebra(const LieAlgebra& A) {
  const Field& F = A.field();
  std::string s = "[field]\np = " + std::to_string(F.p()) + "\n";
  if (F.k() > 1) {
    s += "modulus = ";
    for (std::size_t i = 0; i < F.modulus().size(); ++i) {
      if (i) s += ",";
      s += std::to_string(F.modulus()[i]);
    }
    s += "\n";
  }
  s += "\n[basis]\n";
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (i) s += " ";
    s += A.name(i);
  }
  s += "\n\n[brackets]\n";
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i + 1; j < A.dim(); ++j) {
      LieVec w{A.shared_from_this(), A.bracket_basis(i, j)};
      if (!w.is_zero())
        s += A.name(i) + "," + A.name(j) + " = " + w.to_string() + "\n";
    }
  return s;
}

inline std::string serialize_algebra_file(const AlgebraFile& f) {
  std::string s = serialize_algebra(*f.algebra);
  const Field& F = f.algebra->field();
  std::string subs;
  for (const auto& [name, S] : f.subspaces) {
    if (name == "L" && S.dim() == f.algebra->dim()) continue;  // implicit
    std::string row_names;
    for (std::size_t i = 0; i < S.dim(); ++i) {
      const auto& row = S.echelon().rows()[i];
      std::size_t nz = 0, pos = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!F.is_zero(row[j])) {
          ++nz;
          pos = j;
        }
      if (nz != 1 || row[pos] != F.one())
        throw std::invalid_argument("subspace " + name +
                                    " is not spanned by basis vectors");
      if (!row_names.empty()) row_names += ",";
      row_names += f.algebra->name(pos);
    }
    subs += name + " = " + row_names + "\n";
  }
  if (!subs.empty()) s += "\n[subspaces]\n" + subs;
  std::string elems;
  for (const auto& [name, e] : f.elements) elems += name + " = " + e.to_string() + "\n";
  if (!elems.empty()) s += "\n[elements]\n" + elems;
  return s;
}

/// FNV-1a over the canonical algebra serialization, as 16 hex digits.
inline std::string algebra_digest(const LieAlgebra& A) {
  std::string s = serialize_algebra(A);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (std::size_t i = 16; i-- > 0;) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace lieenv

#endif

#pragma once

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nilcx/classify.hpp"
#include "nilcx/exterior.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/structures.hpp"

namespace nilcx {

struct ParseError : error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
              ": " + msg),
        line(line_),
        col(col_) {}
};

namespace io_detail {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  char next() {
    char c = s[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else
      ++col;
    return c;
  }
  void skip_space() {
    while (!done() && (peek() == ' ' || peek() == '\t')) next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }
};

inline std::string read_token(Cursor& c) {
  c.skip_space();
  std::string t;
  while (!c.done() && !std::isspace(static_cast<unsigned char>(c.peek())) &&
         c.peek() != '#')
    t.push_back(c.next());
  return t;
}

inline Rat parse_rational(const std::string& tok, const Cursor& at) {
  if (tok.empty()) at.fail("expected rational literal");
  std::size_t i = 0;
  bool neg = false;
  if (tok[i] == '+' || tok[i] == '-') neg = (tok[i++] == '-');
  std::string num, den;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
    num.push_back(tok[i++]);
  if (num.empty()) at.fail("malformed rational '" + tok + "'");
  if (i < tok.size() && tok[i] == '/') {
    ++i;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
      den.push_back(tok[i++]);
    if (den.empty()) at.fail("malformed rational '" + tok + "'");
  }
  if (i != tok.size()) at.fail("malformed rational '" + tok + "'");
  if (!den.empty() && Int(den) == 0) at.fail("zero denominator");
  Rat r = den.empty() ? Rat(Int(num)) : Rat(Int(num), Int(den));
  return neg ? -r : r;
}

}  // namespace io_detail

// Algebra file grammar:
//   # comment
//   dim N
//   basis X0 X1 ...              (optional; defaults to X0..X{N-1})
//   bracket Xi Xj = c Xk + c Xk ...
inline LieAlgebra parse_algebra(const std::string& text) {
  io_detail::Cursor c{text};
  int dim = -1;
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  struct BLine {
    int i, j;
    std::map<int, Rat> comps;
    int line;
  };
  std::vector<BLine> brackets;
  std::set<std::pair<int, int>> seen;
  auto label_index = [&](const std::string& tok) -> int {
    auto it = index.find(tok);
    if (it == index.end()) c.fail("unknown basis symbol '" + tok + "'");
    return it->second;
  };
  while (!c.done()) {
    c.skip_space();
    if (c.done()) break;
    if (c.peek() == '\n') {
      c.next();
      continue;
    }
    if (c.peek() == '#') {
      while (!c.done() && c.peek() != '\n') c.next();
      continue;
    }
    std::string kw = io_detail::read_token(c);
    if (kw == "dim") {
      if (dim != -1) c.fail("duplicate dim line");
      std::string t = io_detail::read_token(c);
      try {
        dim = std::stoi(t);
      } catch (...) {
        c.fail("malformed dimension '" + t + "'");
      }
      if (dim < 1 || dim > 30) c.fail("dimension out of range");
      for (int i = 0; i < dim; ++i) {
        labels.push_back("X" + std::to_string(i));
        index[labels.back()] = i;
      }
    } else if (kw == "basis") {
      if (dim == -1) c.fail("basis before dim");
      labels.clear();
      index.clear();
      for (int i = 0; i < dim; ++i) {
        std::string t = io_detail::read_token(c);
        if (t.empty()) c.fail("expected " + std::to_string(dim) + " basis symbols");
        if (index.count(t)) c.fail("duplicate basis symbol '" + t + "'");
        labels.push_back(t);
        index[t] = i;
      }
    } else if (kw == "bracket") {
      if (dim == -1) c.fail("bracket before dim");
      int i = label_index(io_detail::read_token(c));
      int j = label_index(io_detail::read_token(c));
      if (i >= j) c.fail("i < j required");
      if (!seen.insert({i, j}).second) c.fail("duplicate bracket line");
      if (io_detail::read_token(c) != "=") c.fail("expected '='");
      BLine b{i, j, {}, c.line};
      bool expect_term = true;
      while (true) {
        c.skip_space();
        if (c.done() || c.peek() == '\n' || c.peek() == '#') break;
        std::string t = io_detail::read_token(c);
        if (t == "+") {
          expect_term = true;
          continue;
        }
        if (!expect_term) c.fail("expected '+'");
        Rat coeff = io_detail::parse_rational(t, c);
        int k = label_index(io_detail::read_token(c));
        b.comps[k] += coeff;
        expect_term = false;
      }
      if (expect_term) c.fail("empty bracket right-hand side");
      brackets.push_back(b);
    } else {
      c.fail("unknown keyword '" + kw + "'");
    }
    while (!c.done() && c.peek() != '\n') {
      if (c.peek() == '#') {
        while (!c.done() && c.peek() != '\n') c.next();
        break;
      }
      if (!std::isspace(static_cast<unsigned char>(c.peek())))
        c.fail("trailing garbage");
      c.next();
    }
  }
  if (dim == -1) throw ParseError(c.line, c.col, "missing dim line");
  LieAlgebra g = LieAlgebra::raw(dim, labels);
  for (const auto& b : brackets)
    for (const auto& [k, coeff] : b.comps)
      if (coeff != 0) g.set_bracket(b.i, b.j, k, coeff);
  return g;
}

inline std::string print_algebra(const LieAlgebra& g) {
  std::ostringstream os;
  os << "dim " << g.dim() << "\n";
  os << "basis";
  for (const auto& l : g.labels()) os << " " << l;
  os << "\n";
  for (const auto& [ij, comps] : g.table()) {
    os << "bracket " << g.labels()[ij.first] << " " << g.labels()[ij.second] << " =";
    bool first = true;
    for (const auto& [k, c] : comps) {
      os << (first ? " " : " + ") << rat_str(c) << " " << g.labels()[k];
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

// Form expressions: sums of terms  [+|-] [rat] [i] w<k> [^ w<k> ...]
// e.g. "w0 + i w1", "2/3 w2 - i w5", "w0^w1 + w2^w3"
inline PForm parse_form_expr(const std::string& text, int dim) {
  io_detail::Cursor c{text};
  PForm total = PForm::zero(dim, 1);
  bool first_term = true;
  int deg = -1;
  auto skip = [&] {
    while (!c.done() && std::isspace(static_cast<unsigned char>(c.peek()))) c.next();
  };
  while (true) {
    skip();
    if (c.done()) break;
    Gauss sign(1);
    if (c.peek() == '+' || c.peek() == '-') {
      if (c.next() == '-') sign = Gauss(-1);
      skip();
    } else if (!first_term) {
      c.fail("expected '+' or '-'");
    }
    Gauss coeff = sign;
    if (!c.done() && (std::isdigit(static_cast<unsigned char>(c.peek())))) {
      std::string num;
      while (!c.done() && (std::isdigit(static_cast<unsigned char>(c.peek())) ||
                           c.peek() == '/'))
        num.push_back(c.next());
      coeff = coeff * Gauss(io_detail::parse_rational(num, c));
      skip();
      if (!c.done() && c.peek() == '*') {
        c.next();
        skip();
      }
    }
    if (!c.done() && c.peek() == 'i' &&
        (c.pos + 1 >= c.s.size() ||
         !std::isalnum(static_cast<unsigned char>(c.s[c.pos + 1])))) {
      c.next();
      coeff = coeff * Gauss::i();
      skip();
      if (!c.done() && c.peek() == '*') {
        c.next();
        skip();
      }
    }
    // wedge monomial
    std::vector<int> idx;
    while (true) {
      skip();
      if (c.done() || c.peek() != 'w') break;
      c.next();
      std::string num;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
        num.push_back(c.next());
      if (num.empty()) c.fail("expected basis index after 'w'");
      int k = std::stoi(num);
      if (k < 0 || k >= dim) c.fail("basis index out of range");
      idx.push_back(k);
      skip();
      if (!c.done() && c.peek() == '^') {
        c.next();
        continue;
      }
      break;
    }
    if (idx.empty()) c.fail("expected a basis form w<k>");
    if (deg == -1) {
      deg = static_cast<int>(idx.size());
      total = PForm::zero(dim, deg);
    } else if (static_cast<int>(idx.size()) != deg)
      c.fail("mixed degrees in form expression");
    // sort indices, track sign, reject repeats
    std::uint32_t mask = 0;
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (idx[a] == idx[b]) c.fail("repeated index in wedge monomial");
        if (idx[a] > idx[b]) ++inversions;
      }
      mask |= 1u << idx[a];
    }
    if (inversions % 2 == 1) coeff = Gauss(-1) * coeff;
    total.add_term(mask, coeff);
    first_term = false;
  }
  if (first_term) throw ParseError(1, 1, "empty form expression");
  return total;
}

inline std::string gvec_str(const GVecC& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < v.dim(); ++i)
    if (!v.x[i].is_zero()) {
      os << (first ? "" : " + ") << "(" << gauss_str(v.x[i]) << ") " << labels[i];
      first = false;
    }
  for (int i = 0; i < v.dim(); ++i)
    if (!v.xi[i].is_zero()) {
      os << (first ? "" : " + ") << "(" << gauss_str(v.xi[i]) << ") w" << i;
      first = false;
    }
  if (first) os << "0";
  return os.str();
}

// Generalized vector expressions: terms over X<k> (vector part) and w<k>
// (form part), with the same coefficient syntax as form expressions.
inline GVecC parse_gvec_expr(const std::string& text, int dim) {
  io_detail::Cursor c{text};
  GVecC v = GVecC::zero(dim);
  bool first_term = true;
  auto skip = [&] {
    while (!c.done() && std::isspace(static_cast<unsigned char>(c.peek()))) c.next();
  };
  while (true) {
    skip();
    if (c.done()) break;
    Gauss sign(1);
    if (c.peek() == '+' || c.peek() == '-') {
      if (c.next() == '-') sign = Gauss(-1);
      skip();
    } else if (!first_term)
      c.fail("expected '+' or '-'");
    Gauss coeff = sign;
    if (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
      std::string num;
      while (!c.done() &&
             (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '/'))
        num.push_back(c.next());
      coeff = coeff * Gauss(io_detail::parse_rational(num, c));
      skip();
    }
    if (!c.done() && c.peek() == 'i' &&
        (c.pos + 1 >= c.s.size() ||
         !std::isalnum(static_cast<unsigned char>(c.s[c.pos + 1])))) {
      c.next();
      coeff = coeff * Gauss::i();
      skip();
    }
    if (c.done() || (c.peek() != 'X' && c.peek() != 'w'))
      c.fail("expected X<k> or w<k>");
    bool vec = (c.next() == 'X');
    std::string num;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
      num.push_back(c.next());
    if (num.empty()) c.fail("expected basis index");
    int k = std::stoi(num);
    if (k < 0 || k >= dim) c.fail("basis index out of range");
    if (vec)
      v.x[k] += coeff;
    else
      v.xi[k] += coeff;
    first_term = false;
  }
  if (first_term) throw ParseError(1, 1, "empty expression");
  return v;
}

}  // namespace nilcx

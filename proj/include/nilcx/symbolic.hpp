#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nilcx/exterior.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/poly.hpp"
#include "nilcx/rational.hpp"

namespace nilcx {

// Sparse multivariate polynomial over Q(i). A monomial is the sorted list of
// its variable ids, with repetition for powers.
struct SPoly {
  using Mono = std::vector<int>;
  std::map<Mono, Gauss> t;

  SPoly() = default;
  explicit SPoly(const Gauss& c) {
    if (!c.is_zero()) t[{}] = c;
  }
  static SPoly var(int id) {
    SPoly p;
    p.t[{id}] = Gauss(1);
    return p;
  }
  bool is_zero() const { return t.empty(); }
  void add_term(const Mono& m, const Gauss& c) {
    if (c.is_zero()) return;
    auto it = t.find(m);
    if (it == t.end())
      t[m] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }
  friend SPoly operator+(const SPoly& a, const SPoly& b) {
    SPoly r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, c);
    return r;
  }
  friend SPoly operator-(const SPoly& a, const SPoly& b) {
    SPoly r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, Gauss(0) - c);
    return r;
  }
  friend SPoly operator*(const SPoly& a, const SPoly& b) {
    SPoly r;
    for (const auto& [ma, ca] : a.t)
      for (const auto& [mb, cb] : b.t) {
        Mono m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        std::sort(m.begin(), m.end());
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend SPoly operator*(const Gauss& c, const SPoly& a) { return SPoly(c) * a; }
  friend bool operator==(const SPoly& a, const SPoly& b) { return a.t == b.t; }

  std::set<int> vars() const {
    std::set<int> s;
    for (const auto& [m, c] : t) s.insert(m.begin(), m.end());
    return s;
  }
  SPoly subst_zero(int id) const {
    SPoly r;
    for (const auto& [m, c] : t)
      if (std::find(m.begin(), m.end(), id) == m.end()) r.add_term(m, c);
    return r;
  }
  SPoly subst(int id, const Gauss& val) const {
    SPoly r;
    for (const auto& [m, c] : t) {
      Gauss coeff = c;
      Mono rest;
      for (int v : m) {
        if (v == id)
          coeff = coeff * val;
        else
          rest.push_back(v);
      }
      r.add_term(rest, coeff);
    }
    return r;
  }
  // true when the polynomial is a single monomial c * v1 * v2 * ...
  bool single_term() const { return t.size() == 1; }
  // true when all monomials contain var id
  bool divisible_by(int id) const {
    for (const auto& [m, c] : t)
      if (std::find(m.begin(), m.end(), id) == m.end()) return false;
    return !t.empty();
  }
  SPoly divide_by_var(int id) const {
    SPoly r;
    for (const auto& [m, c] : t) {
      Mono rest = m;
      auto it = std::find(rest.begin(), rest.end(), id);
      if (it == rest.end()) throw error("not divisible");
      rest.erase(it);
      r.add_term(rest, c);
    }
    return r;
  }
  // linear in the variable set G: every monomial contains exactly one factor
  // from G, with multiplicity 1
  bool linear_in(const std::set<int>& g) const {
    for (const auto& [m, c] : t) {
      int count = 0;
      for (int v : m)
        if (g.count(v)) ++count;
      if (count != 1) return false;
    }
    return !t.empty();
  }
  SPoly coefficient_of(int id) const {
    SPoly r;
    for (const auto& [m, c] : t) {
      Mono rest = m;
      auto it = std::find(rest.begin(), rest.end(), id);
      if (it == rest.end()) continue;
      rest.erase(it);
      r.add_term(rest, c);
    }
    return r;
  }
  bool only_vars(const std::set<int>& allowed) const {
    for (int v : vars())
      if (!allowed.count(v)) return false;
    return true;
  }
  // view as a univariate polynomial in var id (all monomials powers of id)
  std::optional<GPoly> as_univariate(int id) const {
    GPoly p;
    for (const auto& [m, c] : t) {
      for (int v : m)
        if (v != id) return std::nullopt;
      std::size_t deg = m.size();
      if (p.c.size() <= deg) p.c.resize(deg + 1, Gauss(0));
      p.c[deg] += c;
    }
    p.trim();
    return p;
  }
};

inline std::string spoly_str(const SPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.t) {
    if (!first) os << " + ";
    first = false;
    bool unit = (c == Gauss(1)) && !m.empty();
    if (!unit) os << "(" << gauss_str(c) << ")";
    int i = 0;
    for (int v : m) {
      if (!unit || i) os << "*";
      os << names[v];
      ++i;
    }
  }
  return os.str();
}

// Differential form with SPoly coefficients (used for constraint extraction).
struct SForm {
  int n = 0;
  int deg = 0;
  std::map<std::uint32_t, SPoly> terms;

  static SForm zero(int n, int deg) { return {n, deg, {}}; }
  void add_term(std::uint32_t m, const SPoly& p) {
    if (p.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end())
      terms[m] = p;
    else {
      it->second = it->second + p;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  static SForm from_pform(const PForm& f) {
    SForm s = zero(f.n, f.deg);
    for (const auto& [m, c] : f.terms) s.terms[m] = SPoly(c);
    return s;
  }
};

inline SForm wedge(const SForm& a, const SForm& b) {
  if (a.n != b.n) throw error("ambient mismatch");
  SForm r = SForm::zero(a.n, a.deg + b.deg);
  for (const auto& [ma, pa] : a.terms)
    for (const auto& [mb, pb] : b.terms) {
      if (ma & mb) continue;
      SPoly p = pa * pb;
      if (wedge_sign(ma, mb) < 0) p = Gauss(-1) * p;
      r.add_term(ma | mb, p);
    }
  return r;
}

// d of a symbolic 1-form (coefficients are constants with respect to d)
inline SForm differential(const LieAlgebra& g, const SForm& a) {
  require_checked(g);
  if (a.deg != 1) throw error("symbolic d implemented for 1-forms");
  SForm r = SForm::zero(a.n, 2);
  for (const auto& [m, p] : a.terms) {
    int k = std::countr_zero(m);
    for (const auto& [ij, comps] : g.table()) {
      auto it = comps.find(k);
      if (it == comps.end()) continue;
      r.add_term((1u << ij.first) | (1u << ij.second), Gauss(-it->second) * p);
    }
  }
  return r;
}

}  // namespace nilcx

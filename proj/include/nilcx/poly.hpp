#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nilcx/rational.hpp"

namespace nilcx {

// Univariate polynomial, coefficients lowest degree first.
template <class F>
struct PolyT {
  std::vector<F> c;

  PolyT() = default;
  PolyT(std::initializer_list<F> init) : c(init) { trim(); }
  explicit PolyT(std::vector<F> v) : c(std::move(v)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == F(0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  F lead() const { return c.back(); }
  F at(const F& x) const {
    F v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }

  friend PolyT operator+(const PolyT& a, const PolyT& b) {
    PolyT r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend PolyT operator-(const PolyT& a, const PolyT& b) {
    PolyT r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return PolyT();
    PolyT r;
    r.c.assign(a.c.size() + b.c.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend PolyT operator*(const F& s, const PolyT& a) {
    PolyT r = a;
    for (auto& x : r.c) x = x * s;
    r.trim();
    return r;
  }
  friend bool operator==(const PolyT& a, const PolyT& b) { return a.c == b.c; }

  PolyT derivative() const {
    PolyT r;
    for (std::size_t i = 1; i < c.size(); ++i)
      r.c.push_back(F(static_cast<long>(i)) * c[i]);
    return r;
  }

  PolyT monic() const {
    if (is_zero()) return *this;
    F inv = F(1) / lead();
    return inv * *this;
  }
};

using Poly = PolyT<Rat>;
using GPoly = PolyT<Gauss>;

template <class F>
std::pair<PolyT<F>, PolyT<F>> divmod(const PolyT<F>& a, const PolyT<F>& b) {
  if (b.is_zero()) throw error("polynomial division by zero");
  PolyT<F> q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    F f = r.lead() / b.lead();
    PolyT<F> t;
    t.c.assign(d + 1, F(0));
    t.c[d] = f;
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

template <class F>
PolyT<F> poly_gcd(PolyT<F> a, PolyT<F> b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  return a.monic();
}

// p / gcd(p, p'): same distinct roots, all simple.
template <class F>
PolyT<F> square_free_part(const PolyT<F>& p) {
  if (p.is_zero()) throw error("indeterminate root count");
  if (p.degree() == 0) return p.monic();
  auto g = poly_gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

namespace detail {
inline int sign_at_neg_inf(const Poly& p) {
  int s = sign(p.lead());
  return (p.degree() % 2 == 0) ? s : -s;
}
inline int sign_changes(const std::vector<int>& signs) {
  int n = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++n;
    prev = s;
  }
  return n;
}
}  // namespace detail

// Number of distinct real roots, by Sturm's theorem on the square-free part.
inline int real_root_count(const Poly& p) {
  if (p.is_zero()) throw error("indeterminate root count");
  Poly q = square_free_part(p);
  if (q.degree() == 0) return 0;
  std::vector<Poly> chain{q, q.derivative()};
  while (!chain.back().is_zero()) {
    auto [quo, rem] = divmod(chain[chain.size() - 2], chain.back());
    (void)quo;
    chain.push_back(Rat(-1) * rem);
  }
  chain.pop_back();
  std::vector<int> at_minus, at_plus;
  for (const auto& f : chain) {
    at_minus.push_back(detail::sign_at_neg_inf(f));
    at_plus.push_back(sign(f.lead()));
  }
  return detail::sign_changes(at_minus) - detail::sign_changes(at_plus);
}

// True iff p has a root off the real line.
inline bool has_nonreal_root(const Poly& p) {
  if (p.is_zero()) throw error("indeterminate root count");
  if (p.degree() < 1) throw error("no roots");
  Poly q = square_free_part(p);
  return q.degree() > real_root_count(p);
}

inline Poly real_part(const GPoly& p) {
  Poly r;
  for (const auto& z : p.c) r.c.push_back(z.re);
  r.trim();
  return r;
}
inline Poly imag_part(const GPoly& p) {
  Poly r;
  for (const auto& z : p.c) r.c.push_back(z.im);
  r.trim();
  return r;
}
inline GPoly complexify(const Poly& p) {
  GPoly r;
  for (const auto& x : p.c) r.c.push_back(Gauss(x));
  return r;
}

// Real roots of a Q(i)-coefficient polynomial are the real roots of
// gcd(Re p, Im p) (of p itself when the coefficients are real).
inline Poly real_locus(const GPoly& p) {
  Poly re = real_part(p), im = imag_part(p);
  if (im.is_zero()) return re;
  if (re.is_zero()) return im;
  return poly_gcd(re, im);
}

inline int real_root_count_gauss(const GPoly& p) {
  Poly loc = real_locus(p);
  if (loc.is_zero() || loc.degree() < 1) return 0;
  return real_root_count(loc);
}

inline bool has_nonreal_root_gauss(const GPoly& p) {
  if (p.is_zero()) throw error("indeterminate root count");
  if (p.degree() < 1) throw error("no roots");
  return square_free_part(p).degree() > real_root_count_gauss(p);
}

// Roots lying in Q(i): exact for degree <= 2, then a small candidate scan.
inline std::vector<Gauss> gauss_roots(const GPoly& p) {
  std::vector<Gauss> roots;
  auto push = [&roots](const Gauss& z) {
    for (const auto& r : roots)
      if (r == z) return;
    roots.push_back(z);
  };
  GPoly q = square_free_part(p);
  if (q.degree() == 1) {
    push(-q.c[0] / q.c[1]);
  } else if (q.degree() == 2) {
    Gauss a = q.c[2], b = q.c[1], c0 = q.c[0];
    Gauss disc = b * b - Gauss(4) * a * c0;
    if (auto s = gauss_sqrt(disc)) {
      push((-b + *s) / (Gauss(2) * a));
      push((-b - *s) / (Gauss(2) * a));
    }
  } else if (q.degree() >= 3) {
    static const Rat cand[] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)};
    for (const auto& re : cand)
      for (const auto& im : cand)
        if (q.at(Gauss(re, im)).is_zero()) push(Gauss(re, im));
  }
  // deterministic order: positive imaginary part first, then lex
  std::sort(roots.begin(), roots.end(), [](const Gauss& x, const Gauss& y) {
    if ((x.im > 0) != (y.im > 0)) return x.im > 0;
    return x < y;
  });
  return roots;
}

template <class F>
std::string poly_str(const PolyT<F>& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (int d = p.degree(); d >= 0; --d) {
    const F& co = p.c[d];
    if (co == F(0)) continue;
    std::string cs;
    if constexpr (std::is_same_v<F, Gauss>) {
      cs = gauss_str(co);
    } else {
      cs = co.str();
    }
    std::string term;
    if (d == 0) {
      term = cs;
    } else {
      std::string xs = (d == 1) ? var : var + "^" + std::to_string(d);
      if (cs == "1")
        term = xs;
      else if (cs == "-1")
        term = "-" + xs;
      else if (cs.find('+') != std::string::npos ||
               (cs.find('-', 1) != std::string::npos))
        term = "(" + cs + ")*" + xs;
      else
        term = cs + "*" + xs;
    }
    if (first) {
      s = term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      s += " - " + term.substr(1);
    } else {
      s += " + " + term;
    }
  }
  return s;
}

}  // namespace nilcx

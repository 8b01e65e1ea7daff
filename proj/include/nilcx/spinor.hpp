#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilcx/exterior.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/matrix.hpp"
#include "nilcx/structures.hpp"

namespace nilcx {

// Element of the spinor space: a mixed-degree complex form, stored per degree.
struct Spinor {
  int n = 0;
  std::vector<PForm> comp;  // comp[d] has degree d; size n+1

  static Spinor zero(int n) {
    Spinor s;
    s.n = n;
    for (int d = 0; d <= n; ++d) s.comp.push_back(PForm::zero(n, d));
    return s;
  }
  static Spinor from_form(const PForm& f) {
    Spinor s = zero(f.n);
    s.comp[f.deg] = f;
    return s;
  }
  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }
  Spinor conj() const {
    Spinor s = *this;
    for (auto& c : s.comp) c = c.conj();
    return s;
  }
  friend Spinor operator+(const Spinor& a, const Spinor& b) {
    if (a.n != b.n) throw error("ambient mismatch");
    Spinor s = a;
    for (int d = 0; d <= a.n; ++d) s.comp[d] = s.comp[d] + b.comp[d];
    return s;
  }
  friend Spinor operator*(const Gauss& c, const Spinor& a) {
    Spinor s = a;
    for (auto& f : s.comp) f = c * f;
    return s;
  }
  std::vector<Gauss> flat() const {
    std::vector<Gauss> v(std::size_t(1) << n, Gauss(0));
    for (const auto& f : comp)
      for (const auto& [m, c] : f.terms) v[m] = c;
    return v;
  }
  static Spinor from_flat(int n, const std::vector<Gauss>& v) {
    Spinor s = zero(n);
    for (std::uint32_t m = 0; m < v.size(); ++m)
      if (!v[m].is_zero()) s.comp[std::popcount(m)].terms[m] = v[m];
    return s;
  }
};

// (X + xi) . rho = i_X rho + xi ^ rho
inline Spinor clifford_act(const GVecC& v, const Spinor& r) {
  if (v.dim() != r.n) throw error("ambient mismatch");
  Spinor out = Spinor::zero(r.n);
  PForm xi = PForm::one_form(v.xi);
  for (const auto& f : r.comp) {
    if (f.is_zero()) continue;
    PForm down = interior(v.x, f);
    if (!down.is_zero()) out.comp[down.deg] = out.comp[down.deg] + down;
    PForm up = wedge(xi, f);
    if (!up.is_zero()) out.comp[up.deg] = out.comp[up.deg] + up;
  }
  return out;
}

struct AnnihilatorResult {
  std::vector<GVecC> basis;  // row-reduced basis of L_rho
  bool pure = false;
};

inline AnnihilatorResult annihilator(const LieAlgebra& g, const Spinor& r) {
  require_checked(g);
  if (r.is_zero()) throw error("zero spinor");
  int n = g.dim();
  std::size_t dim_s = std::size_t(1) << n;
  // columns: the 2n generators of the double; rows: spinor components
  Mat<Gauss> a(dim_s, 2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    GVecC v = GVecC::zero(n);
    if (j < n)
      v.x[j] = Gauss(1);
    else
      v.xi[j - n] = Gauss(1);
    auto img = clifford_act(v, r).flat();
    for (std::size_t row = 0; row < dim_s; ++row) a(row, j) = img[row];
  }
  Mat<Gauss> ker = nullspace(a);
  AnnihilatorResult res;
  for (std::size_t i = 0; i < ker.rows; ++i) {
    std::vector<Gauss> v(2 * n);
    for (int c = 0; c < 2 * n; ++c) v[c] = ker(i, c);
    res.basis.push_back(GVecC::from_flat(v));
  }
  res.pure = (static_cast<int>(ker.rows) == n);
  for (std::size_t i = 0; i < res.basis.size(); ++i)
    for (std::size_t j = i; j < res.basis.size(); ++j)
      if (!pairing(res.basis[i], res.basis[j]).is_zero())
        throw error("annihilator not isotropic");  // impossible for nonzero rho
  return res;
}

// rho = Omega ^ exp(B + i w)
inline Spinor spinor_from_data(const std::vector<PForm>& omega, const PForm& b,
                               const PForm& w) {
  if (b.n != w.n) throw error("ambient mismatch");
  int n = b.n;
  PForm e = b + (Gauss::i() * w);
  Spinor s = Spinor::zero(n);
  PForm front = PForm::scalar(n, Gauss(1));
  for (const auto& th : omega) front = wedge(front, th);
  PForm power = PForm::scalar(n, Gauss(1));
  Rat fact(1);
  for (int k = 0;; ++k) {
    if (k > 0) {
      power = wedge(power, e);
      fact *= k;
    }
    if (power.is_zero()) break;
    PForm term = Gauss(Rat(1) / fact) * wedge(front, power);
    if (!term.is_zero()) s.comp[term.deg] = s.comp[term.deg] + term;
    if (power.deg >= n) break;
  }
  return s;
}

// condition (1): w^{n-k} ^ Omega ^ conj(Omega) != 0 (dim = 2n)
inline bool cond_nondegenerate(const LieAlgebra& g, const std::vector<PForm>& omega,
                               const PForm& w, int k) {
  require_checked(g);
  int dim = g.dim();
  if (dim % 2 != 0) throw error("even dimension required");
  if (static_cast<int>(omega.size()) != k) throw error("k must match Omega length");
  int power = dim / 2 - k;
  if (power < 0) throw error("k exceeds dim/2");
  PForm acc = PForm::scalar(dim, Gauss(1));
  for (int s = 0; s < power; ++s) acc = wedge(acc, w);
  for (const auto& th : omega) acc = wedge(acc, th);
  for (const auto& th : omega) acc = wedge(acc, th.conj());
  return !acc.is_zero();
}

struct IntegrabilityResult {
  bool closed = false;
  std::optional<GVecC> solution;
};

// condition (2): d rho = (X + xi) . rho, solved exactly for X + xi
inline IntegrabilityResult integrability(const LieAlgebra& g, const Spinor& r) {
  require_checked(g);
  if (r.is_zero()) throw error("zero spinor");
  int n = g.dim();
  Spinor dr = Spinor::zero(n);
  for (const auto& f : r.comp) {
    PForm df = differential(g, f);
    if (!df.is_zero()) dr.comp[df.deg] = dr.comp[df.deg] + df;
  }
  IntegrabilityResult res;
  if (dr.is_zero()) {
    res.closed = true;
    return res;
  }
  std::size_t dim_s = std::size_t(1) << n;
  Mat<Gauss> a(dim_s, 2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    GVecC v = GVecC::zero(n);
    if (j < n)
      v.x[j] = Gauss(1);
    else
      v.xi[j - n] = Gauss(1);
    auto img = clifford_act(v, r).flat();
    for (std::size_t row = 0; row < dim_s; ++row) a(row, j) = img[row];
  }
  auto sol = solve(a, dr.flat());
  if (sol) res.solution = GVecC::from_flat(*sol);
  return res;
}

// generator of the pure-spinor line U_L of a maximal isotropic L
inline Spinor spinor_line_from_L(const LieAlgebra& g, const std::vector<GVecC>& l) {
  require_checked(g);
  int n = g.dim();
  std::size_t dim_s = std::size_t(1) << n;
  Mat<Gauss> a(l.size() * dim_s, dim_s);
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t col = 0; col < dim_s; ++col) {
      // image of the basis spinor w_col under v_i
      Spinor basis = Spinor::zero(n);
      basis.comp[std::popcount(static_cast<std::uint32_t>(col))]
          .terms[static_cast<std::uint32_t>(col)] = Gauss(1);
      auto img = clifford_act(l[i], basis).flat();
      for (std::size_t row = 0; row < dim_s; ++row) a(i * dim_s + row, col) = img[row];
    }
  Mat<Gauss> ker = nullspace(a);
  if (ker.rows != 1) throw error("not maximal isotropic");
  std::vector<Gauss> v(dim_s);
  for (std::size_t c = 0; c < dim_s; ++c) v[c] = ker(0, c);
  return Spinor::from_flat(n, v);
}

// normalize by the first nonzero component in degree-lex order
inline Spinor spinor_normalize(const Spinor& s) {
  for (const auto& f : s.comp)
    for (const auto& [m, c] : f.terms) {
      Gauss inv = Gauss(1) / c;
      return inv * s;
    }
  return s;
}

inline bool spinor_projectively_equal(const Spinor& a, const Spinor& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  Spinor na = spinor_normalize(a), nb = spinor_normalize(b);
  for (int d = 0; d <= a.n; ++d)
    if (!(na.comp[d] == nb.comp[d])) return false;
  return true;
}

}  // namespace nilcx

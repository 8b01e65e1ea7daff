#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilcx/exterior.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/matrix.hpp"
#include "nilcx/rational.hpp"

namespace nilcx {

//---------------------------------------------------------------------------
// Classical structures
//---------------------------------------------------------------------------

// N(J)(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY]
inline std::vector<Rat> nijenhuis(const LieAlgebra& g, const Mat<Rat>& j,
                                  const std::vector<Rat>& x, const std::vector<Rat>& y) {
  require_checked(g);
  auto jx = j.apply(x);
  auto jy = j.apply(y);
  auto r = g.bracket(jx, jy);
  auto b = g.bracket(x, y);
  auto c = j.apply(g.bracket(jx, y));
  auto d = j.apply(g.bracket(x, jy));
  for (int k = 0; k < g.dim(); ++k) r[k] = r[k] - b[k] - c[k] - d[k];
  return r;
}

struct ComplexCheck {
  bool ok = false;
  std::string reason;
  std::optional<std::pair<int, int>> failing_pair;
};

inline ComplexCheck is_complex_structure(const LieAlgebra& g, const Mat<Rat>& j) {
  if (g.dim() % 2 != 0) throw error("complex structure requires even dimension");
  require_checked(g);
  int n = g.dim();
  auto sq = j * j;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (sq(a, b) != (a == b ? Rat(-1) : Rat(0)))
        return {false, "J^2 != -Id", std::nullopt};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<Rat> x(n, Rat(0)), y(n, Rat(0));
      x[a] = 1;
      y[b] = 1;
      auto nij = nijenhuis(g, j, x, y);
      for (const auto& c : nij)
        if (c != 0) return {false, "Nijenhuis tensor nonzero", std::make_pair(a, b)};
    }
  return {true, "", std::nullopt};
}

inline bool is_symplectic(const LieAlgebra& g, const PForm& w) {
  if (g.dim() % 2 != 0) throw error("symplectic form requires even dimension");
  require_checked(g);
  if (w.n != g.dim()) throw error("ambient mismatch");
  if (w.is_zero()) return false;
  if (w.deg != 2) throw error("2-form required");
  if (!differential(g, w).is_zero()) return false;
  PForm p = PForm::scalar(g.dim(), Gauss(1));
  for (int s = 0; s < g.dim() / 2; ++s) p = wedge(p, w);
  return !p.is_zero();
}

//---------------------------------------------------------------------------
// The double g + g*
//---------------------------------------------------------------------------

template <class F>
struct GVec {
  std::vector<F> x;   // vector part
  std::vector<F> xi;  // form part
  static GVec zero(int n) { return {std::vector<F>(n, F(0)), std::vector<F>(n, F(0))}; }
  int dim() const { return static_cast<int>(x.size()); }
  std::vector<F> flat() const {
    std::vector<F> v = x;
    v.insert(v.end(), xi.begin(), xi.end());
    return v;
  }
  static GVec from_flat(const std::vector<F>& v) {
    std::size_t n = v.size() / 2;
    return {std::vector<F>(v.begin(), v.begin() + n),
            std::vector<F>(v.begin() + n, v.end())};
  }
};

using GVecQ = GVec<Rat>;
using GVecC = GVec<Gauss>;

template <class F>
F pairing(const GVec<F>& v, const GVec<F>& w) {
  if (v.dim() != w.dim()) throw error("ambient mismatch");
  F s(0);
  for (int i = 0; i < v.dim(); ++i) s += v.xi[i] * w.x[i] + w.xi[i] * v.x[i];
  return s / F(2);
}

// Courant bracket [X+xi, Y+eta] = [X,Y] + L_X eta - L_Y xi (the exact term
// d(I_X eta - I_Y xi)/2 vanishes on invariant data); (L_X eta)(Z) = -eta([X,Z])
template <class F>
GVec<F> courant(const LieAlgebra& g, const GVec<F>& v, const GVec<F>& w) {
  require_checked(g);
  int n = g.dim();
  GVec<F> r = GVec<F>::zero(n);
  r.x = g.bracket(v.x, w.x);
  for (int j = 0; j < n; ++j) {
    std::vector<F> e(n, F(0));
    e[j] = F(1);
    auto bx = g.bracket(v.x, e);
    auto by = g.bracket(w.x, e);
    F c(0);
    for (int k = 0; k < n; ++k) c += -w.xi[k] * bx[k] + v.xi[k] * by[k];
    r.xi[j] = c;
  }
  return r;
}

//---------------------------------------------------------------------------
// Generalized complex structures
//---------------------------------------------------------------------------

inline Mat<Gauss> complexify(const Mat<Rat>& m) {
  Mat<Gauss> r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = Gauss(m(i, j));
  return r;
}

struct GcsReport {
  bool square_ok = false;
  bool orthogonal_ok = false;
  bool involutive_ok = false;
  bool isotropic_ok = false;
  bool transverse_ok = false;  // L and conj(L) intersect trivially
  int type = -1;
  std::vector<GVecC> eigenbasis;  // basis of the +i-eigenspace L
  bool valid() const {
    return square_ok && orthogonal_ok && involutive_ok && isotropic_ok && transverse_ok;
  }
};

inline GcsReport gcs_validate(const LieAlgebra& g, const Mat<Rat>& jj) {
  require_checked(g);
  int n = g.dim();
  if (n % 2 != 0) throw error("even dimension required");
  if (static_cast<int>(jj.rows) != 2 * n || static_cast<int>(jj.cols) != 2 * n)
    throw error("double endomorphism has wrong shape");
  GcsReport rep;
  auto sq = jj * jj;
  rep.square_ok = true;
  for (int a = 0; a < 2 * n && rep.square_ok; ++a)
    for (int b = 0; b < 2 * n; ++b)
      if (sq(a, b) != (a == b ? Rat(-1) : Rat(0))) {
        rep.square_ok = false;
        break;
      }
  // pairing matrix P, orthogonality J^T P J = P
  Mat<Rat> p(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    p(i, n + i) = Rat(1, 2);
    p(n + i, i) = Rat(1, 2);
  }
  rep.orthogonal_ok = (jj.transpose() * p * jj == p);
  if (!rep.square_ok || !rep.orthogonal_ok) return rep;

  // +i-eigenspace over Q(i)
  Mat<Gauss> a = complexify(jj);
  for (int i = 0; i < 2 * n; ++i) a(i, i) -= Gauss::i();
  Mat<Gauss> ls = nullspace(a);
  if (static_cast<int>(ls.rows) != n) throw error("not a GCS candidate");
  std::vector<GVecC> basis;
  for (std::size_t r = 0; r < ls.rows; ++r) {
    std::vector<Gauss> v(2 * n);
    for (int c = 0; c < 2 * n; ++c) v[c] = ls(r, c);
    basis.push_back(GVecC::from_flat(v));
  }
  rep.eigenbasis = basis;

  rep.isotropic_ok = true;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j2 = i; j2 < basis.size(); ++j2)
      if (!pairing(basis[i], basis[j2]).is_zero()) rep.isotropic_ok = false;

  std::vector<std::vector<Gauss>> conj_rows;
  for (std::size_t r = 0; r < ls.rows; ++r) {
    std::vector<Gauss> v(2 * n);
    for (int c = 0; c < 2 * n; ++c) v[c] = ls(r, c).conj();
    conj_rows.push_back(v);
  }
  rep.transverse_ok = (rank_with(ls, conj_rows) == 2 * static_cast<std::size_t>(n));

  rep.involutive_ok = true;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j2 = i + 1; j2 < basis.size(); ++j2) {
      auto br = courant(g, basis[i], basis[j2]);
      if (rank_with(ls, {br.flat()}) != ls.rows) rep.involutive_ok = false;
    }

  // type = 2n - dim of the projection of L to g... with dim g = 2n here
  std::vector<std::vector<Gauss>> gparts;
  for (const auto& b : basis) gparts.push_back(b.x);
  rep.type = n - static_cast<int>(rank(from_rows(gparts, n)));
  return rep;
}

// J_J(X + xi) = -J(X) + J*(xi)
inline Mat<Rat> gcs_from_complex(const LieAlgebra& g, const Mat<Rat>& j) {
  auto chk = is_complex_structure(g, j);
  if (!chk.ok) throw error("not a complex structure: " + chk.reason);
  int n = g.dim();
  Mat<Rat> jj(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      jj(a, b) = -j(a, b);
      jj(n + a, n + b) = j(b, a);
    }
  return jj;
}

// J_w(X + xi) = -w^{-1}(xi) + I_X w, with +i-eigenspace {X - i I_X w}
inline Mat<Rat> gcs_from_symplectic(const LieAlgebra& g, const PForm& w) {
  if (!is_symplectic(g, w)) throw error("not a symplectic form");
  int n = g.dim();
  // matrix of X -> I_X w (column convention)
  Mat<Rat> b(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    PForm ix = interior(e, w);
    auto coeffs = ix.one_form_coeffs();
    for (int k = 0; k < n; ++k) {
      if (!coeffs[k].is_real()) throw error("real symplectic form required");
      b(k, i) = coeffs[k].re;
    }
  }
  auto binv = inverse(b);
  if (!binv) throw error("degenerate form");
  Mat<Rat> jj(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      jj(a, n + c) = -(*binv)(a, c);
      jj(n + a, c) = b(a, c);
    }
  return jj;
}

// the unique real J with J* theta_i = i theta_i; J = M^{-1} D M where the
// rows of M are theta_1..theta_n, conj(theta_1)..conj(theta_n)
inline Mat<Rat> j_from_coframe(const LieAlgebra& g, const std::vector<PForm>& thetas) {
  int n = g.dim();
  if (static_cast<int>(thetas.size()) * 2 != n)
    throw error("coframe must have dim/2 forms");
  Mat<Gauss> m(n, n);
  for (int i = 0; i < n / 2; ++i) {
    auto v = thetas[i].one_form_coeffs();
    for (int c = 0; c < n; ++c) {
      m(i, c) = v[c];
      m(n / 2 + i, c) = v[c].conj();
    }
  }
  auto minv = inverse(m);
  if (!minv) throw error("degenerate coframe");
  Mat<Gauss> d(n, n);
  for (int i = 0; i < n / 2; ++i) {
    d(i, i) = Gauss::i();
    d(n / 2 + i, n / 2 + i) = Gauss(0) - Gauss::i();
  }
  Mat<Gauss> jc = *minv * d * m;
  Mat<Rat> j(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!jc(a, b).is_real()) throw error("coframe does not define a real J");
      j(a, b) = jc(a, b).re;
    }
  return j;
}

}  // namespace nilcx

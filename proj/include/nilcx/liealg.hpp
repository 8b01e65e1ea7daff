#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilcx/matrix.hpp"
#include "nilcx/rational.hpp"

namespace nilcx {

// Subspace of Q^n, kept as an RREF basis (rows).
struct Subspace {
  int ambient = 0;
  Mat<Rat> basis;  // RREF rows

  static Subspace zero(int ambient) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat<Rat>(0, ambient);
    return s;
  }
  static Subspace span(const std::vector<std::vector<Rat>>& vecs, int ambient) {
    Mat<Rat> m = from_rows(vecs, ambient);
    auto piv = rref(m);
    Subspace s;
    s.ambient = ambient;
    s.basis = Mat<Rat>(piv.size(), ambient);
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (int j = 0; j < ambient; ++j) s.basis(i, j) = m(i, j);
    return s;
  }
  int dim() const { return static_cast<int>(basis.rows); }
  bool contains(const std::vector<Rat>& v) const {
    return rank_with(basis, {v}) == basis.rows;
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
  }
};

enum class AlgClass { Abelian, Filiform, QuasiFiliform, OtherNilpotent, NotNilpotent };

inline std::string alg_class_str(AlgClass c, int r = 0) {
  switch (c) {
    case AlgClass::Abelian: return "abelian";
    case AlgClass::Filiform: return "filiform";
    case AlgClass::QuasiFiliform: return "quasi-filiform(t" + std::to_string(r) + ")";
    case AlgClass::OtherNilpotent: return "other-nilpotent";
    default: return "not-nilpotent";
  }
}

struct StructureReport {
  int nilindex = 0;
  std::vector<int> lcs_dims;   // dim g^0, g^1, ...
  std::vector<int> form;       // p_1 .. p_m
  AlgClass cls = AlgClass::NotNilpotent;
  int r = 0;  // t_r index when quasi-filiform
};

struct JacobiFailure : error {
  int i, j, k;
  std::vector<Rat> residual;
  JacobiFailure(int i_, int j_, int k_, std::vector<Rat> res, const std::string& msg)
      : error(msg), i(i_), j(j_), k(k_), residual(std::move(res)) {}
};

// Lie algebra given by rational structure constants C^k_{ij}, i < j.
class LieAlgebra {
 public:
  using Table = std::map<std::pair<int, int>, std::map<int, Rat>>;

  // raw: structure data not yet known to satisfy Jacobi; call validate().
  static LieAlgebra raw(int dim, std::vector<std::string> labels = {}) {
    if (dim < 1) throw error("dimension must be positive");
    LieAlgebra g;
    g.dim_ = dim;
    if (labels.empty())
      for (int i = 0; i < dim; ++i) labels.push_back("X" + std::to_string(i));
    if (static_cast<int>(labels.size()) != dim) throw error("label count mismatch");
    g.labels_ = std::move(labels);
    return g;
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Table& table() const { return table_; }
  bool checked() const { return checked_; }

  void set_bracket(int i, int j, int k, const Rat& c) {
    if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
      throw error("bracket index out of range");
    if (i >= j) throw error("i < j required");
    checked_ = false;
    if (c == 0)
      table_[{i, j}].erase(k);
    else
      table_[{i, j}][k] = c;
    if (table_[{i, j}].empty()) table_.erase({i, j});
  }

  Rat constant(int i, int j, int k) const {
    if (i == j) return Rat(0);
    int s = 1, a = i, b = j;
    if (a > b) {
      std::swap(a, b);
      s = -1;
    }
    auto it = table_.find({a, b});
    if (it == table_.end()) return Rat(0);
    auto jt = it->second.find(k);
    if (jt == it->second.end()) return Rat(0);
    return s * jt->second;
  }

  // [X_i, X_j] as a coordinate vector
  std::vector<Rat> bracket_basis(int i, int j) const {
    std::vector<Rat> v(dim_, Rat(0));
    for (int k = 0; k < dim_; ++k) v[k] = constant(i, j, k);
    return v;
  }

  template <class F>
  std::vector<F> bracket(const std::vector<F>& x, const std::vector<F>& y) const {
    std::vector<F> v(dim_, F(0));
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == F(0)) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j] == F(0) || i == j) continue;
        F f = x[i] * y[j];
        int a = i, b = j;
        bool neg = false;
        if (a > b) {
          std::swap(a, b);
          neg = true;
        }
        auto it = table_.find({a, b});
        if (it == table_.end()) continue;
        for (const auto& [k, c] : it->second) v[k] += neg ? -(f * F(c)) : f * F(c);
      }
    }
    return v;
  }

  // g^0 = g, g^i = [g^{i-1}, g]; stops when stable.
  std::vector<Subspace> lower_central_series() const {
    std::vector<Subspace> series;
    std::vector<std::vector<Rat>> full;
    for (int i = 0; i < dim_; ++i) {
      std::vector<Rat> e(dim_, Rat(0));
      e[i] = 1;
      full.push_back(e);
    }
    series.push_back(Subspace::span(full, dim_));
    while (true) {
      const Subspace& prev = series.back();
      std::vector<std::vector<Rat>> gens;
      for (std::size_t a = 0; a < prev.basis.rows; ++a) {
        std::vector<Rat> u(dim_);
        for (int j = 0; j < dim_; ++j) u[j] = prev.basis(a, j);
        for (int i = 0; i < dim_; ++i) {
          std::vector<Rat> e(dim_, Rat(0));
          e[i] = 1;
          gens.push_back(bracket(u, e));
        }
      }
      Subspace next = gens.empty() ? Subspace::zero(dim_) : Subspace::span(gens, dim_);
      if (next.dim() == prev.dim()) break;  // stabilized (nonzero => not nilpotent)
      series.push_back(next);
      if (next.dim() == 0) break;
    }
    return series;
  }

  // Jacobi check plus the derived structure data. Marks the algebra checked.
  StructureReport validate() {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k) {
          std::vector<Rat> res(dim_, Rat(0));
          auto acc = [&](const std::vector<Rat>& xy, int z) {
            std::vector<Rat> e(dim_, Rat(0));
            e[z] = 1;
            auto w = bracket(xy, e);
            for (int t = 0; t < dim_; ++t) res[t] += w[t];
          };
          acc(bracket_basis(i, j), k);
          acc(bracket_basis(j, k), i);
          acc(bracket_basis(k, i), j);
          bool bad = false;
          for (const auto& x : res)
            if (x != 0) bad = true;
          if (bad) {
            std::ostringstream os;
            os << "Jacobi identity fails on (" << labels_[i] << ", " << labels_[j]
               << ", " << labels_[k] << "); residual =";
            for (int t = 0; t < dim_; ++t)
              if (res[t] != 0) os << " " << rat_str(res[t]) << "*" << labels_[t];
            throw JacobiFailure(i, j, k, res, os.str());
          }
        }
    checked_ = true;
    return structure();
  }

  StructureReport structure() const {
    StructureReport rep;
    auto series = lower_central_series();
    for (const auto& s : series) rep.lcs_dims.push_back(s.dim());
    if (series.back().dim() != 0) {
      rep.cls = AlgClass::NotNilpotent;
      rep.nilindex = -1;
      return rep;
    }
    rep.nilindex = static_cast<int>(series.size()) - 1;
    for (std::size_t i = 1; i < series.size(); ++i)
      rep.form.push_back(series[i - 1].dim() - series[i].dim());
    bool abelian = table_.empty();
    if (abelian)
      rep.cls = AlgClass::Abelian;
    else if (rep.nilindex == dim_ - 1)
      rep.cls = AlgClass::Filiform;
    else if (rep.nilindex == dim_ - 2) {
      rep.cls = AlgClass::QuasiFiliform;
      if (rep.form[0] == 3)
        rep.r = 1;
      else
        for (std::size_t i = 1; i < rep.form.size(); ++i)
          if (rep.form[i] == 2) rep.r = static_cast<int>(i) + 1;
    } else
      rep.cls = AlgClass::OtherNilpotent;
    return rep;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  int dim_ = 0;
  Table table_;
  std::vector<std::string> labels_;
  bool checked_ = false;
};

inline void require_checked(const LieAlgebra& g) {
  if (!g.checked()) throw error("algebra must pass validate() first");
}

// Invertible change of basis; rows are the new basis vectors in old coordinates.
struct BasisChange {
  Mat<Rat> matrix;

  static BasisChange identity(int n) { return {Mat<Rat>::identity(n)}; }
  static BasisChange from_rows(const std::vector<std::vector<Rat>>& rows) {
    return {nilcx::from_rows(rows, rows.size())};
  }
};

inline LieAlgebra change_basis(const LieAlgebra& g, const BasisChange& t) {
  int n = g.dim();
  if (static_cast<int>(t.matrix.rows) != n || static_cast<int>(t.matrix.cols) != n)
    throw error("basis change has wrong shape");
  auto inv = inverse(t.matrix);
  if (!inv) throw error("basis change is singular");
  LieAlgebra h = LieAlgebra::raw(n, g.labels());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rat> u(n), v(n);
      for (int a = 0; a < n; ++a) {
        u[a] = t.matrix(i, a);
        v[a] = t.matrix(j, a);
      }
      auto w = g.bracket(u, v);
      // coordinates of w in the new basis: c = w^T T^{-1}
      for (int k = 0; k < n; ++k) {
        Rat c(0);
        for (int a = 0; a < n; ++a) c += w[a] * (*inv)(a, k);
        if (c != 0) h.set_bracket(i, j, k, c);
      }
    }
  return h;
}

inline bool verify_isomorphism(const LieAlgebra& g, const LieAlgebra& h,
                               const BasisChange& t) {
  if (g.dim() != h.dim()) throw error("dimension mismatch");
  return change_basis(g, t) == h;
}

// Associated graded algebra of the lower central series, in a basis adapted
// to the quotients (vectors ordered by leading coordinate).
inline LieAlgebra graded(LieAlgebra g) {
  if (!g.checked()) g.validate();
  auto series = g.lower_central_series();
  if (series.back().dim() != 0) throw error("graded requires a nilpotent algebra");
  int n = g.dim();
  int m = static_cast<int>(series.size()) - 1;
  // extension vectors of g^i inside g^{i-1}, tagged with weight i
  struct Tagged {
    std::vector<Rat> v;
    int weight;
    int pivot;
  };
  std::vector<Tagged> chosen;
  for (int i = 1; i <= m; ++i) {
    const Subspace& lower = series[i];
    const Subspace& upper = series[i - 1];
    std::vector<std::vector<Rat>> acc;
    for (std::size_t a = 0; a < lower.basis.rows; ++a) {
      std::vector<Rat> v(n);
      for (int j = 0; j < n; ++j) v[j] = lower.basis(a, j);
      acc.push_back(v);
    }
    for (std::size_t a = 0; a < upper.basis.rows; ++a) {
      std::vector<Rat> v(n);
      for (int j = 0; j < n; ++j) v[j] = upper.basis(a, j);
      auto before = Subspace::span(acc, n).dim();
      acc.push_back(v);
      if (Subspace::span(acc, n).dim() == before) {
        acc.pop_back();
        continue;
      }
      int piv = 0;
      while (v[piv] == 0) ++piv;
      chosen.push_back({v, i, piv});
    }
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const Tagged& a, const Tagged& b) { return a.pivot < b.pivot; });
  Mat<Rat> p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = chosen[i].v[j];
  auto pinv = inverse(p);
  LieAlgebra gr = LieAlgebra::raw(n, g.labels());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto w = g.bracket(chosen[i].v, chosen[j].v);
      int target = chosen[i].weight + chosen[j].weight;
      for (int k = 0; k < n; ++k) {
        if (chosen[k].weight != target) continue;
        Rat c(0);
        for (int a = 0; a < n; ++a) c += w[a] * (*pinv)(a, k);
        if (c != 0) gr.set_bracket(i, j, k, c);
      }
    }
  gr.validate();
  return gr;
}

//---------------------------------------------------------------------------
// Catalog of the named algebras
//---------------------------------------------------------------------------

namespace catalog_detail {
inline LieAlgebra finish(LieAlgebra g) {
  g.validate();
  return g;
}
}  // namespace catalog_detail

// L_{2n-1} (+) R, dimension 2n: the chain [X0,Xi] = X_{i+1} with a central
// extra direction X_{2n-1}.
inline LieAlgebra catalog_LR(int n) {
  if (n < 2) throw error("L_{2n-1}+R requires n >= 2");
  LieAlgebra g = LieAlgebra::raw(2 * n);
  for (int i = 1; i <= 2 * n - 3; ++i) g.set_bracket(0, i, i + 1, 1);
  return catalog_detail::finish(g);
}

inline LieAlgebra catalog_L(int n, int r) {
  if (n < 3) throw error("L_{2n,r} requires n >= 3");
  if (r % 2 == 0 || r < 3 || r > 2 * n - 3)
    throw error("L_{2n,r} requires r odd with 3 <= r <= 2n-3");
  LieAlgebra g = LieAlgebra::raw(2 * n);
  for (int i = 1; i <= 2 * n - 3; ++i) g.set_bracket(0, i, i + 1, 1);
  for (int i = 1; i <= (r - 1) / 2; ++i)
    g.set_bracket(i, r - i, 2 * n - 1, (i % 2 == 1) ? 1 : -1);
  return catalog_detail::finish(g);
}

inline LieAlgebra catalog_T(int n) {
  if (n < 3) throw error("T_{2n,2n-3} requires n >= 3");
  LieAlgebra g = LieAlgebra::raw(2 * n);
  for (int i = 1; i <= 2 * n - 4; ++i) g.set_bracket(0, i, i + 1, 1);
  g.set_bracket(0, 2 * n - 1, 2 * n - 2, 1);
  for (int i = 1; i <= n - 2; ++i)
    g.set_bracket(i, 2 * n - 3 - i, 2 * n - 1, (i % 2 == 1) ? 1 : -1);
  for (int i = 1; i <= n - 2; ++i)
    g.set_bracket(i, 2 * n - 2 - i, 2 * n - 2, Rat((i % 2 == 1) ? 1 : -1) * (n - 1 - i));
  return catalog_detail::finish(g);
}

inline LieAlgebra catalog_N63() {
  LieAlgebra g = LieAlgebra::raw(6);
  for (int i = 1; i <= 3; ++i) g.set_bracket(0, i, i + 1, 1);
  g.set_bracket(1, 2, 5, 1);
  g.set_bracket(1, 5, 4, 1);
  return catalog_detail::finish(g);
}

// Salamon's presentation of n_{6,3} (indices shifted to start at 0).
inline LieAlgebra catalog_n63_salamon() {
  LieAlgebra g = LieAlgebra::raw(6);
  g.set_bracket(0, 1, 2, 1);
  g.set_bracket(0, 2, 3, 1);
  g.set_bracket(0, 3, 5, 1);
  g.set_bracket(1, 2, 4, -1);
  g.set_bracket(1, 4, 5, -1);
  return catalog_detail::finish(g);
}

// The one-parameter dimension-6 family: chain + [X1,X2]=X5, [X1,X5]=delta X4.
// delta = 1 is N_{6,3}; delta = 0 is L_{6,3}.
inline LieAlgebra catalog_dim6(const Rat& delta) {
  LieAlgebra g = LieAlgebra::raw(6);
  for (int i = 1; i <= 3; ++i) g.set_bracket(0, i, i + 1, 1);
  g.set_bracket(1, 2, 5, 1);
  if (delta != 0) g.set_bracket(1, 5, 4, delta);
  return catalog_detail::finish(g);
}

// The un-normalized two-parameter t3 family of dimension 6.
inline LieAlgebra catalog_t3(const Rat& a, const Rat& b) {
  LieAlgebra g = LieAlgebra::raw(6);
  for (int i = 1; i <= 3; ++i) g.set_bracket(0, i, i + 1, 1);
  if (b != 0) g.set_bracket(1, 3, 4, b);
  g.set_bracket(1, 2, 3, b);
  g.set_bracket(1, 2, 5, -1);
  if (a != 0) g.set_bracket(1, 5, 4, -a);  // [X5,X1] = a X4
  return catalog_detail::finish(g);
}

// Model filiform algebra of dimension d: [X0,Xi] = X_{i+1}, i = 1..d-2.
inline LieAlgebra catalog_filiform(int d) {
  if (d < 3) throw error("filiform model requires dim >= 3");
  LieAlgebra g = LieAlgebra::raw(d);
  for (int i = 1; i <= d - 2; ++i) g.set_bracket(0, i, i + 1, 1);
  return catalog_detail::finish(g);
}

inline LieAlgebra catalog_abelian(int d) {
  LieAlgebra g = LieAlgebra::raw(d);
  return catalog_detail::finish(g);
}

// Normalizing change of basis for the t3 family (defined over Q only when
// sqrt(|a|) is rational). Sends catalog_t3(a,b) to the delta = +/-1 shape.
inline BasisChange t3_normalization(const Rat& a, const Rat& b) {
  if (a == 0 && b == 0) throw error("a = b = 0 is already L_{6,3}; nothing to normalize");
  auto s = rational_sqrt(a < 0 ? Rat(-a) : a);
  if (!s) throw error("irrational normalization, supply T manually");
  if (a == 0) throw error("normalization degenerates for a = 0, supply T manually");
  Rat beta = (b == *s) ? Rat(-1) / (2 * *s) : Rat(-1) / (b - *s);
  Rat alpha = b * beta + 1;
  std::vector<std::vector<Rat>> rows(6, std::vector<Rat>(6, Rat(0)));
  rows[0][0] = alpha;
  rows[1][1] = beta;
  rows[1][0] = 1;
  rows[2][2] = alpha * beta;
  rows[3][3] = alpha * alpha * beta;
  rows[4][4] = alpha * alpha * alpha * beta;
  rows[5][5] = -alpha * beta * beta;
  return BasisChange::from_rows(rows);
}

// The hand-derived map identifying N_{6,3} with Salamon's presentation.
inline BasisChange n63_to_salamon() {
  std::vector<std::vector<Rat>> rows(6, std::vector<Rat>(6, Rat(0)));
  rows[0][0] = 1;
  rows[1][1] = 1;
  rows[2][2] = 1;
  rows[3][3] = 1;
  rows[4][5] = -1;
  rows[5][4] = 1;
  return BasisChange::from_rows(rows);
}

//---------------------------------------------------------------------------
// Adapted-basis recognition (verifier, not finder)
//---------------------------------------------------------------------------

// weights of a homogeneous quasi-filiform basis: X0, X1 in W_1, X_i in W_i,
// X_{2n-1} in W_r
inline std::vector<int> adapted_weights(int dim, int r) {
  std::vector<int> w(dim, 0);
  w[0] = w[1] = 1;
  for (int i = 2; i <= dim - 2; ++i) w[i] = i;
  w[dim - 1] = r;
  return w;
}

inline std::pair<bool, std::string> matches_adapted_shape(const LieAlgebra& g,
                                                          const LieAlgebra& model,
                                                          int r) {
  int n2 = g.dim();
  auto w = adapted_weights(n2, r);
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j) {
      // corrections occur between the X_{i>=1}; the only exception is
      // [X0, X_{2n-1}] in the L_{2n,r} shape
      bool corrections_allowed =
          (i >= 1) || (i == 0 && j == n2 - 1 && r >= 3 && r <= n2 - 3);
      for (int k = 0; k < n2; ++k) {
        Rat diff = g.constant(i, j, k) - model.constant(i, j, k);
        if (diff == 0) continue;
        if (!corrections_allowed || w[k] <= w[i] + w[j]) {
          std::ostringstream os;
          os << "bracket [" << g.labels()[i] << "," << g.labels()[j]
             << "] has disallowed component on " << g.labels()[k];
          return {false, os.str()};
        }
      }
    }
  return {true, ""};
}

// True iff the stored basis realizes one of the four normalized quasi-filiform
// bracket shapes (graded model plus strictly-higher-weight corrections).
inline std::pair<bool, std::string> is_adapted_basis(const LieAlgebra& g) {
  require_checked(g);
  auto rep = g.structure();
  if (rep.cls != AlgClass::QuasiFiliform)
    return {false, "not quasi-filiform"};
  int dim = g.dim();
  if (dim % 2 != 0) return {false, "odd dimension"};
  int n = dim / 2;
  std::string last;
  if (rep.r == 1) {
    auto [ok, why] = matches_adapted_shape(g, catalog_LR(n), 1);
    if (ok) return {true, ""};
    last = why;
  } else if (rep.r == 3 && dim == 6) {
    // r = 3, dim 6: N_{6,3}, T_{6,3} or L_{6,3} shapes
    for (const auto& model : {catalog_N63(), catalog_dim6(0), catalog_T(3)}) {
      auto [ok, why] = matches_adapted_shape(g, model, 3);
      if (ok) return {true, ""};
      last = why;
    }
  } else {
    if (rep.r >= 3 && rep.r % 2 == 1 && rep.r <= 2 * n - 3) {
      auto [ok, why] = matches_adapted_shape(g, catalog_L(n, rep.r), rep.r);
      if (ok) return {true, ""};
      last = why;
    }
    if (rep.r == 2 * n - 3) {
      auto [ok, why] = matches_adapted_shape(g, catalog_T(n), rep.r);
      if (ok) return {true, ""};
      if (!last.empty()) last += "; ";
      last += why;
    }
    if (last.empty()) last = "no adapted shape exists for t_" + std::to_string(rep.r);
  }
  return {false, last};
}

}  // namespace nilcx

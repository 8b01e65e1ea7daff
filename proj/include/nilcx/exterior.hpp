#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilcx/liealg.hpp"
#include "nilcx/matrix.hpp"
#include "nilcx/rational.hpp"

namespace nilcx {

// Homogeneous p-form with Q(i) coefficients. Terms are keyed by the bitmask
// of the strictly increasing index tuple.
struct PForm {
  int n = 0;    // ambient dimension
  int deg = 0;  // homogeneous degree
  std::map<std::uint32_t, Gauss> terms;

  static PForm zero(int n, int deg) { return {n, deg, {}}; }
  static PForm scalar(int n, const Gauss& c) {
    PForm f{n, 0, {}};
    if (!c.is_zero()) f.terms[0] = c;
    return f;
  }
  static PForm basis(int n, std::initializer_list<int> idx) {
    PForm f{n, static_cast<int>(idx.size()), {}};
    std::uint32_t mask = 0;
    for (int i : idx) {
      if (i < 0 || i >= n) throw error("form index out of range");
      if (mask & (1u << i)) throw error("repeated form index");
      mask |= 1u << i;
    }
    // callers pass increasing tuples; reject others to avoid silent signs
    int prev = -1;
    for (int i : idx) {
      if (i <= prev) throw error("indices must increase");
      prev = i;
    }
    f.terms[mask] = Gauss(1);
    return f;
  }
  static PForm one_form(const std::vector<Gauss>& coeff) {
    PForm f{static_cast<int>(coeff.size()), 1, {}};
    for (std::size_t i = 0; i < coeff.size(); ++i)
      if (!coeff[i].is_zero()) f.terms[1u << i] = coeff[i];
    return f;
  }

  bool is_zero() const { return terms.empty(); }
  void add_term(std::uint32_t mask, const Gauss& c) {
    if (c.is_zero()) return;
    auto it = terms.find(mask);
    if (it == terms.end())
      terms[mask] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  Gauss coeff(std::uint32_t mask) const {
    auto it = terms.find(mask);
    return it == terms.end() ? Gauss(0) : it->second;
  }
  std::vector<Gauss> one_form_coeffs() const {
    if (deg != 1) throw error("not a 1-form");
    std::vector<Gauss> v(n, Gauss(0));
    for (const auto& [m, c] : terms) v[std::countr_zero(m)] = c;
    return v;
  }
  PForm conj() const {
    PForm f{n, deg, {}};
    for (const auto& [m, c] : terms) f.terms[m] = c.conj();
    return f;
  }
  friend PForm operator+(const PForm& a, const PForm& b) {
    if (a.n != b.n) throw error("ambient mismatch");
    if (a.deg != b.deg && !a.is_zero() && !b.is_zero())
      throw error("degree mismatch");
    PForm r = a;
    r.deg = a.is_zero() ? b.deg : a.deg;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend PForm operator-(const PForm& a, const PForm& b) { return a + (Gauss(-1) * b); }
  friend PForm operator*(const Gauss& s, const PForm& a) {
    PForm r{a.n, a.deg, {}};
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms) r.terms[m] = s * c;
    return r;
  }
  friend bool operator==(const PForm& a, const PForm& b) {
    return a.n == b.n && a.terms == b.terms;
  }
};

inline int wedge_sign(std::uint32_t a, std::uint32_t b) {
  // (-1)^{inversions} when interleaving mask b after mask a
  int inv = 0;
  for (std::uint32_t m = b; m; m &= m - 1) {
    std::uint32_t bit = m & (~m + 1);
    inv += std::popcount(a & ~(bit | (bit - 1)));
  }
  return inv % 2 == 0 ? 1 : -1;
}

inline PForm wedge(const PForm& a, const PForm& b) {
  if (a.n != b.n) throw error("ambient mismatch");
  PForm r = PForm::zero(a.n, a.deg + b.deg);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma & mb) continue;
      Gauss c = ca * cb;
      if (wedge_sign(ma, mb) < 0) c = Gauss(-1) * c;
      r.add_term(ma | mb, c);
    }
  return r;
}

template <class F>
PForm interior(const std::vector<F>& x, const PForm& a) {
  if (static_cast<int>(x.size()) != a.n) throw error("ambient mismatch");
  PForm r = PForm::zero(a.n, a.deg > 0 ? a.deg - 1 : 0);
  if (a.deg == 0) return r;
  for (const auto& [m, c] : a.terms) {
    int pos = 0;
    for (std::uint32_t rest = m; rest; rest &= rest - 1, ++pos) {
      int i = std::countr_zero(rest);
      Gauss xi = Gauss(x[i]);
      if (xi.is_zero()) continue;
      Gauss term = xi * c;
      if (pos % 2 == 1) term = Gauss(-1) * term;
      r.add_term(m & ~(1u << i), term);
    }
  }
  return r;
}

// Evaluation of a 1-form on a vector.
template <class F>
Gauss eval1(const PForm& a, const std::vector<F>& x) {
  if (a.deg != 1 && !a.is_zero()) throw error("not a 1-form");
  Gauss s(0);
  for (const auto& [m, c] : a.terms) s += c * Gauss(x[std::countr_zero(m)]);
  return s;
}

// Chevalley-Eilenberg differential: d w^k = -sum C^k_{ij} w^i ^ w^j (i < j),
// extended as a degree +1 antiderivation.
inline PForm differential(const LieAlgebra& g, const PForm& a) {
  require_checked(g);
  if (a.n != g.dim()) throw error("ambient mismatch");
  int n = a.n;
  // d of the basis 1-forms, computed once per call
  std::vector<PForm> d1;
  d1.reserve(n);
  for (int k = 0; k < n; ++k) {
    PForm f = PForm::zero(n, 2);
    for (const auto& [ij, comps] : g.table()) {
      auto it = comps.find(k);
      if (it == comps.end()) continue;
      f.add_term((1u << ij.first) | (1u << ij.second), Gauss(-it->second));
    }
    d1.push_back(f);
  }
  PForm r = PForm::zero(n, a.deg + 1);
  for (const auto& [m, c] : a.terms) {
    int pos = 0;
    for (std::uint32_t rest = m; rest; rest &= rest - 1, ++pos) {
      int i = std::countr_zero(rest);
      // replace slot pos by d w^i, sign (-1)^pos
      PForm left = PForm::scalar(n, Gauss(1));
      std::uint32_t lm = m & ((1u << i) - 1);
      std::uint32_t rm = m & ~((1u << i) | ((1u << i) - 1));
      PForm piece = PForm::zero(n, 2);
      for (const auto& [dm, dc] : d1[i].terms) piece.add_term(dm, dc);
      PForm lhs = PForm::zero(n, std::popcount(lm));
      lhs.terms[lm] = (pos % 2 == 0) ? c : Gauss(-1) * c;
      PForm rhs = PForm::zero(n, std::popcount(rm));
      rhs.terms[rm] = Gauss(1);
      PForm contrib = wedge(wedge(lhs, piece), rhs);
      for (const auto& [cm, cc] : contrib.terms) r.add_term(cm, cc);
    }
  }
  return r;
}

template <class F>
PForm lie_derivative(const LieAlgebra& g, const std::vector<F>& x, const PForm& a) {
  return interior(x, differential(g, a)) + differential(g, interior(x, a));
}

//---------------------------------------------------------------------------
// Annihilator filtration
//---------------------------------------------------------------------------

struct Filtration {
  int dim = 0;
  int m = 0;                        // nilindex
  std::vector<Subspace> spaces;     // V_0 = 0, ..., V_m = g*
  std::vector<Subspace> central;    // g^0, ..., g^m (dual data for nil tests)
  std::vector<int> quotient_dims;   // dim(V_{i+1}/V_i), i = 0..m-1
  std::optional<int> j_index;       // smallest j >= 1 with all later quotients 1
};

inline Filtration annihilator_filtration(const LieAlgebra& g) {
  require_checked(g);
  auto series = g.lower_central_series();
  if (series.back().dim() != 0) throw error("filtration requires a nilpotent algebra");
  Filtration f;
  f.dim = g.dim();
  f.m = static_cast<int>(series.size()) - 1;
  for (const auto& s : series) {
    f.central.push_back(s);
    f.spaces.push_back(Subspace{g.dim(), nullspace(s.basis)});
  }
  for (int i = 0; i + 1 <= f.m; ++i)
    f.quotient_dims.push_back(f.spaces[i + 1].dim() - f.spaces[i].dim());
  for (int j = 1; j <= f.m; ++j) {
    bool ok = true;
    for (int i = j; i <= f.m - 1; ++i)
      if (f.quotient_dims[i] != 1) ok = false;
    if (ok) {
      f.j_index = j;
      break;
    }
  }
  // cross-check the equivalent characterization: phi in V_i iff
  // I_X d(phi) lies in V_{i-1} for every basis X
  for (int i = 1; i <= f.m; ++i)
    for (std::size_t a = 0; a < f.spaces[i].basis.rows; ++a) {
      std::vector<Gauss> coeff(g.dim());
      for (int c = 0; c < g.dim(); ++c) coeff[c] = Gauss(f.spaces[i].basis(a, c));
      PForm phi = PForm::one_form(coeff);
      PForm dphi = differential(g, phi);
      for (int b = 0; b < g.dim(); ++b) {
        std::vector<Rat> e(g.dim(), Rat(0));
        e[b] = 1;
        PForm ix = interior(e, dphi);
        auto v = ix.one_form_coeffs();
        std::vector<Rat> re(g.dim()), im(g.dim());
        for (int c = 0; c < g.dim(); ++c) {
          re[c] = v[c].re;
          im[c] = v[c].im;
        }
        const Subspace& prev = f.spaces[i - 1];
        if (!prev.contains(re) || !prev.contains(im))
          throw error("filtration characterization check failed");
      }
    }
  return f;
}

// smallest i with a in the p-th exterior power of V_i; equivalently, the
// contraction with every element of g^i vanishes
inline int nil_degree(const Filtration& f, const PForm& a) {
  if (a.n != f.dim) throw error("ambient mismatch");
  if (a.is_zero()) return 0;
  for (int i = 0; i <= f.m; ++i) {
    bool ok = true;
    for (std::size_t r = 0; r < f.central[i].basis.rows && ok; ++r) {
      std::vector<Rat> x(f.dim);
      for (int c = 0; c < f.dim; ++c) x[c] = f.central[i].basis(r, c);
      if (!interior(x, a).is_zero()) ok = false;
    }
    if (ok) return i;
  }
  throw error("nil degree not found");  // unreachable: g^m = 0
}

inline void require_independent(const std::vector<PForm>& thetas) {
  if (thetas.empty()) return;
  int n = thetas[0].n;
  Mat<Gauss> m(thetas.size(), n);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    auto v = thetas[i].one_form_coeffs();
    for (int j = 0; j < n; ++j) m(i, j) = v[j];
  }
  if (rank(m) != thetas.size()) throw error("independence required");
}

inline bool ideal_member(const PForm& a, const std::vector<PForm>& thetas) {
  require_independent(thetas);
  if (a.is_zero()) return true;
  PForm w = a;
  for (const auto& th : thetas) w = wedge(w, th);
  return w.is_zero();
}

// appropriate decomposition: nil degrees non-decreasing, and for each i the
// thetas of nil degree > i stay independent modulo V_i
inline bool is_appropriate(const Filtration& f, const std::vector<PForm>& thetas) {
  require_independent(thetas);
  std::vector<int> nil;
  for (const auto& th : thetas) {
    if (th.deg != 1) throw error("1-forms required");
    nil.push_back(nil_degree(f, th));
  }
  for (std::size_t i = 1; i < nil.size(); ++i)
    if (nil[i] < nil[i - 1]) return false;
  for (int i = 0; i <= f.m; ++i) {
    std::vector<std::vector<Gauss>> rows;
    for (std::size_t a = 0; a < f.spaces[i].basis.rows; ++a) {
      std::vector<Gauss> v(f.dim);
      for (int c = 0; c < f.dim; ++c) v[c] = Gauss(f.spaces[i].basis(a, c));
      rows.push_back(v);
    }
    std::size_t base = rows.size();
    std::size_t count = 0;
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      if (nil[t] <= i) continue;
      rows.push_back(thetas[t].one_form_coeffs());
      ++count;
    }
    if (count == 0) continue;
    Mat<Gauss> m = from_rows(rows, f.dim);
    if (rank(m) != base + count) return false;
  }
  return true;
}

inline std::string pform_str(const PForm& a, const std::string& sym = "w") {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << gauss_str(c) << ")";
    for (std::uint32_t rest = m; rest; rest &= rest - 1) {
      os << (rest == m ? " " : "^");
      os << sym << std::countr_zero(rest);
    }
  }
  return os.str();
}

}  // namespace nilcx

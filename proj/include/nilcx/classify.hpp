#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nilcx/exterior.hpp"
#include "nilcx/liealg.hpp"
#include "nilcx/matrix.hpp"
#include "nilcx/poly.hpp"
#include "nilcx/spinor.hpp"
#include "nilcx/structures.hpp"
#include "nilcx/symbolic.hpp"

namespace nilcx {

struct NilProfile {
  std::vector<int> degrees;
  friend bool operator==(const NilProfile&, const NilProfile&) = default;
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < degrees.size(); ++i)
      s += (i ? "," : "") + std::to_string(degrees[i]);
    return s + ")";
  }
};

struct BoundData {
  int nil = 0;
  int j = 0;
  int k_max = 0;
};

// k <= 2n - nil(g) + j - 2 for j > 1, and k <= 2n - nil(g) for j = 1
inline BoundData type_bound(const LieAlgebra& g) {
  require_checked(g);
  Filtration f = annihilator_filtration(g);
  if (!f.j_index) throw error("theorem inapplicable: filtration quotients never stabilize at 1");
  BoundData b;
  b.nil = f.m;
  b.j = *f.j_index;
  b.k_max = (b.j == 1) ? g.dim() - b.nil : g.dim() - b.nil + b.j - 2;
  return b;
}

// admissible nil-degree profiles for quasi-filiform t_r, r >= 3:
// P1 = (1, r, r+1, ..., r+k-2) always, P2 = (1, r, r, r+1, ..., r+k-3) iff k < r
inline std::vector<NilProfile> nil_profiles(const LieAlgebra& g, int k) {
  require_checked(g);
  auto rep = g.structure();
  if (rep.cls != AlgClass::QuasiFiliform || rep.r < 3)
    throw error("nil profiles require quasi-filiform form t_r with r >= 3");
  if (k < 1) throw error("k must be positive");
  int r = rep.r;
  std::vector<NilProfile> out;
  NilProfile p1;
  p1.degrees.push_back(1);
  for (int i = 2; i <= k; ++i) p1.degrees.push_back(r + i - 2);
  out.push_back(p1);
  if (k >= 3 && k < r) {
    NilProfile p2;
    p2.degrees = {1, r, r};
    for (int i = 4; i <= k; ++i) p2.degrees.push_back(r + i - 3);
    out.push_back(p2);
  }
  return out;
}

//---------------------------------------------------------------------------
// Constraint systems
//---------------------------------------------------------------------------

struct ConstraintSystem {
  NilProfile profile;
  int dim = 0, k = 0;
  std::vector<std::string> names;             // per variable id
  std::vector<int> var_theta;                 // per variable id, 1-based theta
  std::vector<std::vector<Rat>> var_row;      // per variable id, V-basis row
  std::vector<std::vector<int>> theta_vars;   // [1..k] -> variable ids
  std::vector<std::vector<int>> new_groups;   // [1..k] -> new-direction ids
  std::vector<SPoly> equations;
  std::vector<std::pair<int, std::uint32_t>> sources;  // (theta i, monomial)
};

inline bool profile_feasible(const Filtration& f, const NilProfile& p,
                             std::string* why = nullptr) {
  if (p.degrees.empty() || p.degrees.front() != 1) {
    if (why) *why = "profile must start with nil degree 1";
    return false;
  }
  for (std::size_t i = 1; i < p.degrees.size(); ++i)
    if (p.degrees[i] < p.degrees[i - 1]) {
      if (why) *why = "profile must be non-decreasing";
      return false;
    }
  if (p.degrees.back() > f.m) {
    if (why)
      *why = "nil degree " + std::to_string(p.degrees.back()) + " exceeds nilindex " +
             std::to_string(f.m);
    return false;
  }
  for (int s = 1; s <= f.m; ++s) {
    int below = 0;
    for (int d : p.degrees)
      if (d <= s) ++below;
    if (2 * below > f.spaces[s].dim()) {
      if (why)
        *why = "theta_i with nil <= " + std::to_string(s) +
               " cannot stay independent of their conjugates in V_" + std::to_string(s);
      return false;
    }
  }
  return true;
}

inline ConstraintSystem extract_constraints(const LieAlgebra& g, const NilProfile& p) {
  require_checked(g);
  Filtration f = annihilator_filtration(g);
  if (!p.degrees.empty() && p.degrees.back() > f.m)
    throw error("profile exceeds nilindex");
  ConstraintSystem cs;
  cs.profile = p;
  cs.dim = g.dim();
  cs.k = static_cast<int>(p.degrees.size());
  cs.theta_vars.assign(cs.k + 1, {});
  cs.new_groups.assign(cs.k + 1, {});
  static const char* prefix[] = {"", "l", "b", "g", "u", "v"};
  std::vector<SForm> thetas(cs.k + 1, SForm::zero(cs.dim, 1));
  for (int i = 1; i <= cs.k; ++i) {
    const Subspace& support = f.spaces[p.degrees[i - 1]];
    const Subspace& lower = f.spaces[p.degrees[i - 1] - 1];
    for (std::size_t row = 0; row < support.basis.rows; ++row) {
      std::vector<Rat> v(cs.dim);
      for (int c = 0; c < cs.dim; ++c) v[c] = support.basis(row, c);
      int id = static_cast<int>(cs.names.size());
      int pivot = 0;
      while (v[pivot] == 0) ++pivot;
      std::string name =
          (i <= 5 ? std::string(prefix[i]) : "c" + std::to_string(i) + "_") +
          std::to_string(pivot);
      cs.names.push_back(name);
      cs.var_theta.push_back(i);
      cs.var_row.push_back(v);
      cs.theta_vars[i].push_back(id);
      if (i == 1 || !lower.contains(v)) cs.new_groups[i].push_back(id);
      for (int c = 0; c < cs.dim; ++c)
        if (v[c] != 0) thetas[i].add_term(1u << c, Gauss(v[c]) * SPoly::var(id));
    }
  }
  for (int i = 2; i <= cs.k; ++i) {
    SForm w = SForm::zero(cs.dim, 0);
    w.add_term(0, SPoly(Gauss(1)));
    for (int j = 1; j < i; ++j)
      if (p.degrees[j - 1] < p.degrees[i - 1]) w = wedge(w, thetas[j]);
    SForm e = wedge(w, differential(g, thetas[i]));
    for (const auto& [mask, poly] : e.terms) {
      cs.equations.push_back(poly);
      cs.sources.emplace_back(i, mask);
    }
  }
  return cs;
}

//---------------------------------------------------------------------------
// Verdicts and certificates
//---------------------------------------------------------------------------

struct Step {
  std::string kind;  // infeasible | cancel_nonzero | forced_zero | nonzero_product
                     // | group_vanished | minor | lambda0_branch | univariate | bound
  int eq = -1;
  std::string var;
  std::string poly;
  int real_roots = -1;
  std::string note;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Certificate {
  std::vector<Step> steps;
  std::string univariate;
  int real_roots = -1;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class Outcome { Admits, Obstructed, Undecided };

inline std::string outcome_str(Outcome o) {
  switch (o) {
    case Outcome::Admits: return "admits";
    case Outcome::Obstructed: return "obstructed";
    default: return "undecided";
  }
}

struct WitnessData {
  std::vector<PForm> thetas;
  Mat<Rat> j;
};

struct ProfileOutcome {
  NilProfile profile;
  Outcome outcome = Outcome::Undecided;
  Certificate cert;
  std::optional<WitnessData> witness;
  std::vector<std::string> residual;  // unreduced equations, for undecided
};

struct Verdict {
  Outcome outcome = Outcome::Undecided;
  BoundData bound;
  std::vector<ProfileOutcome> profiles;
  std::optional<WitnessData> witness;
};

//---------------------------------------------------------------------------
// Witness verification (the sole arbiter for "admits")
//---------------------------------------------------------------------------

struct WitnessReport {
  bool ok = false;
  std::string failed_stage;
  std::vector<std::pair<std::string, bool>> stages;
};

inline WitnessReport verify_witness(const LieAlgebra& g,
                                    const std::vector<PForm>& thetas) {
  require_checked(g);
  int dim = g.dim();
  if (dim % 2 != 0 || static_cast<int>(thetas.size()) * 2 != dim)
    throw error("witness needs dim/2 1-forms");
  int n = dim / 2;
  WitnessReport rep;
  auto record = [&](const std::string& name, bool ok) {
    rep.stages.emplace_back(name, ok);
    if (!ok && rep.failed_stage.empty()) rep.failed_stage = name;
    return ok;
  };
  PForm zero2 = PForm::zero(dim, 2);
  bool ok = record("nondegenerate", cond_nondegenerate(g, thetas, zero2, n));
  Spinor rho = spinor_from_data(thetas, zero2, zero2);
  if (ok) ok = record("closed", integrability(g, rho).closed);
  if (ok) {
    auto ann = annihilator(g, rho);
    bool transverse = false;
    if (ann.pure) {
      std::vector<std::vector<Gauss>> rows;
      for (const auto& v : ann.basis) rows.push_back(v.flat());
      for (const auto& v : ann.basis) {
        auto w = v.flat();
        for (auto& c : w) c = c.conj();
        rows.push_back(w);
      }
      transverse = (rank(from_rows(rows, 2 * dim)) == rows.size());
    }
    ok = record("pure", ann.pure && transverse);
  }
  Mat<Rat> j(dim, dim);
  if (ok) {
    bool stage = false;
    try {
      j = j_from_coframe(g, thetas);
      stage = is_complex_structure(g, j).ok;
    } catch (const error&) {
      stage = false;
    }
    ok = record("nijenhuis", stage);
  }
  if (ok) {
    auto gcs = gcs_validate(g, gcs_from_complex(g, j));
    ok = record("gcs_type", gcs.valid() && gcs.type == n);
  }
  rep.ok = ok;
  return rep;
}

//---------------------------------------------------------------------------
// decide_profile: the two-phase elimination plus witness search
//---------------------------------------------------------------------------

namespace detail {

inline SPoly det_spoly(const std::vector<std::vector<SPoly>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  SPoly d;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<SPoly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<SPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      sub.push_back(row);
    }
    SPoly term = m[0][c] * det_spoly(sub);
    d = (c % 2 == 0) ? d + term : d - term;
  }
  return d;
}

inline void combinations(std::size_t n, std::size_t k,
                         const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j2 = i + 1; j2 < k; ++j2) idx[j2] = idx[j2 - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

struct SearchState {
  long budget = 0;
  long used = 0;
  bool exhausted = false;
};

// PForm from a coefficient assignment over the constraint system's variables
inline PForm theta_from_assignment(const ConstraintSystem& cs, int theta,
                                   const std::vector<Gauss>& coeffs) {
  std::vector<Gauss> amb(cs.dim, Gauss(0));
  for (std::size_t a = 0; a < cs.theta_vars[theta].size(); ++a) {
    int id = cs.theta_vars[theta][a];
    for (int c = 0; c < cs.dim; ++c) amb[c] += coeffs[a] * Gauss(cs.var_row[id][c]);
  }
  return PForm::one_form(amb);
}

inline bool independent_with_conjugates(const std::vector<PForm>& thetas) {
  std::vector<std::vector<Gauss>> rows;
  for (const auto& th : thetas) rows.push_back(th.one_form_coeffs());
  for (const auto& th : thetas) rows.push_back(th.conj().one_form_coeffs());
  return rank(from_rows(rows, thetas[0].n)) == rows.size();
}

inline bool search_theta(const LieAlgebra& g, const Filtration& f,
                         const ConstraintSystem& cs, int i,
                         std::vector<PForm>& thetas,
                         std::vector<std::pair<int, Gauss>>& assigned,
                         SearchState& st, WitnessData& out) {
  if (i > cs.k) {
    std::vector<PForm> ordered(thetas.begin(), thetas.end());
    if (!is_appropriate(f, ordered)) return false;
    auto rep = verify_witness(g, ordered);
    if (!rep.ok) return false;
    out.thetas = ordered;
    out.j = j_from_coframe(g, ordered);
    return true;
  }
  // equations whose unknowns reduce to theta_i's after the assignment so far
  std::set<int> own(cs.theta_vars[i].begin(), cs.theta_vars[i].end());
  std::vector<SPoly> active;
  for (const auto& eq : cs.equations) {
    SPoly cur = eq;
    for (const auto& [id, val] : assigned) cur = cur.subst(id, val);
    if (cur.is_zero()) continue;
    if (!cur.only_vars(own)) continue;
    if (!cur.linear_in(own)) return false;  // beyond the linear pattern
    active.push_back(cur);
  }
  std::size_t nv = cs.theta_vars[i].size();
  Mat<Gauss> a(active.size(), nv);
  for (std::size_t e = 0; e < active.size(); ++e)
    for (std::size_t c = 0; c < nv; ++c) {
      SPoly coef = active[e].coefficient_of(cs.theta_vars[i][c]);
      Gauss val(0);
      for (const auto& [m, cc] : coef.t) {
        if (!m.empty()) throw error("nonlinear coefficient");  // excluded above
        val = cc;
      }
      a(e, c) = val;
    }
  Mat<Gauss> ker = nullspace(a);
  std::vector<std::vector<Gauss>> basis;
  for (std::size_t r = 0; r < ker.rows; ++r) {
    std::vector<Gauss> v(nv);
    for (std::size_t c = 0; c < nv; ++c) v[c] = ker(r, c);
    basis.push_back(v);
  }
  auto try_candidate = [&](const std::vector<Gauss>& coeffs) -> bool {
    if (st.used >= st.budget) {
      st.exhausted = true;
      return false;
    }
    ++st.used;
    PForm th = theta_from_assignment(cs, i, coeffs);
    if (th.is_zero()) return false;
    if (nil_degree(f, th) != cs.profile.degrees[i - 1]) return false;
    thetas.push_back(th);
    if (!independent_with_conjugates(thetas)) {
      thetas.pop_back();
      return false;
    }
    std::size_t mark = assigned.size();
    for (std::size_t c = 0; c < nv; ++c)
      assigned.emplace_back(cs.theta_vars[i][c], coeffs[c]);
    bool found = search_theta(g, f, cs, i + 1, thetas, assigned, st, out);
    if (!found) {
      assigned.resize(mark);
      thetas.pop_back();
    }
    return found;
  };
  for (const auto& b : basis)
    if (try_candidate(b)) return true;
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = 0; y < basis.size(); ++y) {
      if (x == y) continue;
      std::vector<Gauss> v(nv);
      for (std::size_t c = 0; c < nv; ++c) v[c] = basis[x][c] + Gauss::i() * basis[y][c];
      if (try_candidate(v)) return true;
    }
  for (std::size_t x = 0; x < basis.size(); ++x)
    for (std::size_t y = x + 1; y < basis.size(); ++y) {
      std::vector<Gauss> v(nv);
      for (std::size_t c = 0; c < nv; ++c) v[c] = basis[x][c] + basis[y][c];
      if (try_candidate(v)) return true;
    }
  return false;
}

}  // namespace detail

inline ProfileOutcome decide_profile(const LieAlgebra& g, const NilProfile& p,
                                     long budget = 100000) {
  require_checked(g);
  Filtration f = annihilator_filtration(g);
  ProfileOutcome po;
  po.profile = p;
  std::string why;
  if (!profile_feasible(f, p, &why)) {
    po.outcome = Outcome::Obstructed;
    po.cert.steps.push_back({"infeasible", -1, "", "", -1, why});
    return po;
  }
  ConstraintSystem cs = extract_constraints(g, p);
  std::vector<SPoly> eqs = cs.equations;
  std::set<int> zero, nonzero;
  bool v1_planar = (f.spaces[p.degrees[0]].dim() == 2);
  if (v1_planar)
    for (int id : cs.theta_vars[1]) nonzero.insert(id);
  for (int i = 2; i <= cs.k; ++i)
    if (cs.new_groups[i].size() == 1) nonzero.insert(cs.new_groups[i][0]);

  std::set<int> group_vars;
  for (int i = 2; i <= cs.k; ++i)
    group_vars.insert(cs.new_groups[i].begin(), cs.new_groups[i].end());

  auto& steps = po.cert.steps;
  bool contradiction = false;
  // linear propagation: cancel nonvanishing factors and force single-term
  // coefficients to zero. Zeros of new-direction variables are deferred until
  // the minor reduction has had its chance, so certificates carry the
  // univariate polynomial whenever one exists.
  auto propagate = [&](bool allow_group_zeros) {
    for (bool changed = true; changed && !contradiction;) {
      changed = false;
      for (std::size_t e = 0; e < eqs.size() && !contradiction; ++e) {
        SPoly cur = eqs[e];
        for (int z : zero) cur = cur.subst_zero(z);
        for (int v : nonzero)
          // theta1 coefficients stay in place: the minor reduction needs them
          while (cs.var_theta[v] != 1 && !cur.is_zero() && cur.divisible_by(v)) {
            cur = cur.divide_by_var(v);
            steps.push_back({"cancel_nonzero", static_cast<int>(e), cs.names[v], "",
                             -1, "nonvanishing factor removed"});
            changed = true;
          }
        if (!(cur == eqs[e])) eqs[e] = cur;
        if (cur.is_zero() || !cur.single_term()) continue;
        std::vector<int> unknowns;
        for (int v : cur.vars())
          if (!nonzero.count(v)) unknowns.push_back(v);
        if (unknowns.empty()) {
          steps.push_back({"nonzero_product", static_cast<int>(e), "",
                           spoly_str(cur, cs.names), -1,
                           "product of nonvanishing coefficients equals zero"});
          contradiction = true;
        } else if (unknowns.size() == 1) {
          int v = unknowns[0];
          if (!allow_group_zeros && group_vars.count(v)) continue;
          zero.insert(v);
          steps.push_back({"forced_zero", static_cast<int>(e), cs.names[v], "", -1,
                           "single-term equation forces the coefficient to vanish"});
          changed = true;
        }
      }
      for (int i = 2; i <= cs.k && !contradiction; ++i) {
        bool all_zero = !cs.new_groups[i].empty();
        for (int v : cs.new_groups[i])
          if (!zero.count(v)) all_zero = false;
        if (all_zero) {
          steps.push_back({"group_vanished", -1, "theta" + std::to_string(i), "", -1,
                           "all coefficients outside V_" +
                               std::to_string(p.degrees[i - 1] - 1) +
                               " vanish: nil degree drops below the profile"});
          contradiction = true;
        }
      }
    }
  };
  propagate(false);
  if (contradiction) {
    po.outcome = Outcome::Obstructed;
    return po;
  }

  // phase (ii): 2x2-minor reduction to a univariate polynomial in t = l1/l0
  std::vector<Gauss> t_candidates;
  bool obstructed_by_poly = false;
  if (v1_planar) {
    int l0 = cs.theta_vars[1][0], l1 = cs.theta_vars[1][1];
    std::set<int> lam{l0, l1};
    GPoly common;
    bool have = false;
    for (int i = 2; i <= cs.k; ++i) {
      std::set<int> grp;
      for (int v : cs.new_groups[i])
        if (!zero.count(v)) grp.insert(v);
      if (grp.empty()) continue;
      std::set<int> allowed = lam;
      allowed.insert(grp.begin(), grp.end());
      std::vector<SPoly> rows;
      std::vector<int> row_eq;
      for (std::size_t e = 0; e < eqs.size(); ++e) {
        if (eqs[e].is_zero()) continue;
        if (!eqs[e].only_vars(allowed)) continue;
        if (!eqs[e].linear_in(grp)) continue;
        rows.push_back(eqs[e]);
        row_eq.push_back(static_cast<int>(e));
      }
      std::size_t m = grp.size();
      if (rows.size() < m) continue;
      std::vector<int> gvars(grp.begin(), grp.end());
      detail::combinations(rows.size(), m, [&](const std::vector<std::size_t>& idx) {
        std::vector<std::vector<SPoly>> mat;
        for (std::size_t r : idx) {
          std::vector<SPoly> row;
          for (int v : gvars) row.push_back(rows[r].coefficient_of(v));
          mat.push_back(row);
        }
        SPoly det = detail::det_spoly(mat);
        if (det.is_zero()) return;
        auto uni = det.subst(l0, Gauss(1)).as_univariate(l1);
        if (!uni || uni->is_zero()) return;
        GPoly q = uni->monic();
        steps.push_back({"minor", row_eq[idx[0]], "theta" + std::to_string(i),
                         poly_str(q), -1,
                         "minor of the system linear in the new directions of theta" +
                             std::to_string(i)});
        common = have ? poly_gcd(common, q) : q;
        have = true;
      });
    }
    if (have) {
      steps.push_back({"lambda0_branch", -1, cs.names[l0], "", -1,
                       "l0 = 0 makes theta1 proportional to a real form: "
                       "theta1 ^ conj(theta1) = 0"});
      po.cert.univariate = poly_str(common);
      if (common.degree() == 0) {
        po.cert.real_roots = 0;
        steps.push_back({"univariate", -1, "", po.cert.univariate, 0,
                         "the minors have no common root"});
        obstructed_by_poly = true;
      } else {
        int rr = real_root_count_gauss(common);
        bool nonreal = has_nonreal_root_gauss(common);
        po.cert.real_roots = rr;
        steps.push_back({"univariate", -1, "", po.cert.univariate, rr,
                         nonreal ? "non-real root available"
                                 : "all roots real: theta1 ^ conj(theta1) = 0"});
        if (!nonreal)
          obstructed_by_poly = true;
        else
          for (const auto& root : gauss_roots(common))
            if (root.im != 0) t_candidates.push_back(root);
      }
    }
  }
  if (obstructed_by_poly) {
    po.outcome = Outcome::Obstructed;
    return po;
  }
  if (t_candidates.empty()) {
    // no usable root came out of the minors: resume full propagation,
    // now allowing new-direction coefficients to be forced to zero
    propagate(true);
    if (contradiction) {
      po.outcome = Outcome::Obstructed;
      return po;
    }
  }

  // witness search
  detail::SearchState st;
  st.budget = budget;
  std::vector<PForm> thetas;
  std::vector<std::pair<int, Gauss>> assigned;
  WitnessData wd{{}, Mat<Rat>(0, 0)};
  auto try_theta1 = [&](const std::vector<Gauss>& coeffs) -> bool {
    PForm th = detail::theta_from_assignment(cs, 1, coeffs);
    if (th.is_zero()) return false;
    if (nil_degree(f, th) != p.degrees[0]) return false;
    thetas.assign(1, th);
    if (!detail::independent_with_conjugates(thetas)) return false;
    assigned.clear();
    for (std::size_t c = 0; c < coeffs.size(); ++c)
      assigned.emplace_back(cs.theta_vars[1][c], coeffs[c]);
    return detail::search_theta(g, f, cs, 2, thetas, assigned, st, wd);
  };
  bool found = false;
  if (!t_candidates.empty()) {
    for (const auto& t : t_candidates) {
      std::vector<Gauss> coeffs(cs.theta_vars[1].size(), Gauss(0));
      coeffs[0] = Gauss(1);
      coeffs[1] = t;
      if (try_theta1(coeffs)) {
        found = true;
        break;
      }
    }
  } else {
    std::size_t nv = cs.theta_vars[1].size();
    for (std::size_t x = 0; x < nv && !found; ++x)
      for (std::size_t y = 0; y < nv && !found; ++y) {
        if (x == y) continue;
        std::vector<Gauss> coeffs(nv, Gauss(0));
        coeffs[x] = Gauss(1);
        coeffs[y] = Gauss::i();
        if (try_theta1(coeffs)) found = true;
      }
  }
  if (found) {
    po.outcome = Outcome::Admits;
    po.witness = wd;
    return po;
  }
  po.outcome = Outcome::Undecided;
  for (std::size_t e = 0; e < eqs.size(); ++e)
    if (!eqs[e].is_zero()) po.residual.push_back(spoly_str(eqs[e], cs.names));
  return po;
}

inline bool replay_certificate(const LieAlgebra& g, const NilProfile& p,
                               const Certificate& cert) {
  ProfileOutcome fresh = decide_profile(g, p);
  return fresh.outcome == Outcome::Obstructed && fresh.cert == cert;
}

//---------------------------------------------------------------------------
// classify
//---------------------------------------------------------------------------

namespace detail {
// generic profile enumeration for quasi-filiform forms outside the r >= 3
// Lemma (in particular t_1): every feasible non-decreasing sequence
inline std::vector<NilProfile> generic_profiles(const Filtration& f, int k) {
  std::vector<NilProfile> out;
  NilProfile cur;
  cur.degrees.assign(1, 1);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.degrees.size()) == k) {
      if (profile_feasible(f, cur)) out.push_back(cur);
      return;
    }
    for (int d = cur.degrees.back(); d <= f.m; ++d) {
      cur.degrees.push_back(d);
      rec();
      cur.degrees.pop_back();
    }
  };
  rec();
  return out;
}
}  // namespace detail

inline Verdict classify(const LieAlgebra& g, long budget = 100000) {
  require_checked(g);
  auto rep = g.structure();
  if (rep.cls == AlgClass::NotNilpotent) throw error("nilpotent algebra required");
  if (g.dim() % 2 != 0) throw error("even dimension required");
  if (rep.cls != AlgClass::Filiform && rep.cls != AlgClass::QuasiFiliform)
    throw error("out of classified scope");
  Verdict v;
  v.bound = type_bound(g);
  int n = g.dim() / 2;
  if (v.bound.k_max < n) {
    v.outcome = Outcome::Obstructed;
    ProfileOutcome po;
    po.outcome = Outcome::Obstructed;
    po.cert.steps.push_back(
        {"bound", -1, "", "", -1,
         "type bound k_max = " + std::to_string(v.bound.k_max) + " < n = " +
             std::to_string(n) + " (nil = " + std::to_string(v.bound.nil) +
             ", j = " + std::to_string(v.bound.j) + ")"});
    v.profiles.push_back(po);
    return v;
  }
  Filtration f = annihilator_filtration(g);
  std::vector<NilProfile> profiles = (rep.r >= 3)
                                         ? nil_profiles(g, n)
                                         : detail::generic_profiles(f, n);
  bool all_obstructed = true;
  for (const auto& p : profiles) {
    ProfileOutcome po = decide_profile(g, p, budget);
    v.profiles.push_back(po);
    if (po.outcome == Outcome::Admits) {
      v.outcome = Outcome::Admits;
      v.witness = po.witness;
      return v;
    }
    if (po.outcome != Outcome::Obstructed) all_obstructed = false;
  }
  v.outcome = (all_obstructed && !profiles.empty()) ? Outcome::Obstructed
                                                    : Outcome::Undecided;
  return v;
}

}  // namespace nilcx

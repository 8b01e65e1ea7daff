#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>

#include "helpers.hpp"

using namespace nilcx;
using namespace nilcx::testing;

namespace {

// scale so the first stored coefficient is 1; compares up to scalar multiples
SPoly normalize_spoly(const SPoly& p) {
  if (p.is_zero()) return p;
  Gauss lead = p.t.begin()->second;
  return (Gauss(1) / lead) * p;
}

std::set<std::string> normalized_strings(const std::vector<SPoly>& eqs,
                                         const std::vector<std::string>& names) {
  std::set<std::string> out;
  for (const auto& e : eqs) out.insert(spoly_str(normalize_spoly(e), names));
  return out;
}

int var_id(const ConstraintSystem& cs, const std::string& name) {
  for (std::size_t i = 0; i < cs.names.size(); ++i)
    if (cs.names[i] == name) return static_cast<int>(i);
  throw error("unknown variable " + name);
}

std::vector<PForm> expected_dim6_witness() {
  return {w(6, {0}) + Gauss::i() * w(6, {1}), w(6, {3}) + Gauss::i() * w(6, {5}),
          w(6, {2}) + Gauss::i() * w(6, {4})};
}

}  // namespace

TEST_CASE("type bound on reference algebras") {
  auto filiform4 = catalog_filiform(4);
  auto b4 = type_bound(filiform4);
  CHECK(b4.nil == 3);
  CHECK(b4.k_max == 1);

  auto filiform6 = catalog_filiform(6);
  CHECK(type_bound(filiform6).k_max == 1);

  auto lr = catalog_LR(2);
  auto blr = type_bound(lr);
  CHECK(blr.nil == 2);
  CHECK(blr.k_max == 2);

  // quasi-filiform t_r: the bound evaluates to r
  for (auto g : {catalog_N63(), catalog_T(3), catalog_T(4), catalog_L(4, 3),
                 catalog_L(5, 5)}) {
    auto rep = g.structure();
    REQUIRE(rep.r >= 3);
    CHECK(type_bound(g).k_max == rep.r);
  }
}

TEST_CASE("type bound agrees with direct search over the filtration") {
  std::vector<LieAlgebra> algebras = small_catalog();
  algebras.push_back(catalog_L(4, 3));
  algebras.push_back(catalog_L(4, 5));
  algebras.push_back(catalog_L(5, 5));
  algebras.push_back(catalog_T(4));
  algebras.push_back(catalog_filiform(6));
  for (const auto& g : algebras) {
    BoundData b;
    try {
      b = type_bound(g);
    } catch (const error&) {
      continue;  // quotients never stabilize at 1: theorem inapplicable
    }
    Filtration f = annihilator_filtration(g);
    // direct necessary condition: the theta's and their conjugates must fit
    // inside V_{nil(theta_k)}, i.e. dim V_{min(j+k-2, m)} >= 2k
    int bf = 0;
    for (int k = 1; k <= g.dim(); ++k) {
      int idx = (b.j == 1) ? std::min(k, f.m) : std::min(b.j + k - 2, f.m);
      if (f.spaces[idx].dim() >= 2 * k) bf = k;
    }
    // the closed-form bound is derived for indices below the nilindex; when
    // the index caps at m it stays a (possibly non-tight) upper bound
    CHECK(b.k_max >= bf);
    int top_idx = (b.j == 1) ? b.k_max : b.j + b.k_max - 2;
    if (top_idx <= f.m) CHECK(b.k_max == bf);
  }
}

TEST_CASE("nil profiles for quasi-filiform t_r") {
  auto n63 = catalog_N63();
  auto p3 = nil_profiles(n63, 3);
  REQUIRE(p3.size() == 1);  // the doubled profile needs k < r
  CHECK(p3[0].degrees == std::vector<int>{1, 3, 4});

  auto t85 = catalog_T(4);  // t_5 in dimension 8
  auto p4 = nil_profiles(t85, 4);
  REQUIRE(p4.size() == 2);
  CHECK(p4[0].degrees == std::vector<int>{1, 5, 6, 7});
  CHECK(p4[1].degrees == std::vector<int>{1, 5, 5, 6});

  auto p1 = nil_profiles(n63, 1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].degrees == std::vector<int>{1});

  CHECK_THROWS_AS(nil_profiles(catalog_filiform(4), 2), error);
  CHECK_THROWS_AS(nil_profiles(catalog_LR(2), 2), error);  // t_1 is out of scope
  CHECK_THROWS_AS(nil_profiles(n63, 0), error);
}

TEST_CASE("constraint extraction: supports and new directions") {
  auto g = catalog_dim6(1);
  NilProfile p{{1, 3, 4}};
  auto cs = extract_constraints(g, p);
  CHECK(cs.k == 3);
  REQUIRE(cs.theta_vars[1].size() == 2);  // V_1 = <w0, w1>
  REQUIRE(cs.theta_vars[2].size() == 5);  // V_3 = <w0, w1, w2, w3, w5>
  REQUIRE(cs.theta_vars[3].size() == 6);  // V_4 = everything

  std::set<std::string> g2, g3;
  for (int v : cs.new_groups[2]) g2.insert(cs.names[v]);
  for (int v : cs.new_groups[3]) g3.insert(cs.names[v]);
  CHECK(g2 == std::set<std::string>{"b3", "b5"});
  CHECK(g3 == std::set<std::string>{"g4"});
}

TEST_CASE("constraint extraction matches the displayed dim-6 system") {
  for (int delta : {0, 1, -1}) {
    auto g = catalog_dim6(delta);
    auto cs = extract_constraints(g, NilProfile{{1, 3, 4}});

    auto v = [&](const std::string& name) { return SPoly::var(var_id(cs, name)); };
    Gauss d(delta);
    std::vector<SPoly> expected = {
        v("b5") * v("l0") - v("b3") * v("l1"),
        Gauss(-1) * v("g3") * v("b3") * v("l1") + v("g4") * v("b2") * v("l1") +
            v("g5") * v("b3") * v("l0"),
        v("g4") * v("b5") * v("l1") + d * (v("g4") * v("b3") * v("l0")),
        Gauss(-1) * v("g3") * v("b5") * v("l1") -
            d * (v("g4") * v("b2") * v("l0")) + v("g5") * v("b5") * v("l0"),
    };
    std::vector<SPoly> nonzero_expected;
    for (const auto& e : expected)
      if (!e.is_zero()) nonzero_expected.push_back(e);

    CHECK(normalized_strings(cs.equations, cs.names) ==
          normalized_strings(nonzero_expected, cs.names));
  }
}

TEST_CASE("symbolic equations agree with numeric wedge evaluation") {
  Rng rng(101);
  for (auto g : {catalog_dim6(1), catalog_dim6(0)}) {
    NilProfile p{{1, 3, 4}};
    auto cs = extract_constraints(g, p);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Gauss> vals(cs.names.size());
      for (auto& x : vals) x = rng.gauss();
      // numeric thetas from the same V-basis rows
      std::vector<PForm> thetas(cs.k + 1, PForm::zero(cs.dim, 1));
      for (std::size_t id = 0; id < cs.names.size(); ++id) {
        int i = cs.var_theta[id];
        for (int c = 0; c < cs.dim; ++c)
          if (cs.var_row[id][c] != 0)
            thetas[i].add_term(1u << c, Gauss(cs.var_row[id][c]) * vals[id]);
      }
      for (std::size_t e = 0; e < cs.equations.size(); ++e) {
        auto [i, mask] = cs.sources[e];
        PForm acc = PForm::scalar(cs.dim, Gauss(1));
        for (int j = 1; j < i; ++j)
          if (p.degrees[j - 1] < p.degrees[i - 1]) acc = wedge(acc, thetas[j]);
        acc = wedge(acc, differential(g, thetas[i]));
        SPoly eq = cs.equations[e];
        for (std::size_t id = 0; id < vals.size(); ++id)
          eq = eq.subst(static_cast<int>(id), vals[id]);
        Gauss symbolic = eq.t.empty() ? Gauss(0) : eq.t.begin()->second;
        CHECK(acc.coeff(mask) == symbolic);
      }
    }
  }
}

TEST_CASE("profile decision: the dim-6 trichotomy") {
  NilProfile p{{1, 3, 4}};

  auto po0 = decide_profile(catalog_dim6(0), p);
  CHECK(po0.outcome == Outcome::Obstructed);
  CHECK(po0.cert.univariate == "t^2");
  CHECK(po0.cert.real_roots == 1);

  auto pom = decide_profile(catalog_dim6(-1), p);
  CHECK(pom.outcome == Outcome::Obstructed);
  CHECK(pom.cert.univariate == "t^2 - 1");
  CHECK(pom.cert.real_roots == 2);

  auto pop = decide_profile(catalog_dim6(1), p);
  CHECK(pop.outcome == Outcome::Admits);
  CHECK(pop.cert.univariate == "t^2 + 1");
  REQUIRE(pop.witness.has_value());
  auto expected = expected_dim6_witness();
  REQUIRE(pop.witness->thetas.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(pop.witness->thetas[i] == expected[i]);
}

TEST_CASE("infeasible profile is rejected with a certificate step") {
  auto l85 = catalog_L(4, 5);
  auto po = decide_profile(l85, NilProfile{{1, 5, 6, 7}});
  CHECK(po.outcome == Outcome::Obstructed);
  REQUIRE(!po.cert.steps.empty());
  CHECK(po.cert.steps[0].kind == "infeasible");
}

TEST_CASE("witness verification stages") {
  auto lr = catalog_LR(2);
  std::vector<PForm> lr_witness = {w(4, {0}) + Gauss::i() * w(4, {1}),
                                   w(4, {2}) + Gauss::i() * w(4, {3})};
  auto rep = verify_witness(lr, lr_witness);
  CHECK(rep.ok);
  REQUIRE(rep.stages.size() == 5);
  std::vector<std::string> order = {"nondegenerate", "closed", "pure", "nijenhuis",
                                    "gcs_type"};
  for (int i = 0; i < 5; ++i) {
    CHECK(rep.stages[i].first == order[i]);
    CHECK(rep.stages[i].second);
  }

  auto n63 = catalog_N63();
  CHECK(verify_witness(n63, expected_dim6_witness()).ok);

  // a real coframe is degenerate
  auto bad = verify_witness(lr, {w(4, {0}), w(4, {2})});
  CHECK(!bad.ok);
  CHECK(bad.failed_stage == "nondegenerate");

  // the N63 witness does not transfer to the delta = 0 algebra
  auto wrong = verify_witness(catalog_dim6(0), expected_dim6_witness());
  CHECK(!wrong.ok);
  CHECK(!wrong.failed_stage.empty());

  CHECK_THROWS_AS(verify_witness(lr, {lr_witness[0]}), error);
}

TEST_CASE("classify: admitting algebras and their witnesses") {
  auto vlr = classify(catalog_LR(2));
  CHECK(vlr.outcome == Outcome::Admits);
  REQUIRE(vlr.witness.has_value());
  REQUIRE(vlr.witness->thetas.size() == 2);
  CHECK(vlr.witness->thetas[0] == w(4, {0}) + Gauss::i() * w(4, {1}));
  CHECK(vlr.witness->thetas[1] == w(4, {2}) + Gauss::i() * w(4, {3}));
  CHECK(verify_witness(catalog_LR(2), vlr.witness->thetas).ok);

  for (auto g : {catalog_N63(), catalog_n63_salamon()}) {
    auto v = classify(g);
    CHECK(v.outcome == Outcome::Admits);
    REQUIRE(v.witness.has_value());
    CHECK(verify_witness(g, v.witness->thetas).ok);
  }
}

TEST_CASE("classify: obstructed algebras") {
  for (auto g : {catalog_dim6(0), catalog_dim6(-1), catalog_T(3)}) {
    auto v = classify(g);
    CHECK(v.outcome == Outcome::Obstructed);
    CHECK(!v.witness.has_value());
  }

  auto v105 = classify(catalog_L(5, 5));
  CHECK(v105.outcome == Outcome::Obstructed);

  auto v85 = classify(catalog_L(4, 5));
  CHECK(v85.outcome == Outcome::Obstructed);
  REQUIRE(v85.profiles.size() == 2);
  CHECK(v85.profiles[0].cert.steps[0].kind == "infeasible");
  CHECK(v85.profiles[1].outcome == Outcome::Obstructed);

  auto t85 = graded(catalog_T(4));
  t85.validate();
  CHECK(classify(t85).outcome == Outcome::Obstructed);

  auto vf = classify(catalog_filiform(6));
  CHECK(vf.outcome == Outcome::Obstructed);
  REQUIRE(vf.profiles.size() == 1);
  CHECK(vf.profiles[0].cert.steps[0].kind == "bound");
}

TEST_CASE("classify: scope guards") {
  CHECK_THROWS_WITH(classify(catalog_abelian(2)),
                    Catch::Matchers::ContainsSubstring("out of classified scope"));
  CHECK_THROWS_WITH(classify(catalog_filiform(5)),
                    Catch::Matchers::ContainsSubstring("even dimension"));
}

TEST_CASE("certificates replay from scratch") {
  struct Case {
    LieAlgebra g;
    NilProfile p;
  };
  std::vector<Case> cases = {{catalog_dim6(0), NilProfile{{1, 3, 4}}},
                             {catalog_dim6(-1), NilProfile{{1, 3, 4}}},
                             {catalog_L(5, 5), NilProfile{{1, 5, 6, 7, 8}}}};
  for (const auto& [g, p] : cases) {
    auto po = decide_profile(g, p);
    REQUIRE(po.outcome == Outcome::Obstructed);
    CHECK(replay_certificate(g, p, po.cert));

    Certificate tampered = po.cert;
    tampered.univariate = "t^9";
    CHECK(!replay_certificate(g, p, tampered));
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace nilcx;
using namespace nilcx::testing;

namespace {

bool spinor_eq(const Spinor& a, const Spinor& b) {
  return (a + (Gauss(-1) * b)).is_zero();
}

// theta_1 = w0 + i w1, theta_2 = w2 + i w3: coframe of the dim-4 witness
std::vector<PForm> lr_coframe() {
  return {w(4, {0}) + Gauss::i() * w(4, {1}), w(4, {2}) + Gauss::i() * w(4, {3})};
}

// theta_1 = w0 + i w1, theta_2 = w3 + i w5, theta_3 = w2 + i w4 (dim-6 witness)
std::vector<PForm> n63_coframe() {
  return {w(6, {0}) + Gauss::i() * w(6, {1}), w(6, {3}) + Gauss::i() * w(6, {5}),
          w(6, {2}) + Gauss::i() * w(6, {4})};
}

Spinor top_spinor(const std::vector<PForm>& coframe) {
  PForm f = PForm::scalar(coframe.front().n, Gauss(1));
  for (const auto& th : coframe) f = wedge(f, th);
  return Spinor::from_form(f);
}

}  // namespace

TEST_CASE("clifford action: contraction and wedge on explicit spinors") {
  int n = 4;
  GVecC x0 = GVecC::zero(n);
  x0.x[0] = 1;
  Spinor s = Spinor::from_form(w(n, {0, 1}));
  Spinor acted = clifford_act(x0, s);
  CHECK(spinor_eq(acted, Spinor::from_form(w(n, {1}))));

  GVecC w0 = GVecC::zero(n);
  w0.xi[0] = 1;
  Spinor one = Spinor::from_form(PForm::scalar(n, Gauss(1)));
  CHECK(spinor_eq(clifford_act(w0, one), Spinor::from_form(w(n, {0}))));

  // (X0 + w0) squares to the identity: <v, v> = 1
  GVecC v = GVecC::zero(n);
  v.x[0] = 1, v.xi[0] = 1;
  REQUIRE(pairing(v, v) == Gauss(1));
  Rng rng(83);
  for (int t = 0; t < 20; ++t) {
    Spinor r = rng.spinor(n);
    CHECK(spinor_eq(clifford_act(v, clifford_act(v, r)), r));
  }
}

TEST_CASE("clifford relation v.v.rho = <v,v> rho on random data") {
  Rng rng(89);
  for (int n : {2, 4}) {
    for (int t = 0; t < 25; ++t) {
      GVecC v = rng.gvec(n);
      Spinor r = rng.spinor(n);
      Spinor lhs = clifford_act(v, clifford_act(v, r));
      CHECK(spinor_eq(lhs, pairing(v, v) * r));
    }
  }
}

TEST_CASE("annihilator of the scalar and top spinors") {
  auto lr = catalog_LR(2);
  int n = lr.dim();

  Spinor one = Spinor::from_form(PForm::scalar(n, Gauss(1)));
  auto a1 = annihilator(lr, one);
  REQUIRE(a1.pure);
  REQUIRE(a1.basis.size() == std::size_t(n));
  for (const auto& b : a1.basis)
    for (const auto& c : b.xi) CHECK(c.is_zero());  // L_1 = g (x) C

  Spinor top = Spinor::from_form(w(n, {0, 1, 2, 3}));
  auto a2 = annihilator(lr, top);
  REQUIRE(a2.pure);
  REQUIRE(a2.basis.size() == std::size_t(n));
  for (const auto& b : a2.basis)
    for (const auto& c : b.x) CHECK(c.is_zero());  // L_top = g* (x) C
}

TEST_CASE("annihilator of the decomposable witness spinor is maximal isotropic") {
  auto lr = catalog_LR(2);
  Spinor omega = top_spinor(lr_coframe());
  auto ann = annihilator(lr, omega);
  REQUIRE(ann.pure);
  REQUIRE(ann.basis.size() == 4);

  // transversality L /\ conj(L) = 0: the 2n stacked rows have full rank
  std::vector<std::vector<Gauss>> rows;
  for (const auto& b : ann.basis) rows.push_back(b.flat());
  for (const auto& b : ann.basis) {
    GVecC c = b;
    for (auto& z : c.x) z = z.conj();
    for (auto& z : c.xi) z = z.conj();
    rows.push_back(c.flat());
  }
  CHECK(rank(from_rows(rows, 8)) == 8);
}

TEST_CASE("annihilator is isotropic and at most half-dimensional on random spinors") {
  Rng rng(97);
  auto lr = catalog_LR(2);
  int found = 0;
  for (int t = 0; t < 30; ++t) {
    Spinor r = rng.spinor(4);
    if (r.is_zero()) continue;
    ++found;
    auto ann = annihilator(lr, r);  // throws internally if not isotropic
    CHECK(ann.basis.size() <= 4);
    CHECK(ann.pure == (ann.basis.size() == 4));
    for (const auto& b : ann.basis) CHECK(clifford_act(b, r).is_zero());
  }
  CHECK(found >= 20);
}

TEST_CASE("spinor_from_data assembles Omega ^ exp(B + i w)") {
  // pure decomposable part only
  auto coframe = lr_coframe();
  Spinor s1 = spinor_from_data(coframe, PForm::zero(4, 2), PForm::zero(4, 2));
  CHECK(spinor_eq(s1, top_spinor(coframe)));

  // dim 2, symplectic part only: 1 + i w01
  Spinor s2 = spinor_from_data({}, PForm::zero(2, 2), w(2, {0, 1}));
  Spinor e2 = Spinor::from_form(PForm::scalar(2, Gauss(1)));
  e2.comp[2] = Gauss::i() * w(2, {0, 1});
  CHECK(spinor_eq(s2, e2));

  // dim 4: 1 + i w - w^w/2 with w = w01 + w23
  PForm om = w(4, {0, 1}) + w(4, {2, 3});
  Spinor s3 = spinor_from_data({}, PForm::zero(4, 2), om);
  CHECK(s3.comp[0].coeff(0) == Gauss(1));
  CHECK(s3.comp[2] == Gauss::i() * om);
  CHECK(s3.comp[4].coeff(0b1111) == Gauss(-1));
}

TEST_CASE("nondegeneracy condition on coframes") {
  auto lr = catalog_LR(2);
  auto coframe = lr_coframe();
  CHECK(cond_nondegenerate(lr, coframe, PForm::zero(4, 2), 2));

  // a real theta kills Omega ^ conj(Omega)
  std::vector<PForm> degenerate = {w(4, {0}), coframe[1]};
  CHECK(!cond_nondegenerate(lr, degenerate, PForm::zero(4, 2), 2));

  auto ab = catalog_abelian(2);
  CHECK(cond_nondegenerate(ab, {}, w(2, {0, 1}), 0));

  CHECK_THROWS_AS(cond_nondegenerate(lr, coframe, PForm::zero(4, 2), 1), error);

  auto n63 = catalog_N63();
  CHECK(cond_nondegenerate(n63, n63_coframe(), PForm::zero(6, 2), 3));
}

TEST_CASE("integrability of the witness spinors") {
  auto lr = catalog_LR(2);
  Spinor omega4 = top_spinor(lr_coframe());
  auto r1 = integrability(lr, omega4);
  CHECK(r1.closed);

  auto n63 = catalog_N63();
  Spinor omega6 = top_spinor(n63_coframe());
  auto r2 = integrability(n63, omega6);
  bool ok = r2.closed;
  if (!ok && r2.solution) {
    Spinor dr = Spinor::zero(6);
    for (const auto& f : omega6.comp) {
      PForm df = differential(n63, f);
      if (!df.is_zero()) dr.comp[df.deg] = dr.comp[df.deg] + df;
    }
    ok = spinor_eq(clifford_act(*r2.solution, omega6), dr);
  }
  CHECK(ok);
}

TEST_CASE("integrability fails for d-exact obstruction") {
  auto lr = catalog_LR(2);
  Spinor s = Spinor::from_form(w(4, {2}));  // d w2 = -w01, not in the image
  auto r = integrability(lr, s);
  CHECK(!r.closed);
  CHECK(!r.solution.has_value());
}

TEST_CASE("spinor line of explicit maximal isotropics") {
  auto lr = catalog_LR(2);
  int n = lr.dim();

  std::vector<GVecC> vecs, forms;
  for (int i = 0; i < n; ++i) {
    GVecC a = GVecC::zero(n), b = GVecC::zero(n);
    a.x[i] = 1, b.xi[i] = 1;
    vecs.push_back(a), forms.push_back(b);
  }
  Spinor line_v = spinor_line_from_L(lr, vecs);
  CHECK(spinor_projectively_equal(line_v,
                                  Spinor::from_form(PForm::scalar(n, Gauss(1)))));
  Spinor line_f = spinor_line_from_L(lr, forms);
  CHECK(spinor_projectively_equal(line_f, Spinor::from_form(w(n, {0, 1, 2, 3}))));

  // a non-maximal subspace has no unique line
  CHECK_THROWS_AS(spinor_line_from_L(lr, {vecs[0]}), error);
}

TEST_CASE("eigenspace of the complex-structure GCS recovers the witness line") {
  auto lr = catalog_LR(2);
  auto jmat = j_from_coframe(lr, lr_coframe());
  auto rep = gcs_validate(lr, gcs_from_complex(lr, jmat));
  REQUIRE(rep.valid());
  Spinor line = spinor_line_from_L(lr, rep.eigenbasis);
  CHECK(spinor_projectively_equal(line, top_spinor(lr_coframe())));
}

TEST_CASE("annihilator and spinor line are mutually inverse") {
  auto lr = catalog_LR(2);
  Spinor omega = top_spinor(lr_coframe());
  auto ann = annihilator(lr, omega);
  REQUIRE(ann.pure);
  Spinor back = spinor_line_from_L(lr, ann.basis);
  CHECK(spinor_projectively_equal(back, omega));
}

TEST_CASE("witness coframes satisfy the triangular differential chain") {
  struct Case {
    LieAlgebra g;
    std::vector<PForm> coframe;
  };
  std::vector<Case> cases = {{catalog_LR(2), lr_coframe()},
                             {catalog_N63(), n63_coframe()}};
  for (auto& [g, coframe] : cases) {
    g.validate();
    for (std::size_t i = 0; i < coframe.size(); ++i) {
      PForm d = differential(g, coframe[i]);
      std::vector<PForm> lower(coframe.begin(), coframe.begin() + i);
      CHECK(ideal_member(d, lower));
    }
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace nilcx;
using nilcx::testing::Rng;

static Poly poly(std::initializer_list<int> lowest_first) {
  Poly p;
  for (int c : lowest_first) p.c.push_back(Rat(c));
  p.trim();
  return p;
}

static Poly random_poly(Rng& rng, int deg) {
  Poly p;
  for (int i = 0; i < deg; ++i) p.c.push_back(rng.rat());
  p.c.push_back(Rat(1));
  return p;
}

TEST_CASE("division with remainder") {
  Poly p = poly({-1, 0, 0, 1});  // t^3 - 1
  Poly d = poly({-1, 1});        // t - 1
  auto [q, r] = divmod(p, d);
  CHECK(r.is_zero());
  CHECK(q == poly({1, 1, 1}));
  CHECK(q * d == p);

  auto [q2, r2] = divmod(poly({1, 0, 1}), poly({0, 1}));
  CHECK(q2 == poly({0, 1}));
  CHECK(r2 == poly({1}));
}

TEST_CASE("gcd and square-free part") {
  Poly a = poly({-1, 1});  // t - 1
  Poly b = poly({1, 1});   // t + 1
  Poly p = a * a * b;
  CHECK(poly_gcd(p, p.derivative()).monic() == a.monic());
  CHECK(square_free_part(p).monic() == (a * b).monic());

  Rng rng(41);
  for (int t = 0; t < 25; ++t) {
    Poly u = random_poly(rng, 3);
    Poly v = random_poly(rng, 2);
    Poly g = poly_gcd(u * v, v);
    auto [q, r] = divmod(v, g);
    CHECK(r.is_zero());
    auto [q2, r2] = divmod(u * v, g);
    CHECK(r2.is_zero());
    // exact division round-trip
    auto [q3, r3] = divmod(u * v, v);
    CHECK(r3.is_zero());
    CHECK(q3 == u);
  }
}

TEST_CASE("derivative, monic, evaluation, printing") {
  Poly p = poly({1, 2, 3});  // 3t^2 + 2t + 1
  CHECK(p.derivative() == poly({2, 6}));
  CHECK(p.at(Rat(2)) == 17);
  CHECK(p.degree() == 2);
  CHECK((Rat(2) * p).monic() == p.monic());
  CHECK(poly_str(poly({1, 0, 1})) == "t^2 + 1");
  CHECK(poly_str(poly({-1, 0, 1})) == "t^2 - 1");
  CHECK(poly_str(poly({0, 0, 1})) == "t^2");
  CHECK(poly_str(poly({0, 1})) == "t");
}

TEST_CASE("gaussian-coefficient polynomials split into real and imaginary parts") {
  GPoly p;
  p.c = {Gauss(Rat(1), Rat(2)), Gauss(Rat(0), Rat(-1)), Gauss(Rat(3), Rat(0))};
  CHECK(real_part(p) == poly({1, 0, 3}));
  CHECK(imag_part(p) == poly({2, -1}));
  CHECK(complexify(real_part(p)).c[2] == Gauss(3));
  // real roots of p are the common roots of both parts
  CHECK(real_locus(p).degree() <= 1);
}

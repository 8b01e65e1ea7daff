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

TEST_CASE("rational arithmetic is exact and reduced") {
  Rat a(2, 4);
  CHECK(a == Rat(1, 2));
  CHECK(rat_str(a) == "1/2");
  CHECK(rat_str(Rat(3)) == "3");
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) * Rat(3) == 1);
  CHECK(Rat(-2, 6) == Rat(-1, 3));
}

TEST_CASE("gaussian rationals form a field with involutive conjugation") {
  Gauss z(Rat(1, 2), Rat(-3));
  CHECK(z.conj().conj() == z);
  CHECK((z * z.conj()).is_real());
  CHECK(z.norm2() == Rat(1, 4) + Rat(9));
  CHECK(Gauss::i() * Gauss::i() == Gauss(-1));
  Gauss q = z / z;
  CHECK(q == Gauss(1));
  CHECK(Gauss(0).norm2() == 0);

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    Gauss v = rng.gauss();
    CHECK(v.norm2() >= 0);
    CHECK((v.norm2() == 0) == v.is_zero());
  }
}

TEST_CASE("rational and gaussian square roots") {
  CHECK(rational_sqrt(Rat(4, 9)) == Rat(2, 3));
  CHECK(!rational_sqrt(Rat(2)));
  CHECK(gauss_sqrt(Gauss(-1)));
  CHECK(*gauss_sqrt(Gauss(-1)) * *gauss_sqrt(Gauss(-1)) == Gauss(-1));
  // (1+i)^2 = 2i
  auto s = gauss_sqrt(Gauss(Rat(0), Rat(2)));
  REQUIRE(s);
  CHECK(*s * *s == Gauss(Rat(0), Rat(2)));
  CHECK(!gauss_sqrt(Gauss(Rat(0), Rat(1))));  // sqrt(i) leaves Q(i)
}

TEST_CASE("real_root_count on the reference polynomials") {
  CHECK(real_root_count(poly({1, 0, 1})) == 0);   // t^2 + 1
  CHECK(real_root_count(poly({-1, 0, 1})) == 2);  // t^2 - 1
  CHECK(real_root_count(poly({0, -1, 0, 1})) == 3);  // t^3 - t
  CHECK_THROWS_AS(real_root_count(Poly{}), error);
}

TEST_CASE("real_root_count counts distinct rational roots of factored products") {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    std::set<Rat> roots;
    Poly p;
    p.c = {Rat(1)};
    int nf = rng.small_int(1, 4);
    for (int f = 0; f < nf; ++f) {
      Rat r = rng.rat();
      roots.insert(r);
      Poly lin;
      lin.c = {-r, Rat(1)};
      // occasionally square a factor; distinct-root count must not change
      p = p * lin;
      if (rng.small_int(0, 1)) p = p * lin;
    }
    CHECK(real_root_count(p) == static_cast<int>(roots.size()));
    CHECK(real_root_count(p) == real_root_count(square_free_part(p)));
  }
}

TEST_CASE("has_nonreal_root mirrors the delta trichotomy") {
  CHECK(has_nonreal_root(poly({1, 0, 1})));    // t^2 + 1
  CHECK(!has_nonreal_root(poly({-1, 0, 1})));  // t^2 - 1
  CHECK(!has_nonreal_root(poly({0, 0, 1})));   // t^2, square-free part t
  CHECK_THROWS_AS(has_nonreal_root(poly({5})), error);
  for (int c = 1; c <= 6; ++c) {
    CHECK(has_nonreal_root(poly({c, 0, 1})));
    CHECK(!has_nonreal_root(poly({-c, 0, 1})));
  }
}

TEST_CASE("polynomials with gaussian coefficients: real locus and exact roots") {
  // (t - i)(t - 1): exactly one real root, and a non-real one
  GPoly p;
  p.c = {Gauss::i(), Gauss(-1) - Gauss::i(), Gauss(1)};
  CHECK(real_root_count_gauss(p) == 1);
  CHECK(has_nonreal_root_gauss(p));
  auto roots = gauss_roots(p);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) CHECK(p.at(r).is_zero());

  GPoly q;  // t^2 + 1 over Q(i): roots +-i
  q.c = {Gauss(1), Gauss(0), Gauss(1)};
  auto qr = gauss_roots(q);
  REQUIRE(qr.size() == 2);
  CHECK(qr[0] == Gauss::i());
  CHECK(!has_nonreal_root_gauss(GPoly{{Gauss(-1), Gauss(0), Gauss(1)}}));
}

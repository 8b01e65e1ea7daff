#pragma once

#include <random>
#include <vector>

#include <nilcx/nilcx.hpp>

namespace nilcx::testing {

// Deterministic small-scalar generators for property tests.
struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}

  int small_int(int lo = -3, int hi = 3) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  Rat rat() {
    int den = std::uniform_int_distribution<int>(1, 3)(gen);
    return Rat(small_int(), den);
  }
  Gauss gauss() { return Gauss(rat(), rat()); }

  std::vector<Rat> rat_vec(int n) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = rat();
    return v;
  }
  std::vector<Gauss> gauss_vec(int n) {
    std::vector<Gauss> v(n);
    for (auto& x : v) x = gauss();
    return v;
  }

  PForm form(int n, int deg, int terms = 3) {
    PForm f = PForm::zero(n, deg);
    for (int t = 0; t < terms; ++t) {
      std::uint32_t mask = 0;
      while (std::popcount(mask) != deg)
        mask = std::uniform_int_distribution<std::uint32_t>(0, (1u << n) - 1)(gen);
      f.add_term(mask, gauss());
    }
    return f;
  }

  GVecC gvec(int n) { return {gauss_vec(n), gauss_vec(n)}; }

  Spinor spinor(int n) {
    Spinor s = Spinor::zero(n);
    for (int d = 0; d <= n; ++d)
      if (std::uniform_int_distribution<int>(0, 1)(gen)) s.comp[d] = form(n, d, 2);
    return s;
  }
};

inline std::vector<LieAlgebra> small_catalog() {
  return {catalog_LR(2),  catalog_LR(3),   catalog_N63(),  catalog_n63_salamon(),
          catalog_dim6(0), catalog_dim6(-1), catalog_L(3, 3), catalog_T(3),
          catalog_filiform(4), catalog_abelian(2)};
}

inline std::vector<Rat> basis_vec(int n, int i) {
  std::vector<Rat> e(n, Rat(0));
  e[i] = 1;
  return e;
}

inline PForm w(int n, std::initializer_list<int> idx) { return PForm::basis(n, idx); }

}  // namespace nilcx::testing

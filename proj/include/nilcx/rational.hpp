#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace nilcx {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps gcd(num, den) = 1 and den > 0.
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rat& x) { return x.sign(); }

inline std::string rat_str(const Rat& x) { return x.str(); }

inline std::optional<Int> int_sqrt_exact(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

// sqrt of a nonnegative rational, when it is again rational.
inline std::optional<Rat> rational_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  auto n = int_sqrt_exact(numerator(x));
  auto d = int_sqrt_exact(denominator(x));
  if (!n || !d) return std::nullopt;
  return Rat(*n, *d);
}

// Element of Q(i). Every complex coefficient in the toolkit lives here.
struct Gauss {
  Rat re{0};
  Rat im{0};

  Gauss() = default;
  Gauss(Rat r) : re(std::move(r)) {}
  Gauss(long r) : re(r) {}
  Gauss(int r) : re(r) {}
  Gauss(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static Gauss i() { return Gauss(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Gauss conj() const { return Gauss(re, -im); }
  Rat norm2() const { return re * re + im * im; }

  Gauss operator-() const { return Gauss(-re, -im); }
  Gauss& operator+=(const Gauss& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gauss& operator-=(const Gauss& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
  friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
  friend Gauss operator*(const Gauss& a, const Gauss& b) {
    return Gauss(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Gauss operator/(const Gauss& a, const Gauss& b) {
    Rat n = b.norm2();
    if (n == 0) throw error("division by zero in Q(i)");
    Gauss c = a * b.conj();
    return Gauss(c.re / n, c.im / n);
  }
  Gauss& operator*=(const Gauss& o) { return *this = *this * o; }
  Gauss& operator/=(const Gauss& o) { return *this = *this / o; }
  friend bool operator==(const Gauss& a, const Gauss& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
  friend bool operator<(const Gauss& a, const Gauss& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

inline std::string gauss_str(const Gauss& z) {
  auto imag_part = [](const Rat& v) -> std::string {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return v.str() + "i";
  };
  if (z.im == 0) return z.re.str();
  if (z.re == 0) return imag_part(z.im);
  std::string s = z.re.str();
  if (z.im > 0) s += "+";
  return s + imag_part(z.im);
}

// sqrt in Q(i), when it exists there.
inline std::optional<Gauss> gauss_sqrt(const Gauss& z) {
  if (z.im == 0) {
    if (auto r = rational_sqrt(z.re)) return Gauss(*r);
    if (auto r = rational_sqrt(-z.re)) return Gauss(Rat(0), *r);
    return std::nullopt;
  }
  // (x+yi)^2 = a+bi: x^2 = (a + |z|)/2, y = b/(2x)
  auto m = rational_sqrt(z.norm2());
  if (!m) return std::nullopt;
  auto x = rational_sqrt((z.re + *m) / 2);
  if (!x || *x == 0) return std::nullopt;
  return Gauss(*x, z.im / (2 * *x));
}

}  // namespace nilcx

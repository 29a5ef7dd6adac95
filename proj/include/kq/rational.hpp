#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kq {

/// Arbitrary-precision rational. Canonical form (reduced, positive
/// denominator) is maintained by GMP for all arithmetic results.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p/q" or "p/q". Whitespace is not accepted.
inline Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), std::string(s).c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + std::string(s));
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Complex number with exact rational real and imaginary parts.
/// Closed under field operations; equality is exact.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT: implicit by design
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(long r) : re(r) {}  // NOLINT

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }

  /// re^2 + im^2, exact.
  Rat norm2() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    Rat n2 = o.norm2();
    if (n2 == 0) throw std::domain_error("division by zero Gaussian rational");
    Rat r = (re * o.re + im * o.im) / n2;
    Rat i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

/// "p/q", "p/q+r/si", "p/q-r/si", "r/si" or "0"; suitable for reports.
inline std::string to_string(const GaussRat& z) {
  if (z.is_zero()) return "0";
  std::string s;
  if (z.re != 0 || z.im == 0) s += to_string(z.re);
  if (z.im != 0) {
    if (z.im > 0 && !s.empty()) s += "+";
    if (z.im < 0) {
      s += "-";
      s += to_string(Rat(-z.im));
    } else {
      s += to_string(z.im);
    }
    s += "i";
  }
  return s;
}

inline GaussRat conj(const GaussRat& z) { return z.conj(); }

}  // namespace kq

#pragma once

#include <vector>

#include "kq/afrac.hpp"

namespace kq {

/// Complex vector field  sum_a holo[a] d/dz^a  +  sum_a anti[a] d/dzbar^a
/// with A-fraction coefficients. Closed under the Lie bracket.
struct PolyVectorField {
  std::vector<AFrac> holo;
  std::vector<AFrac> anti;

  static PolyVectorField zero(const ModelParamsPtr& p) {
    PolyVectorField f;
    f.holo.assign(static_cast<size_t>(p->n()), AFrac::zero(p));
    f.anti.assign(static_cast<size_t>(p->n()), AFrac::zero(p));
    return f;
  }

  int n() const { return static_cast<int>(holo.size()); }

  const ModelParamsPtr& params() const { return holo.at(0).params(); }

  bool is_zero() const {
    for (const auto& c : holo)
      if (!c.is_zero()) return false;
    for (const auto& c : anti)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Directional derivative of f along this field.
  AFrac apply(const AFrac& f) const {
    AFrac acc = AFrac::zero(f.params());
    for (int a = 0; a < n(); ++a) {
      auto ua = static_cast<size_t>(a);
      if (!holo[ua].is_zero()) acc = acc + holo[ua] * f.derivative(a, false);
      if (!anti[ua].is_zero()) acc = acc + anti[ua] * f.derivative(a, true);
    }
    return acc;
  }

  /// Field conjugation: real fields are the fixed points.
  PolyVectorField conj() const {
    PolyVectorField r;
    r.holo.reserve(holo.size());
    r.anti.reserve(anti.size());
    for (const auto& c : anti) r.holo.push_back(c.conj());
    for (const auto& c : holo) r.anti.push_back(c.conj());
    return r;
  }

  bool is_real() const { return *this == conj(); }

  PolyVectorField operator-() const {
    PolyVectorField r;
    for (const auto& c : holo) r.holo.push_back(-c);
    for (const auto& c : anti) r.anti.push_back(-c);
    return r;
  }

  friend PolyVectorField operator+(const PolyVectorField& x, const PolyVectorField& y) {
    PolyVectorField r;
    for (size_t j = 0; j < x.holo.size(); ++j) r.holo.push_back(x.holo[j] + y.holo[j]);
    for (size_t j = 0; j < x.anti.size(); ++j) r.anti.push_back(x.anti[j] + y.anti[j]);
    return r;
  }
  friend PolyVectorField operator-(const PolyVectorField& x, const PolyVectorField& y) {
    return x + (-y);
  }
  friend PolyVectorField operator*(const GaussRat& s, const PolyVectorField& x) {
    PolyVectorField r;
    for (const auto& c : x.holo) r.holo.push_back(s * c);
    for (const auto& c : x.anti) r.anti.push_back(s * c);
    return r;
  }
  friend PolyVectorField operator*(const AFrac& s, const PolyVectorField& x) {
    PolyVectorField r;
    for (const auto& c : x.holo) r.holo.push_back(s * c);
    for (const auto& c : x.anti) r.anti.push_back(s * c);
    return r;
  }

  friend bool operator==(const PolyVectorField& x, const PolyVectorField& y) {
    return x.holo == y.holo && x.anti == y.anti;
  }
  friend bool operator!=(const PolyVectorField& x, const PolyVectorField& y) { return !(x == y); }
};

/// Exact Lie bracket [X, Y]: component-wise X(Y^c) - Y(X^c) over both the
/// holomorphic and antiholomorphic coefficient slots.
inline PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  PolyVectorField r;
  const int n = x.n();
  r.holo.reserve(static_cast<size_t>(n));
  r.anti.reserve(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    auto ua = static_cast<size_t>(a);
    r.holo.push_back(x.apply(y.holo[ua]) - y.apply(x.holo[ua]));
  }
  for (int a = 0; a < n; ++a) {
    auto ua = static_cast<size_t>(a);
    r.anti.push_back(x.apply(y.anti[ua]) - y.apply(x.anti[ua]));
  }
  return r;
}

}  // namespace kq

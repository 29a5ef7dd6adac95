#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "kq/model.hpp"
#include "kq/poly.hpp"

namespace kq {

/// Element of the A-fraction ring: P(z, zbar) / A^m with polynomial
/// numerator and a power of the structural denominator A. Canonical form
/// divides A out of the numerator greedily, so exact equality of canonical
/// fields is exact equality of functions. Every closed-form object of the
/// model (metric components, observables, brackets) lives in this ring.
class AFrac {
 public:
  AFrac(Poly num, int apow, ModelParamsPtr params)
      : num_(std::move(num)), apow_(apow), params_(std::move(params)) {
    if (!params_) throw std::invalid_argument("AFrac: null params");
    if (num_.n() != params_->n()) throw std::invalid_argument("AFrac: numerator dimension mismatch");
    if (apow_ < 0) throw std::invalid_argument("AFrac: negative denominator power");
    canonicalize();
  }

  static AFrac zero(const ModelParamsPtr& p) { return AFrac(Poly::zero(p->n()), 0, p); }
  static AFrac one(const ModelParamsPtr& p) { return AFrac(Poly::one(p->n()), 0, p); }
  static AFrac constant(const ModelParamsPtr& p, GaussRat c) {
    return AFrac(Poly::constant(p->n(), std::move(c)), 0, p);
  }
  static AFrac from_poly(Poly q, const ModelParamsPtr& p) { return AFrac(std::move(q), 0, p); }
  static AFrac variable(const ModelParamsPtr& p, int idx, bool conjugate = false) {
    return AFrac(Poly::variable(p->n(), idx, conjugate), 0, p);
  }
  /// A itself, as a ring element.
  static AFrac denominator_base(const ModelParamsPtr& p) { return AFrac(p->A(), 0, p); }

  const Poly& num() const { return num_; }
  int apow() const { return apow_; }
  const ModelParamsPtr& params() const { return params_; }
  int n() const { return params_->n(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return apow_ == 0; }
  bool is_constant() const { return apow_ == 0 && num_.is_constant(); }
  GaussRat constant_value() const {
    if (!is_constant()) throw std::logic_error("AFrac: not a constant");
    return num_.constant_term();
  }

  /// Invariant under the conjugation swap z <-> zbar with coefficient
  /// conjugation; A is conjugation-symmetric, so only the numerator matters.
  bool is_real() const { return num_ == num_.conj(); }

  AFrac conj() const { return AFrac(num_.conj(), apow_, params_); }

  AFrac operator-() const { return AFrac(-num_, apow_, params_); }

  friend AFrac operator+(const AFrac& a, const AFrac& b) {
    a.check_compatible(b);
    int m = std::max(a.apow_, b.apow_);
    Poly num = a.scaled_num(m) + b.scaled_num(m);
    return AFrac(std::move(num), m, a.params_);
  }
  friend AFrac operator-(const AFrac& a, const AFrac& b) { return a + (-b); }

  friend AFrac operator*(const AFrac& a, const AFrac& b) {
    a.check_compatible(b);
    return AFrac(a.num_ * b.num_, a.apow_ + b.apow_, a.params_);
  }

  friend AFrac operator*(const GaussRat& s, const AFrac& a) {
    return AFrac(s * a.num_, a.apow_, a.params_);
  }
  friend AFrac operator*(const AFrac& a, const GaussRat& s) { return s * a; }

  friend bool operator==(const AFrac& a, const AFrac& b) {
    a.check_compatible(b);
    return a.apow_ == b.apow_ && a.num_ == b.num_;
  }
  friend bool operator!=(const AFrac& a, const AFrac& b) { return !(a == b); }

  /// Exact partial derivative: d(P/A^m) = (dP * A - m P dA) / A^{m+1}.
  AFrac derivative(int idx, bool conjugate) const {
    Poly dnum = num_.derivative(idx, conjugate);
    if (apow_ == 0) return AFrac(std::move(dnum), 0, params_);
    Poly da = params_->A().derivative(idx, conjugate);
    Poly top = dnum * params_->A() - GaussRat(Rat(apow_)) * (num_ * da);
    return AFrac(std::move(top), apow_ + 1, params_);
  }

  /// Multiplicative inverse when this is a unit of the ring, i.e. equal to
  /// c * A^j for a nonzero constant c. std::nullopt otherwise.
  std::optional<AFrac> inverse_if_unit() const {
    if (is_zero()) return std::nullopt;
    Poly p = num_;
    int j = 0;
    if (!params_->flat()) {
      while (!p.is_constant()) {
        auto q = p.divide_exact(params_->A());
        if (!q) return std::nullopt;
        p = std::move(*q);
        ++j;
      }
    }
    if (!p.is_constant()) return std::nullopt;
    GaussRat c = p.constant_term();
    if (c.is_zero()) return std::nullopt;
    GaussRat cinv = GaussRat(1) / c;
    // 1 / (c A^{j-m}) = (1/c) A^{m-j}
    int shift = apow_ - j;
    if (shift >= 0) {
      Poly apow_poly = Poly::one(params_->n());
      for (int t = 0; t < shift; ++t) apow_poly = apow_poly * params_->A();
      return AFrac(cinv * apow_poly, 0, params_);
    }
    return AFrac(Poly::constant(params_->n(), cinv), -shift, params_);
  }

  /// Floating evaluation; throws std::domain_error when A vanishes at the
  /// point (the boundary of the domain for k < 0).
  std::complex<double> eval(std::span<const std::complex<double>> point) const {
    std::complex<double> aval = params_->A().eval(point);
    if (apow_ > 0 && aval == std::complex<double>(0.0, 0.0))
      throw std::domain_error("AFrac::eval: point on the A = 0 boundary");
    std::complex<double> v = num_.eval(point);
    for (int t = 0; t < apow_; ++t) v /= aval;
    return v;
  }

  /// Exact evaluation at a Gaussian-rational point; throws on A = 0.
  GaussRat eval_exact(std::span<const GaussRat> point) const {
    GaussRat aval = params_->A().eval_exact(point);
    if (apow_ > 0 && aval.is_zero())
      throw std::domain_error("AFrac::eval_exact: point on the A = 0 boundary");
    GaussRat v = num_.eval_exact(point);
    for (int t = 0; t < apow_; ++t) v /= aval;
    return v;
  }

 private:
  void check_compatible(const AFrac& o) const {
    if (params_ != o.params_ && *params_ != *o.params_)
      throw std::invalid_argument("AFrac: params mismatch");
  }

  Poly scaled_num(int target_apow) const {
    Poly p = num_;
    for (int t = apow_; t < target_apow; ++t) p = p * params_->A();
    return p;
  }

  void canonicalize() {
    if (num_.is_zero() || params_->flat()) {
      apow_ = 0;
      return;
    }
    while (apow_ > 0) {
      auto q = num_.divide_exact(params_->A());
      if (!q) break;
      num_ = std::move(*q);
      --apow_;
    }
  }

  Poly num_;
  int apow_;
  ModelParamsPtr params_;
};

}  // namespace kq

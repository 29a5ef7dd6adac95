#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>

#include "kq/multiindex.hpp"
#include "kq/rational.hpp"

namespace kq {

/// Multivariate polynomial in z^1..z^n, zbar^1..zbar^n over the Gaussian
/// rationals. Canonical: no zero coefficients are stored, so equality of
/// the term maps is exact equality of polynomials.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, GaussRat>;

  explicit Poly(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Poly: n must be >= 1");
  }

  static Poly zero(int n) { return Poly(n); }

  static Poly constant(int n, GaussRat c) {
    Poly p(n);
    if (!c.is_zero()) p.terms_.emplace(MultiIndex(n), std::move(c));
    return p;
  }

  static Poly one(int n) { return constant(n, GaussRat(1)); }

  static Poly monomial(MultiIndex m, GaussRat c) {
    Poly p(m.n());
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  /// z^{idx+1} (conjugate=false) or zbar^{idx+1} (conjugate=true).
  static Poly variable(int n, int idx, bool conjugate = false) {
    if (idx < 0 || idx >= n) throw std::invalid_argument("Poly::variable: index out of range");
    MultiIndex m(n);
    if (conjugate)
      m.anti[static_cast<size_t>(idx)] = 1;
    else
      m.holo[static_cast<size_t>(idx)] = 1;
    return monomial(std::move(m), GaussRat(1));
  }

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  bool is_holomorphic() const {
    for (const auto& [m, c] : terms_)
      if (m.anti_degree() != 0) return false;
    return true;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }

  GaussRat constant_term() const {
    auto it = terms_.find(MultiIndex(n_));
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  GaussRat coeff(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  Poly operator-() const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_same_n(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_n(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_n(b);
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
  }

  friend Poly operator*(const GaussRat& s, const Poly& p) {
    Poly r(p.n_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  friend Poly operator*(const Poly& p, const GaussRat& s) { return s * p; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Exact partial derivative with respect to z^{idx+1} (or zbar^{idx+1}).
  Poly derivative(int idx, bool conjugate) const {
    if (idx < 0 || idx >= n_) throw std::invalid_argument("Poly::derivative: index out of range");
    Poly r(n_);
    auto ui = static_cast<size_t>(idx);
    for (const auto& [m, c] : terms_) {
      const auto& exps = conjugate ? m.anti : m.holo;
      if (exps[ui] == 0) continue;
      MultiIndex dm = m;
      auto& dexp = conjugate ? dm.anti : dm.holo;
      long e = dexp[ui];
      dexp[ui] -= 1;
      r.add_term(dm, c * GaussRat(Rat(e)));
    }
    return r;
  }

  /// Complex conjugate: swaps z and zbar and conjugates coefficients.
  Poly conj() const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m.conj(), c.conj());
    return r;
  }

  /// Floating evaluation at z = point (zbar evaluated as the conjugate).
  std::complex<double> eval(std::span<const std::complex<double>> point) const {
    if (static_cast<int>(point.size()) != n_)
      throw std::invalid_argument("Poly::eval: point dimension mismatch");
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t(to_double(c.re), to_double(c.im));
      for (int j = 0; j < n_; ++j) {
        auto uj = static_cast<size_t>(j);
        for (std::uint32_t e = 0; e < m.holo[uj]; ++e) t *= point[uj];
        for (std::uint32_t e = 0; e < m.anti[uj]; ++e) t *= std::conj(point[uj]);
      }
      acc += t;
    }
    return acc;
  }

  /// Exact evaluation at a Gaussian-rational point.
  GaussRat eval_exact(std::span<const GaussRat> point) const {
    if (static_cast<int>(point.size()) != n_)
      throw std::invalid_argument("Poly::eval_exact: point dimension mismatch");
    GaussRat acc(0);
    for (const auto& [m, c] : terms_) {
      GaussRat t = c;
      for (int j = 0; j < n_; ++j) {
        auto uj = static_cast<size_t>(j);
        for (std::uint32_t e = 0; e < m.holo[uj]; ++e) t *= point[uj];
        for (std::uint32_t e = 0; e < m.anti[uj]; ++e) t *= point[uj].conj();
      }
      acc += t;
    }
    return acc;
  }

  /// Leading term under the graded lex order. Requires a nonzero polynomial.
  std::pair<MultiIndex, GaussRat> leading_term() const {
    if (terms_.empty()) throw std::logic_error("Poly::leading_term on zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  /// Exact quotient this / d when the division leaves no remainder,
  /// std::nullopt otherwise. A single divisor decides membership in the
  /// principal ideal it generates, so a clean remainder test is enough.
  std::optional<Poly> divide_exact(const Poly& d) const {
    check_same_n(d);
    if (d.is_zero()) throw std::domain_error("Poly::divide_exact: zero divisor");
    Poly q(n_);
    Poly r(*this);
    auto [dlm, dlc] = d.leading_term();
    while (!r.is_zero()) {
      auto [rlm, rlc] = r.leading_term();
      MultiIndex shift(n_);
      bool divisible = true;
      for (size_t j = 0; j < rlm.holo.size() && divisible; ++j) {
        if (rlm.holo[j] < dlm.holo[j] || rlm.anti[j] < dlm.anti[j]) {
          divisible = false;
          break;
        }
        shift.holo[j] = rlm.holo[j] - dlm.holo[j];
        shift.anti[j] = rlm.anti[j] - dlm.anti[j];
      }
      if (!divisible) return std::nullopt;  // leading terms strictly decrease; any residue is final
      GaussRat qc = rlc / dlc;
      Poly qt = Poly::monomial(shift, qc);
      q += qt;
      r -= qt * d;
    }
    return q;
  }

 private:
  void check_same_n(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Poly: mixed variable counts");
  }

  void add_term(const MultiIndex& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int n_;
  TermMap terms_;
};

}  // namespace kq

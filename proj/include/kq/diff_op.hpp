#pragma once

#include <map>
#include <vector>

#include "kq/poly.hpp"
#include "kq/rational.hpp"

namespace kq {

/// Derivative multi-index over the holomorphic variables only.
struct DerivIndex {
  std::vector<std::uint32_t> d;

  explicit DerivIndex(int n) : d(static_cast<size_t>(n), 0) {}
  explicit DerivIndex(std::vector<std::uint32_t> v) : d(std::move(v)) {}

  int order() const {
    int s = 0;
    for (auto e : d) s += static_cast<int>(e);
    return s;
  }
  friend bool operator==(const DerivIndex& a, const DerivIndex& b) { return a.d == b.d; }
  friend bool operator<(const DerivIndex& a, const DerivIndex& b) {
    int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.d < b.d;
  }
};

/// Holomorphic differential operator: a finite sum of terms
///   c(z) d^{p}/dz^{p}
/// with holomorphic polynomial coefficients. Closed under addition,
/// composition and commutator, and acts exactly on holomorphic polynomials.
class HoloDiffOp {
 public:
  using TermMap = std::map<DerivIndex, Poly>;

  explicit HoloDiffOp(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("HoloDiffOp: n must be >= 1");
  }

  static HoloDiffOp zero(int n) { return HoloDiffOp(n); }

  static HoloDiffOp identity(int n) {
    HoloDiffOp op(n);
    op.add_term(DerivIndex(n), Poly::one(n));
    return op;
  }

  static HoloDiffOp multiplication(Poly c) {
    HoloDiffOp op(c.n());
    op.add_term(DerivIndex(c.n()), std::move(c));
    return op;
  }

  /// c(z) * d/dz^{idx+1}.
  static HoloDiffOp first_order(Poly c, int idx) {
    HoloDiffOp op(c.n());
    DerivIndex di(c.n());
    di.d[static_cast<size_t>(idx)] = 1;
    op.add_term(di, std::move(c));
    return op;
  }

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  int order() const {
    int o = 0;
    for (const auto& [d, c] : terms_) o = std::max(o, d.order());
    return o;
  }

  /// Largest possible degree change of the image: max over terms of
  /// deg(coefficient) - |derivative|.
  int max_degree_shift() const {
    int s = 0;
    bool first = true;
    for (const auto& [d, c] : terms_) {
      int shift = c.total_degree() - d.order();
      if (first || shift > s) s = shift;
      first = false;
    }
    return terms_.empty() ? 0 : s;
  }

  /// Exact action on a holomorphic polynomial.
  Poly apply(const Poly& psi) const {
    if (!psi.is_holomorphic()) throw std::invalid_argument("HoloDiffOp::apply: non-holomorphic input");
    Poly out = Poly::zero(n_);
    for (const auto& [d, c] : terms_) {
      Poly t = psi;
      for (int j = 0; j < n_ && !t.is_zero(); ++j)
        for (std::uint32_t e = 0; e < d.d[static_cast<size_t>(j)]; ++e)
          t = t.derivative(j, false);
      out += c * t;
    }
    return out;
  }

  void add_term(const DerivIndex& d, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HoloDiffOp operator-() const {
    HoloDiffOp r(n_);
    for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
    return r;
  }

  friend HoloDiffOp operator+(const HoloDiffOp& a, const HoloDiffOp& b) {
    HoloDiffOp r = a;
    for (const auto& [d, c] : b.terms_) r.add_term(d, c);
    return r;
  }
  friend HoloDiffOp operator-(const HoloDiffOp& a, const HoloDiffOp& b) { return a + (-b); }

  friend HoloDiffOp operator*(const GaussRat& s, const HoloDiffOp& a) {
    HoloDiffOp r(a.n_);
    if (s.is_zero()) return r;
    for (const auto& [d, c] : a.terms_) r.terms_.emplace(d, s * c);
    return r;
  }

  friend bool operator==(const HoloDiffOp& a, const HoloDiffOp& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HoloDiffOp& a, const HoloDiffOp& b) { return !(a == b); }

 private:
  int n_;
  TermMap terms_;
};

namespace detail {

inline Rat binomial(std::uint32_t n, std::uint32_t k) {
  Rat r(1);
  for (std::uint32_t j = 0; j < k; ++j) r *= Rat(static_cast<long>(n - j), static_cast<long>(j + 1));
  return r;
}

}  // namespace detail

/// Exact composition via the Leibniz rule:
///   d^p (b d^q .) = sum_{r <= p} C(p, r) (d^r b) d^{p + q - r}.
inline HoloDiffOp compose(const HoloDiffOp& p, const HoloDiffOp& q) {
  if (p.n() != q.n()) throw std::invalid_argument("compose: dimension mismatch");
  const int n = p.n();
  HoloDiffOp out(n);
  for (const auto& [dp, cp] : p.terms()) {
    for (const auto& [dq, cq] : q.terms()) {
      // enumerate r <= dp componentwise
      std::vector<std::uint32_t> r(static_cast<size_t>(n), 0);
      while (true) {
        Rat binom(1);
        for (int j = 0; j < n; ++j)
          binom *= detail::binomial(dp.d[static_cast<size_t>(j)], r[static_cast<size_t>(j)]);
        Poly db = cq;
        for (int j = 0; j < n && !db.is_zero(); ++j)
          for (std::uint32_t e = 0; e < r[static_cast<size_t>(j)]; ++e) db = db.derivative(j, false);
        if (!db.is_zero()) {
          DerivIndex dd(n);
          for (int j = 0; j < n; ++j)
            dd.d[static_cast<size_t>(j)] =
                dp.d[static_cast<size_t>(j)] - r[static_cast<size_t>(j)] + dq.d[static_cast<size_t>(j)];
          out.add_term(dd, (GaussRat(binom) * cp) * db);
        }
        // next multi-index r <= dp
        int j = 0;
        for (; j < n; ++j) {
          auto uj = static_cast<size_t>(j);
          if (r[uj] < dp.d[uj]) {
            ++r[uj];
            break;
          }
          r[uj] = 0;
        }
        if (j == n) break;
      }
    }
  }
  return out;
}

/// Exact commutator PQ - QP.
inline HoloDiffOp op_commutator(const HoloDiffOp& p, const HoloDiffOp& q) {
  return compose(p, q) - compose(q, p);
}

}  // namespace kq

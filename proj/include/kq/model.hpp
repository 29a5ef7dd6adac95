#pragma once

#include <memory>
#include <stdexcept>

#include "kq/poly.hpp"
#include "kq/rational.hpp"

namespace kq {

/// Model data (n, k, hbar) for the deformed oscillator on the constant
/// holomorphic curvature space: complex dimension n, curvature k, and the
/// quantization scale hbar. k and hbar are exact rationals fixed at
/// construction, so every identity check downstream is a decidable zero
/// test. Immutable; share via ModelParamsPtr.
class ModelParams {
 public:
  ModelParams(int n, Rat k, Rat hbar) : n_(n), k_(std::move(k)), hbar_(std::move(hbar)) {
    if (n_ < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
    if (hbar_ <= 0) throw std::invalid_argument("ModelParams: hbar must be positive");
    a_ = Poly::one(n_);
    for (int j = 0; j < n_; ++j) {
      MultiIndex m(n_);
      m.holo[static_cast<size_t>(j)] = 1;
      m.anti[static_cast<size_t>(j)] = 1;
      a_ += Poly::monomial(m, GaussRat(c()));
    }
  }

  int n() const { return n_; }
  const Rat& k() const { return k_; }
  const Rat& hbar() const { return hbar_; }

  /// k/4, the coefficient recurring in every closed form.
  Rat c() const { return Rat(k_ / 4); }

  bool flat() const { return k_ == 0; }

  /// The structural denominator A = 1 + (k/4) sum_v z^v zbar^v.
  const Poly& A() const { return a_; }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.hbar_ == b.hbar_;
  }
  friend bool operator!=(const ModelParams& a, const ModelParams& b) { return !(a == b); }

 private:
  int n_;
  Rat k_;
  Rat hbar_;
  Poly a_{1};
};

using ModelParamsPtr = std::shared_ptr<const ModelParams>;

inline ModelParamsPtr make_params(int n, Rat k, Rat hbar) {
  return std::make_shared<const ModelParams>(n, std::move(k), std::move(hbar));
}

}  // namespace kq

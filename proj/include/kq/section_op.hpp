#pragma once

#include <optional>

#include "kq/diff_op.hpp"
#include "kq/geometry.hpp"
#include "kq/observables.hpp"

namespace kq {

/// First-order operator on trivialized sections:
///   phi  |->  sum_a holo[a] d_a phi + sum_a anti[a] dbar_a phi + scalar * phi.
/// The commutator of two such operators is again first order, so the type
/// is closed under the brackets the prequantization layer needs.
struct SectionOp {
  std::vector<AFrac> holo;
  std::vector<AFrac> anti;
  AFrac scalar;

  SectionOp(const ModelParamsPtr& p)
      : holo(static_cast<size_t>(p->n()), AFrac::zero(p)),
        anti(static_cast<size_t>(p->n()), AFrac::zero(p)),
        scalar(AFrac::zero(p)) {}

  static SectionOp zero(const ModelParamsPtr& p) { return SectionOp(p); }

  static SectionOp multiplication(const AFrac& f) {
    SectionOp op(f.params());
    op.scalar = f;
    return op;
  }

  static SectionOp from_field(const PolyVectorField& x) {
    SectionOp op(x.params());
    op.holo = x.holo;
    op.anti = x.anti;
    return op;
  }

  int n() const { return static_cast<int>(holo.size()); }
  const ModelParamsPtr& params() const { return scalar.params(); }

  bool is_zero() const {
    if (!scalar.is_zero()) return false;
    for (const auto& c : holo)
      if (!c.is_zero()) return false;
    for (const auto& c : anti)
      if (!c.is_zero()) return false;
    return true;
  }

  PolyVectorField vector_part() const {
    PolyVectorField v;
    v.holo = holo;
    v.anti = anti;
    return v;
  }

  AFrac apply(const AFrac& phi) const {
    AFrac out = scalar * phi;
    for (int a = 0; a < n(); ++a) {
      auto ua = static_cast<size_t>(a);
      if (!holo[ua].is_zero()) out = out + holo[ua] * phi.derivative(a, false);
      if (!anti[ua].is_zero()) out = out + anti[ua] * phi.derivative(a, true);
    }
    return out;
  }

  SectionOp operator-() const {
    SectionOp r(params());
    for (size_t j = 0; j < holo.size(); ++j) {
      r.holo[j] = -holo[j];
      r.anti[j] = -anti[j];
    }
    r.scalar = -scalar;
    return r;
  }

  friend SectionOp operator+(const SectionOp& a, const SectionOp& b) {
    SectionOp r(a.params());
    for (size_t j = 0; j < a.holo.size(); ++j) {
      r.holo[j] = a.holo[j] + b.holo[j];
      r.anti[j] = a.anti[j] + b.anti[j];
    }
    r.scalar = a.scalar + b.scalar;
    return r;
  }
  friend SectionOp operator-(const SectionOp& a, const SectionOp& b) { return a + (-b); }

  friend SectionOp operator*(const GaussRat& s, const SectionOp& a) {
    SectionOp r(a.params());
    for (size_t j = 0; j < a.holo.size(); ++j) {
      r.holo[j] = s * a.holo[j];
      r.anti[j] = s * a.anti[j];
    }
    r.scalar = s * a.scalar;
    return r;
  }

  friend bool operator==(const SectionOp& a, const SectionOp& b) {
    return a.holo == b.holo && a.anti == b.anti && a.scalar == b.scalar;
  }
  friend bool operator!=(const SectionOp& a, const SectionOp& b) { return !(a == b); }
};

/// [X + f, Y + g] = [X, Y] + X(g) - Y(f): the second-order parts cancel.
inline SectionOp section_commutator(const SectionOp& a, const SectionOp& b) {
  PolyVectorField x = a.vector_part();
  PolyVectorField y = b.vector_part();
  SectionOp r = SectionOp::from_field(lie_bracket(x, y));
  r.scalar = x.apply(b.scalar) - y.apply(a.scalar);
  return r;
}

/// Covariant derivative on trivialized sections:
///   D_X phi = X phi - i hbar^{-1} alpha(X) phi.
inline SectionOp covariant_derivative(const PolyVectorField& x, const ConnectionForm& c) {
  SectionOp op = SectionOp::from_field(x);
  const auto& p = c.params;
  GaussRat factor = GaussRat(Rat(0), Rat(-1)) * GaussRat(Rat(1) / p->hbar());
  op.scalar = factor * c.pair(x);
  return op;
}

/// Prequantization  f  |->  f - i hbar D_{V(f)}  =  -i hbar V(f) + (f - alpha(V(f))).
inline SectionOp prequantize(const Observable& f, const Model& model) {
  PolyVectorField vf = hamiltonian_field(f, model.omega);
  const auto& p = model.params;
  GaussRat minus_i_hbar = GaussRat(Rat(0), -p->hbar());
  SectionOp op = minus_i_hbar * SectionOp::from_field(vf);
  op.scalar = op.scalar + f.value - model.alpha.pair(vf);
  return op;
}

/// The geometric quantizer  Q f = -i hbar D_{V(f)} + f - (i hbar / 2) a[f],
/// restricted to holomorphic wave functions. Requires a preservation
/// certificate; the assembled coefficients must close on holomorphic
/// polynomials (no zbar dependence may survive).
struct QuantizedOperator {
  SectionOp full;      // acts on all sections
  HoloDiffOp on_holo;  // the restriction to holomorphic wave functions

  QuantizedOperator(SectionOp f, HoloDiffOp h) : full(std::move(f)), on_holo(std::move(h)) {}
};

inline QuantizedOperator quantize(const Observable& f, const PreservationCertificate& cert,
                                  const Model& model) {
  if (!cert.preserved)
    throw std::invalid_argument("quantize: observable is not polarization-preserving");
  const auto& p = model.params;
  SectionOp op = prequantize(f, model);
  GaussRat half_i_hbar = GaussRat(Rat(0), Rat(p->hbar() / 2));
  op.scalar = op.scalar - half_i_hbar * cert.a_trace;

  HoloDiffOp restricted(p->n());
  for (int a = 0; a < p->n(); ++a) {
    const AFrac& c = op.holo[static_cast<size_t>(a)];
    if (c.is_zero()) continue;
    if (!c.is_polynomial() || !c.num().is_holomorphic())
      throw std::logic_error("quantize: holomorphic closure violated in a derivative coefficient");
    restricted.add_term([&] {
      DerivIndex d(p->n());
      d.d[static_cast<size_t>(a)] = 1;
      return d;
    }(), c.num());
  }
  if (!op.scalar.is_zero()) {
    if (!op.scalar.is_polynomial() || !op.scalar.num().is_holomorphic())
      throw std::logic_error("quantize: holomorphic closure violated in the scalar part");
    restricted.add_term(DerivIndex(p->n()), op.scalar.num());
  }
  return QuantizedOperator(std::move(op), std::move(restricted));
}

/// Quantizes after checking preservation; convenience for family members.
inline QuantizedOperator quantize(const Observable& f, const Model& model) {
  return quantize(f, require_preserved(f, model.metric, model.omega), model);
}

struct HomomorphismCheck {
  GaussRat constant;              // the single c with [Qf, Qg] = c Q{f,g}
  bool calibrated = false;
  bool holds_quantized = false;   // all family pairs, exact
  bool holds_prequantized = false;
};

/// Calibrates the bracket-transfer constant on one pair and then enforces
/// it on every pair from {H, N^a, Nbar^a, Hmix^{a bbar}}, both for the
/// quantizer and for prequantization. Everything is exact; the expected
/// constant is -i hbar.
inline HomomorphismCheck check_homomorphism(const Model& model) {
  ObservableFamily fam = build_family(model.params);
  std::vector<Observable> all = {fam.H};
  for (const auto& o : fam.N) all.push_back(o);
  for (const auto& o : fam.Nbar) all.push_back(o);
  for (const auto& row : fam.Hmix)
    for (const auto& o : row) all.push_back(o);

  std::vector<QuantizedOperator> q;
  std::vector<SectionOp> pre;
  q.reserve(all.size());
  pre.reserve(all.size());
  for (const auto& o : all) {
    q.push_back(quantize(o, model));
    pre.push_back(prequantize(o, model));
  }

  HomomorphismCheck out;
  out.constant = GaussRat(0);
  auto quantize_bracket = [&](size_t i, size_t j) {
    Observable br = poisson(all[i], all[j], model.omega);
    return quantize(br, model).on_holo;
  };

  for (size_t i = 0; i < all.size() && !out.calibrated; ++i)
    for (size_t j = 0; j < all.size() && !out.calibrated; ++j) {
      HoloDiffOp rhs = quantize_bracket(i, j);
      if (rhs.is_zero()) continue;
      HoloDiffOp lhs = op_commutator(q[i].on_holo, q[j].on_holo);
      const auto& [d, coeff] = *rhs.terms().begin();
      auto it = lhs.terms().find(d);
      if (it == lhs.terms().end()) continue;
      const auto& [m, c0] = *coeff.terms().begin();
      GaussRat num = it->second.coeff(m);
      if (num.is_zero()) continue;
      out.constant = num / c0;
      out.calibrated = true;
    }
  if (!out.calibrated) return out;

  out.holds_quantized = true;
  out.holds_prequantized = true;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = 0; j < all.size(); ++j) {
      if (op_commutator(q[i].on_holo, q[j].on_holo) != out.constant * quantize_bracket(i, j))
        out.holds_quantized = false;
      Observable br = poisson(all[i], all[j], model.omega);
      if (section_commutator(pre[i], pre[j]) != out.constant * prequantize(br, model))
        out.holds_prequantized = false;
    }
  return out;
}

}  // namespace kq

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kq/geometry.hpp"

namespace kq {

/// Curve given by samples; velocities and accelerations may be supplied
/// analytically or left to central differences on interior samples.
struct SampledCurve {
  std::vector<double> times;
  std::vector<std::vector<std::complex<double>>> points;
  std::optional<std::vector<std::vector<std::complex<double>>>> velocities;
  std::optional<std::vector<std::vector<std::complex<double>>>> accelerations;

  void validate(int n) const {
    if (times.size() != points.size() || times.size() < 3)
      throw std::invalid_argument("SampledCurve: need at least three samples");
    for (size_t j = 1; j < times.size(); ++j)
      if (times[j] <= times[j - 1])
        throw std::invalid_argument("SampledCurve: times must be strictly increasing");
    for (const auto& p : points)
      if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument("SampledCurve: point dimension mismatch");
  }
};

struct HplanarSample {
  double time = 0.0;
  double residual = 0.0;  // g-orthogonal distance of the acceleration to span{chi, J chi}
  double a = 0.0;         // fitted tangential coefficient
  double b = 0.0;         // fitted J-coefficient
};

/// Tests the defining property of holomorphically planar curves: the
/// covariant acceleration must lie in the real span of {chi, J chi}. The
/// fit is complex least squares in the metric at each sample; the
/// orthogonal remainder is the reported residual.
inline std::vector<HplanarSample> hplanarity_residual(const SampledCurve& curve,
                                                      const HermitianMetric& m) {
  const int n = m.params->n();
  curve.validate(n);
  const size_t count = curve.times.size();

  auto velocity = [&](size_t j) {
    if (curve.velocities) return (*curve.velocities)[j];
    double dt = curve.times[j + 1] - curve.times[j - 1];
    std::vector<std::complex<double>> v(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q)
      v[static_cast<size_t>(q)] =
          (curve.points[j + 1][static_cast<size_t>(q)] - curve.points[j - 1][static_cast<size_t>(q)]) / dt;
    return v;
  };
  auto acceleration = [&](size_t j) {
    if (curve.accelerations) return (*curve.accelerations)[j];
    double dtp = curve.times[j + 1] - curve.times[j];
    double dtm = curve.times[j] - curve.times[j - 1];
    std::vector<std::complex<double>> a(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
      auto uq = static_cast<size_t>(q);
      a[uq] = 2.0 * (dtm * curve.points[j + 1][uq] - (dtp + dtm) * curve.points[j][uq] +
                     dtp * curve.points[j - 1][uq]) /
              (dtp * dtm * (dtp + dtm));
    }
    return a;
  };

  std::vector<HplanarSample> out;
  for (size_t j = 1; j + 1 < count; ++j) {
    const auto& pt = curve.points[j];
    auto chi = velocity(j);
    auto acc = acceleration(j);

    // covariant acceleration, holomorphic components
    std::vector<std::complex<double>> nabla(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
      std::complex<double> v = acc[static_cast<size_t>(a)];
      for (int b = 0; b < n; ++b)
        for (int g = 0; g < n; ++g)
          v += m.gamma(a, b, g).eval(pt) * chi[static_cast<size_t>(b)] * chi[static_cast<size_t>(g)];
      nabla[static_cast<size_t>(a)] = v;
    }

    // Hermitian inner product in the metric at the sample
    auto dot = [&](const std::vector<std::complex<double>>& x,
                   const std::vector<std::complex<double>>& y) {
      std::complex<double> acc2 = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          acc2 += m.g_lower[static_cast<size_t>(a)][static_cast<size_t>(b)].eval(pt) *
                  x[static_cast<size_t>(a)] * std::conj(y[static_cast<size_t>(b)]);
      return acc2;
    };
    std::complex<double> c2 = dot(chi, chi);
    if (std::abs(c2) < 1e-14)
      throw std::domain_error("hplanarity_residual: vanishing velocity at t=" +
                              std::to_string(curve.times[j]));
    std::complex<double> coeff = dot(nabla, chi) / c2;
    std::vector<std::complex<double>> rem(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a)
      rem[static_cast<size_t>(a)] = nabla[static_cast<size_t>(a)] - coeff * chi[static_cast<size_t>(a)];
    HplanarSample s;
    s.time = curve.times[j];
    s.residual = std::sqrt(std::abs(dot(rem, rem).real()));
    s.a = coeff.real();
    s.b = coeff.imag();
    out.push_back(s);
  }
  return out;
}

/// Solves Gamma^a_{bc} = phi_b delta^a_c + phi_c delta^a_b exactly for the
/// gradient components phi_b; success certifies equivalence-to-flat of the
/// connection. The pair (phi, true) or (zeros, false).
inline std::pair<std::vector<AFrac>, bool> flatness_certificate(const HermitianMetric& m) {
  const auto& p = m.params;
  const int n = p->n();
  std::vector<AFrac> phi(static_cast<size_t>(n), AFrac::zero(p));
  GaussRat half(Rat(1, 2));
  for (int b = 0; b < n; ++b) {
    if (n == 1) {
      phi[static_cast<size_t>(b)] = half * m.gamma(0, 0, 0);
    } else {
      int a = (b + 1) % n;
      phi[static_cast<size_t>(b)] = m.gamma(a, b, a);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        AFrac expected = AFrac::zero(p);
        if (a == c) expected = expected + phi[static_cast<size_t>(b)];
        if (a == b) expected = expected + phi[static_cast<size_t>(c)];
        if (m.gamma(a, b, c) != expected)
          return {std::vector<AFrac>(static_cast<size_t>(n), AFrac::zero(p)), false};
      }
  return {phi, true};
}

/// A pair of metrics on the same chart plus the conformal-type factor
/// e^{2 phi} = A^{e2phi_apow/... } restricted to powers of A so everything
/// stays in the ring; b is the transfer tensor of the pair.
struct HprojPair {
  HermitianMetric g;
  HermitianMetric gprime;
  int e2phi_apow = 0;  // e^{2 phi} = A^{e2phi_apow}; phi = (e2phi_apow/2) ln A

  AFrac e2phi() const {
    const auto& p = g.params;
    if (e2phi_apow >= 0) {
      Poly q = Poly::one(p->n());
      for (int t = 0; t < e2phi_apow; ++t) q = q * p->A();
      return AFrac::from_poly(q, p);
    }
    return AFrac(Poly::one(p->n()), -e2phi_apow, p);
  }

  /// d_mu phi = (e2phi_apow/2) (k/4) zbar^mu / A.
  AFrac dphi(int mu) const {
    const auto& p = g.params;
    GaussRat c(Rat(e2phi_apow, 2) * p->c());
    return AFrac(c * Poly::variable(p->n(), mu, true), 1, p);
  }

  /// b_{a bbar} = e^{2 phi} g'^{mubar nu} g_{mubar a} g_{nu bbar}.
  AMatrix transfer_tensor() const {
    const auto& p = g.params;
    const int n = p->n();
    AMatrix mprod = amatrix(p);  // L U'^T
    for (int a = 0; a < n; ++a)
      for (int v = 0; v < n; ++v) {
        AFrac acc = AFrac::zero(p);
        for (int u = 0; u < n; ++u)
          acc = acc + g.g_lower[static_cast<size_t>(a)][static_cast<size_t>(u)] *
                          gprime.g_upper[static_cast<size_t>(v)][static_cast<size_t>(u)];
        mprod[static_cast<size_t>(a)][static_cast<size_t>(v)] = acc;
      }
    AMatrix b = amatrix(p);
    AFrac e2 = e2phi();
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb) {
        AFrac acc = AFrac::zero(p);
        for (int v = 0; v < n; ++v)
          acc = acc + mprod[static_cast<size_t>(a)][static_cast<size_t>(v)] *
                          g.g_lower[static_cast<size_t>(v)][static_cast<size_t>(bb)];
        b[static_cast<size_t>(a)][static_cast<size_t>(bb)] = e2 * acc;
      }
    return b;
  }
};

/// Residual tensors of the mapping equation b_{a bbar; c} = 2 phi'_a g_{c bbar}.
/// In complex dimension one the equation never constrains the pair (every
/// regular curve is holomorphically planar there), and indeed the gradient
/// phi' is *determined* by the equation: it is solved for exactly by the
/// trace contraction, and the reported residual is the obstruction left
/// over. The symmetrized variant gets its own solved gradient.
struct PairResidualReport {
  std::vector<AMatrix> residual;      // residual[a][b][c], as-stated form
  std::vector<AMatrix> residual_sym;  // alpha-gamma symmetrized form
  std::vector<AFrac> phi_solved;      // phi'_a solved from the trace
  bool exact_zero = false;
  bool sym_exact_zero = false;
  bool phi_solved_closed = false;          // d_b phi'_a = d_a phi'_b
  bool gradient_matches_input_phi = false; // solved phi' equals the contracted gradient of phi
};

inline PairResidualReport pair_residual(const HprojPair& pair) {
  const auto& m = pair.g;
  const auto& p = m.params;
  const int n = p->n();
  AMatrix b = pair.transfer_tensor();

  // b_{a bbar; c} = d_c b_{a bbar} - Gamma^s_{ca} b_{s bbar}
  std::vector<AMatrix> bcov(static_cast<size_t>(n), amatrix(p));
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) {
        AFrac acc = b[static_cast<size_t>(a)][static_cast<size_t>(bb)].derivative(c, false);
        for (int s = 0; s < n; ++s)
          acc = acc - m.gamma(s, c, a) * b[static_cast<size_t>(s)][static_cast<size_t>(bb)];
        bcov[static_cast<size_t>(a)][static_cast<size_t>(bb)][static_cast<size_t>(c)] = acc;
      }

  PairResidualReport rep;
  GaussRat inv2n(Rat(1, 2 * n));
  GaussRat invn1(Rat(1, n + 1));
  rep.phi_solved.assign(static_cast<size_t>(n), AFrac::zero(p));
  std::vector<AFrac> phi_sym(static_cast<size_t>(n), AFrac::zero(p));
  for (int a = 0; a < n; ++a) {
    AFrac tr = AFrac::zero(p);
    AFrac tr_sym = AFrac::zero(p);
    for (int c = 0; c < n; ++c)
      for (int bb = 0; bb < n; ++bb) {
        const AFrac& gup = m.g_upper[static_cast<size_t>(c)][static_cast<size_t>(bb)];
        tr = tr + gup * bcov[static_cast<size_t>(a)][static_cast<size_t>(bb)][static_cast<size_t>(c)];
        AFrac sym = GaussRat(Rat(1, 2)) *
                    (bcov[static_cast<size_t>(a)][static_cast<size_t>(bb)][static_cast<size_t>(c)] +
                     bcov[static_cast<size_t>(c)][static_cast<size_t>(bb)][static_cast<size_t>(a)]);
        tr_sym = tr_sym + gup * sym;
      }
    rep.phi_solved[static_cast<size_t>(a)] = inv2n * tr;
    phi_sym[static_cast<size_t>(a)] = invn1 * tr_sym;
  }

  rep.residual.assign(static_cast<size_t>(n), amatrix(p));
  rep.residual_sym.assign(static_cast<size_t>(n), amatrix(p));
  rep.exact_zero = true;
  rep.sym_exact_zero = true;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) {
        auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(bb), uc = static_cast<size_t>(c);
        AFrac r = bcov[ua][ub][uc] -
                  GaussRat(Rat(2)) * rep.phi_solved[ua] * m.g_lower[uc][ub];
        if (!r.is_zero()) rep.exact_zero = false;
        rep.residual[ua][ub][uc] = std::move(r);
        AFrac sym_lhs = GaussRat(Rat(1, 2)) * (bcov[ua][ub][uc] + bcov[uc][ub][ua]);
        AFrac rs = sym_lhs - phi_sym[ua] * m.g_lower[uc][ub] - phi_sym[uc] * m.g_lower[ua][ub];
        if (!rs.is_zero()) rep.sym_exact_zero = false;
        rep.residual_sym[ua][ub][uc] = std::move(rs);
      }

  rep.phi_solved_closed = true;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      if (rep.phi_solved[static_cast<size_t>(a)].derivative(bb, false) !=
          rep.phi_solved[static_cast<size_t>(bb)].derivative(a, false))
        rep.phi_solved_closed = false;

  // The contracted gradient built from the input phi directly.
  rep.gradient_matches_input_phi = true;
  AFrac e2 = pair.e2phi();
  for (int a = 0; a < n; ++a) {
    AFrac grad = AFrac::zero(p);
    for (int mu = 0; mu < n; ++mu)
      for (int v = 0; v < n; ++v)
        grad = grad + pair.dphi(mu) * e2 *
                          pair.gprime.g_upper[static_cast<size_t>(mu)][static_cast<size_t>(v)] *
                          m.g_lower[static_cast<size_t>(a)][static_cast<size_t>(v)];
    if (grad != rep.phi_solved[static_cast<size_t>(a)]) rep.gradient_matches_input_phi = false;
  }
  return rep;
}

enum class PencilCase { rescaling, generic, degenerate };

inline std::string to_string(PencilCase c) {
  switch (c) {
    case PencilCase::rescaling: return "rescaling";
    case PencilCase::generic: return "generic";
    case PencilCase::degenerate: return "degenerate";
  }
  return "?";
}

struct LambdaClassification {
  std::vector<double> roots;  // real roots of det(b - lambda g), ascending
  PencilCase case_tag = PencilCase::degenerate;
  double max_imag = 0.0;  // sanity: how far from real the raw roots were
};

/// Roots of det(b - lambda g) at a point for a 4-real-dimensional model
/// (n = 2). g must be Hermitian positive definite at the point and b
/// Hermitian; roots of such a pencil are real. Proportional pencils are
/// tagged as pure rescalings.
inline LambdaClassification classify_pencil(const AMatrix& b, const AMatrix& g,
                                            std::span<const GaussRat> point,
                                            double tol = 1e-9) {
  if (b.size() != 2 || g.size() != 2)
    throw std::invalid_argument("classify_pencil: expected a 2x2 pencil");
  auto evalc = [&](const AFrac& f) {
    GaussRat v = f.eval_exact(point);
    return std::complex<double>(to_double(v.re), to_double(v.im));
  };
  std::complex<double> b00 = evalc(b[0][0]), b01 = evalc(b[0][1]), b10 = evalc(b[1][0]),
                       b11 = evalc(b[1][1]);
  std::complex<double> g00 = evalc(g[0][0]), g01 = evalc(g[0][1]), g10 = evalc(g[1][0]),
                       g11 = evalc(g[1][1]);
  auto hermitian = [&](std::complex<double> m00, std::complex<double> m01,
                       std::complex<double> m10, std::complex<double> m11) {
    return std::abs(m00.imag()) < tol && std::abs(m11.imag()) < tol &&
           std::abs(m01 - std::conj(m10)) < tol;
  };
  if (!hermitian(b00, b01, b10, b11) || !hermitian(g00, g01, g10, g11))
    throw std::invalid_argument("classify_pencil: non-Hermitian inputs rejected");
  double detg = (g00 * g11 - g01 * g10).real();
  if (g00.real() <= 0.0 || detg <= 0.0)
    throw std::invalid_argument("classify_pencil: g must be positive definite at the point");

  // eigenvalues of g^{-1} b via the quadratic det(b - lambda g) = 0
  std::complex<double> m00 = (g11 * b00 - g01 * b10);
  std::complex<double> m11 = (g00 * b11 - g10 * b01);
  std::complex<double> m01 = (g11 * b01 - g01 * b11);
  std::complex<double> m10 = (g00 * b10 - g10 * b00);
  std::complex<double> tr = (m00 + m11) / detg;
  std::complex<double> det = (m00 * m11 - m01 * m10) / (detg * detg);
  std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  std::complex<double> l1 = 0.5 * (tr + disc);
  std::complex<double> l2 = 0.5 * (tr - disc);

  LambdaClassification out;
  out.max_imag = std::max(std::abs(l1.imag()), std::abs(l2.imag()));
  double r1 = l1.real(), r2 = l2.real();
  if (r1 > r2) std::swap(r1, r2);
  out.roots = {r1, r2};
  double scale = std::max({1.0, std::abs(r1), std::abs(r2)});
  out.case_tag = std::abs(r1 - r2) < 1e-7 * scale ? PencilCase::rescaling : PencilCase::generic;
  return out;
}

inline LambdaClassification classify_pencil(const HprojPair& pair,
                                            std::span<const GaussRat> point, double tol = 1e-9) {
  if (pair.g.params->n() != 2)
    throw std::invalid_argument("classify_pencil: the root classification is for n = 2");
  return classify_pencil(pair.transfer_tensor(), pair.g.g_lower, point, tol);
}

}  // namespace kq

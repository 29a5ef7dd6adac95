#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kq/afrac.hpp"
#include "kq/sampling.hpp"
#include "kq/vector_field.hpp"

namespace kq {

using AMatrix = std::vector<std::vector<AFrac>>;

inline AMatrix amatrix(const ModelParamsPtr& p) {
  return AMatrix(static_cast<size_t>(p->n()),
                 std::vector<AFrac>(static_cast<size_t>(p->n()), AFrac::zero(p)));
}

/// Determinant over the A-fraction ring by cofactor expansion (the metric
/// dimensions here are small).
inline AFrac determinant(const AMatrix& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  AFrac det = AFrac::zero(m[0][0].params());
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    AMatrix minor;
    minor.reserve(n - 1);
    for (size_t r = 1; r < n; ++r) {
      std::vector<AFrac> row;
      row.reserve(n - 1);
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    AFrac term = m[0][j] * determinant(minor);
    det = sign > 0 ? det + term : det - term;
    sign = -sign;
  }
  return det;
}

/// Inverse over the ring via the adjugate; requires det to be a unit
/// (c * A^j). Throws when the matrix is not exactly invertible in the ring.
inline AMatrix ring_inverse(const AMatrix& m) {
  const size_t n = m.size();
  const auto& params = m[0][0].params();
  AFrac det = determinant(m);
  auto dinv = det.inverse_if_unit();
  if (!dinv) throw std::domain_error("ring_inverse: determinant is not a unit of the A-fraction ring");
  AMatrix inv = amatrix(params);
  if (n == 1) {
    inv[0][0] = *dinv;
    return inv;
  }
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) {
      AMatrix minor;
      for (size_t rr = 0; rr < n; ++rr) {
        if (rr == r) continue;
        std::vector<AFrac> row;
        for (size_t cc = 0; cc < n; ++cc)
          if (cc != c) row.push_back(m[rr][cc]);
        minor.push_back(std::move(row));
      }
      AFrac cof = determinant(minor);
      if ((r + c) % 2 == 1) cof = -cof;
      inv[c][r] = cof * *dinv;  // adjugate transposes
    }
  }
  return inv;
}

/// Kähler metric data: g_lower[a][b] = g_{a bbar}, g_upper[a][b] = g^{a bbar}
/// with the pairing sum_s g^{a sbar} g_{c sbar} = delta^a_c, and the
/// Christoffel symbols Gamma^a_{bc} (symmetric in bc; mixed-index symbols
/// vanish, and the barred block is the conjugate).
struct HermitianMetric {
  ModelParamsPtr params;
  AMatrix g_lower;
  AMatrix g_upper;
  std::vector<AMatrix> christoffel;  // christoffel[a][b][c] = Gamma^a_{bc}

  const AFrac& gamma(int a, int b, int c) const {
    return christoffel[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)];
  }
};

/// Builds a HermitianMetric from arbitrary exact g_{a bbar} components.
/// The inverse is computed by exact linear algebra over the ring.
inline HermitianMetric metric_from_lower(const ModelParamsPtr& params, AMatrix lower) {
  const int n = params->n();
  HermitianMetric m;
  m.params = params;
  m.g_lower = std::move(lower);
  // U with U L^T = I, i.e. U = (L^{-1})^T.
  AMatrix linv = ring_inverse(m.g_lower);
  m.g_upper = amatrix(params);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m.g_upper[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          linv[static_cast<size_t>(b)][static_cast<size_t>(a)];
  m.christoffel.assign(static_cast<size_t>(n), amatrix(params));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        AFrac acc = AFrac::zero(params);
        for (int s = 0; s < n; ++s)
          acc = acc + m.g_upper[static_cast<size_t>(a)][static_cast<size_t>(s)] *
                          m.g_lower[static_cast<size_t>(c)][static_cast<size_t>(s)].derivative(b, false);
        m.christoffel[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] = acc;
      }
  return m;
}

/// The constant holomorphic curvature metric
///   g_{a bbar} = (A delta_ab - (k/4) zbar^a z^b) / A^2.
inline HermitianMetric build_metric(const ModelParamsPtr& params) {
  const int n = params->n();
  const GaussRat c(params->c());
  AMatrix lower = amatrix(params);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Poly num = Poly::zero(n);
      if (a == b) num += params->A();
      MultiIndex m(n);
      m.anti[static_cast<size_t>(a)] += 1;
      m.holo[static_cast<size_t>(b)] += 1;
      num -= Poly::monomial(m, c);
      lower[static_cast<size_t>(a)][static_cast<size_t>(b)] = AFrac(std::move(num), 2, params);
    }
  return metric_from_lower(params, std::move(lower));
}

/// Connection form alpha = sum_a comp[a] dz^a with comp[a] = -i zbar^a / A
/// (the k = 0 limit -i zbar^a falls out since A = 1 there).
struct ConnectionForm {
  ModelParamsPtr params;
  std::vector<AFrac> components;

  /// alpha evaluated on a field: only the dz^a slots pair.
  AFrac pair(const PolyVectorField& x) const {
    AFrac acc = AFrac::zero(params);
    for (size_t a = 0; a < components.size(); ++a) acc = acc + components[a] * x.holo[a];
    return acc;
  }
};

inline ConnectionForm build_connection_form(const ModelParamsPtr& params) {
  ConnectionForm c;
  c.params = params;
  const GaussRat minus_i(Rat(0), Rat(-1));
  for (int a = 0; a < params->n(); ++a)
    c.components.push_back(AFrac(minus_i * Poly::variable(params->n(), a, true), 1, params));
  return c;
}

/// Symplectic data: omega_lower = i g_lower, omega_upper = -i g_upper, so
/// omega_lower and omega_upper pair to the identity exactly. The
/// Hamiltonian-field convention carries the compensating sign (see
/// hamiltonian_field) fixed so that V of the energy observable is
/// i (z^v d_v - zbar^v dbar_v).
struct SymplecticForm {
  ModelParamsPtr params;
  AMatrix omega_lower;
  AMatrix omega_upper;
};

inline SymplecticForm build_symplectic_form(const HermitianMetric& m) {
  SymplecticForm s;
  s.params = m.params;
  s.omega_lower = amatrix(m.params);
  s.omega_upper = amatrix(m.params);
  const GaussRat I = GaussRat::i();
  const int n = m.params->n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(b);
      s.omega_lower[ua][ub] = I * m.g_lower[ua][ub];
      s.omega_upper[ua][ub] = -I * m.g_upper[ua][ub];
    }
  return s;
}

/// d(alpha) = omega as an exact identity: the (2,0) part of d(alpha) must
/// vanish and -dbar_b comp[a] must equal omega_{a bbar}.
inline bool check_theorem1(const ConnectionForm& c, const SymplecticForm& s) {
  const int n = c.params->n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(b);
      if (a < b && c.components[ua].derivative(b, false) != c.components[ub].derivative(a, false))
        return false;
      if (-c.components[ua].derivative(b, true) != s.omega_lower[ua][ub]) return false;
    }
  return true;
}

/// d(omega) = 0, exact.
inline bool check_closed(const SymplecticForm& s) {
  const int n = s.params->n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g) {
        auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(b), ug = static_cast<size_t>(g);
        if (s.omega_lower[ua][ub].derivative(g, false) !=
            s.omega_lower[ug][ub].derivative(a, false))
          return false;
        if (s.omega_lower[ua][ub].derivative(g, true) !=
            s.omega_lower[ua][ug].derivative(b, true))
          return false;
      }
  return true;
}

struct CurvatureReport {
  int convention_c = 0;   // constant in R = c (k/4)(g g + g g)
  bool verified = false;  // exact identity over the ring
  bool sampled_ok = false;
  std::string detail;
};

namespace detail {

/// R_{a bbar c dbar} = -sum_s g_{s bbar} dbar_d Gamma^s_{ac}.
inline AFrac curvature_lowered(const HermitianMetric& m, int a, int b, int c, int d) {
  AFrac acc = AFrac::zero(m.params);
  for (int s = 0; s < m.params->n(); ++s)
    acc = acc + m.g_lower[static_cast<size_t>(s)][static_cast<size_t>(b)] *
                    m.gamma(s, a, c).derivative(d, true);
  return -acc;
}

inline bool curvature_identity_holds(const HermitianMetric& m, int conv) {
  const int n = m.params->n();
  const GaussRat factor = GaussRat(Rat(conv) * m.params->c());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(b);
          auto uc = static_cast<size_t>(c), ud = static_cast<size_t>(d);
          AFrac rhs = factor * (m.g_lower[ua][ub] * m.g_lower[uc][ud] +
                                m.g_lower[ua][ud] * m.g_lower[uc][ub]);
          if (curvature_lowered(m, a, b, c, d) != rhs) return false;
        }
  return true;
}

}  // namespace detail

/// Convention constant calibrated once on the n=1, k=-4 disk and reused.
inline int curvature_convention() {
  static const int conv = [] {
    auto p = make_params(1, rat(-4), rat(1));
    HermitianMetric disk = build_metric(p);
    for (int c : {1, -1, 2, -2})
      if (detail::curvature_identity_holds(disk, c)) return c;
    throw std::logic_error("curvature convention calibration failed");
  }();
  return conv;
}

/// Exact check of the constant holomorphic curvature identity
///   R_{a bbar c dbar} = conv (k/4) (g_{a bbar} g_{c dbar} + g_{a dbar} g_{c bbar})
/// plus spot checks at random rational interior points.
inline CurvatureReport verify_constant_curvature(const HermitianMetric& m, int samples,
                                                 std::uint64_t seed = 7) {
  CurvatureReport rep;
  rep.convention_c = curvature_convention();
  rep.verified = detail::curvature_identity_holds(m, rep.convention_c);
  if (!rep.verified) {
    rep.detail = "curvature identity fails as a ring identity";
    rep.sampled_ok = false;
    return rep;
  }
  std::mt19937_64 rng(seed);
  rep.sampled_ok = true;
  const int n = m.params->n();
  const GaussRat factor = GaussRat(Rat(rep.convention_c) * m.params->c());
  for (int s = 0; s < samples; ++s) {
    auto pt = random_rational_point(*m.params, rng);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto ua = static_cast<size_t>(a), ub = static_cast<size_t>(b);
        AFrac rhs = factor * (m.g_lower[ua][ua] * m.g_lower[ub][ub] +
                              m.g_lower[ua][ub] * m.g_lower[ub][ua]);
        GaussRat lhs = detail::curvature_lowered(m, a, a, b, b).eval_exact(pt);
        if (lhs != rhs.eval_exact(pt)) {
          rep.sampled_ok = false;
          rep.detail = "sampled curvature mismatch";
          return rep;
        }
      }
  }
  return rep;
}

/// Everything the quantization layer needs about one model, built once.
struct Model {
  ModelParamsPtr params;
  HermitianMetric metric;
  SymplecticForm omega;
  ConnectionForm alpha;

  static Model build(const ModelParamsPtr& p) {
    Model m;
    m.params = p;
    m.metric = build_metric(p);
    m.omega = build_symplectic_form(m.metric);
    m.alpha = build_connection_form(p);
    return m;
  }
};

}  // namespace kq

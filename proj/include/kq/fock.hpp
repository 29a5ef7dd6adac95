#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kq/fock_basis.hpp"
#include "kq/geometry.hpp"
#include "kq/op_matrix.hpp"
#include "kq/quadrature.hpp"
#include "kq/sampling.hpp"

namespace kq {

/// Which weight the inner product uses.
///  - literal: the density the Hermitian structure produces as it stands,
///    det(g) exp(-Phi/hbar); on A-powers this is A^{-4/(k hbar) - (n+1)}.
///  - corrected: the exponent shifted by (n+1)/2, the unique shift that
///    makes the quantized raising/lowering pair mutually adjoint.
/// Both modes coincide at k = 0 (Gaussian weight, det g = 1).
enum class MeasureMode { literal, corrected };

inline std::string to_string(MeasureMode m) {
  return m == MeasureMode::literal ? "literal" : "corrected";
}

/// Weighted measure on the wave-function space: radial weight, domain
/// bounds and integrability bookkeeping.
class FockMeasure {
 public:
  FockMeasure(ModelParamsPtr params, MeasureMode mode)
      : params_(std::move(params)), mode_(mode) {
    if (!params_->flat()) {
      Rat base = Rat(-4) / (params_->k() * params_->hbar());
      exponent_ = mode_ == MeasureMode::literal ? Rat(base - (params_->n() + 1))
                                                : Rat(base - Rat(params_->n() + 1, 2));
    }
  }

  const ModelParamsPtr& params() const { return params_; }
  MeasureMode mode() const { return mode_; }

  /// Exponent p in the weight A^p (k != 0 only).
  const Rat& exponent() const { return exponent_; }

  bool bounded_domain() const { return params_->k() < 0; }

  /// Squared radius of the domain ball for k < 0.
  double domain_radius2() const {
    if (!bounded_domain()) throw std::logic_error("domain_radius2: unbounded domain");
    return to_double(Rat(-4) / params_->k());
  }

  /// Weight as a function of s = sum_j |z_j|^2.
  double weight(double s) const {
    if (params_->flat()) return std::exp(-s / to_double(params_->hbar()));
    double a = 1.0 + to_double(params_->c()) * s;
    return std::pow(a, to_double(exponent_));
  }

  /// Whether the norm integral of z^m converges.
  bool integrable(int degree) const {
    if (params_->k() < 0) return exponent_ > -1;
    if (params_->flat()) return true;
    // k > 0: the weight decays like s^p; need degree + n - 1 + p < -1.
    return Rat(degree + params_->n()) < -exponent_;
  }

  /// Closed-form norm when the Beta/Gamma reduction applies with rational
  /// ingredients (integer exponent). Returns the rational factor r in
  /// ||z^m||^2 = pi^n * r.
  std::optional<Rat> exact_norm_factor(const MultiIndex& m) const {
    const int n = params_->n();
    const int deg = m.total_degree();
    if (params_->flat()) {
      Rat r(1);
      for (int j = 0; j < n; ++j) {
        long e = m.holo[static_cast<size_t>(j)];
        for (long t = 1; t <= e; ++t) r *= t;
      }
      Rat hb = params_->hbar();
      for (int t = 0; t < deg + n; ++t) r *= hb;
      return r;
    }
    if (!is_integer(exponent_)) return std::nullopt;
    if (!integrable(deg)) return std::nullopt;
    long p = exponent_.get_num().get_si();
    Rat r2 = Rat(-4) / params_->k();  // negative for k > 0; handled via |.|
    if (params_->k() > 0) r2 = -r2;
    Rat r(1);
    for (int j = 0; j < n; ++j) {
      long e = m.holo[static_cast<size_t>(j)];
      for (long t = 1; t <= e; ++t) r *= t;
    }
    for (int t = 0; t < deg + n; ++t) r *= r2;
    if (params_->k() < 0) {
      // Gamma(p+1) / Gamma(deg + n + p + 1) for integer p >= 0
      if (p < 0) return std::nullopt;
      for (long t = p + 1; t <= deg + n + p; ++t) r /= t;
      return r;
    }
    // k > 0: Gamma(-p - deg - n) / Gamma(-p) for integer -p > deg + n
    for (long t = -p - deg - n; t <= -p - 1; ++t) r /= t;
    return r;
  }

 private:
  ModelParamsPtr params_;
  MeasureMode mode_;
  Rat exponent_{0};
};

namespace detail {

/// pi^n * integral over the radial region of prod t_j^{m_j} W(sum t) dt,
/// by nested adaptive quadrature (t_j = |z_j|^2).
inline double radial_norm_integral(const FockMeasure& measure, const MultiIndex& m,
                                   const QuadratureOptions& opt) {
  const int n = measure.params()->n();
  if (!measure.integrable(m.total_degree()))
    throw std::domain_error(
        "monomial norm diverges: degree " + std::to_string(m.total_degree()) +
        " is not integrable against this weight (k=" + to_string(measure.params()->k()) +
        ", hbar=" + to_string(measure.params()->hbar()) + ", mode " + to_string(measure.mode()) +
        ")");
  const bool bounded = measure.bounded_domain();
  const double r2 = bounded ? measure.domain_radius2() : 0.0;

  std::function<double(int, double, std::vector<double>&)> level =
      [&](int j, double used, std::vector<double>& t) -> double {
    auto inner = [&](double tj) {
      t[static_cast<size_t>(j)] = tj;
      if (j + 1 == n) {
        double s = used + tj;
        double val = measure.weight(s);
        for (int q = 0; q < n; ++q)
          for (std::uint32_t e = 0; e < m.holo[static_cast<size_t>(q)]; ++e)
            val *= t[static_cast<size_t>(q)];
        return val;
      }
      return level(j + 1, used + tj, t);
    };
    QuadratureOptions lv = opt;
    lv.abs_tol = opt.abs_tol * 0.25;
    if (bounded) return integrate(inner, 0.0, r2 - used, lv);
    return integrate_to_infinity(inner, 0.0, lv);
  };
  std::vector<double> t(static_cast<size_t>(n), 0.0);
  double val = level(0, 0.0, t);
  return std::pow(std::numbers::pi, n) * val;
}

/// Trapezoid phase integral (1/2pi) int e^{i k theta} dtheta with enough
/// points to be exact for the trigonometric degree at hand.
inline std::complex<double> phase_integral(int k, int points = 64) {
  std::complex<double> acc = 0.0;
  for (int j = 0; j < points; ++j) {
    double th = 2.0 * std::numbers::pi * j / points;
    acc += std::exp(std::complex<double>(0.0, k * th));
  }
  return acc / static_cast<double>(points);
}

}  // namespace detail

struct GramReport {
  std::vector<double> norms;                       // ||z^m||^2 per basis member
  std::vector<std::string> exact;                  // "pi^n * p/q" when the oracle applies, else ""
  double off_diagonal_max = 0.0;
  MeasureMode mode = MeasureMode::literal;
};

/// Monomial norms by radial quadrature. Monomials are orthogonal by torus
/// symmetry, so each norm reduces to an n-dimensional radial integral; a
/// sample of off-diagonal pairs is still integrated (phases by exact-degree
/// trapezoid, radial part by quadrature) and reported.
inline GramReport monomial_norms(const FockBasis& basis, const FockMeasure& measure,
                                 const QuadratureOptions& opt = {}) {
  GramReport rep;
  rep.mode = measure.mode();
  const int n = basis.n();
  for (size_t j = 0; j < basis.size(); ++j) {
    const MultiIndex& m = basis.monomial(j);
    rep.norms.push_back(detail::radial_norm_integral(measure, m, opt));
    auto exact = measure.exact_norm_factor(m);
    rep.exact.push_back(exact ? "pi^" + std::to_string(n) + " * " + to_string(*exact) : "");
  }
  // Off-diagonal probe: distinct pairs differ in some exponent, so the
  // phase factor vanishes to roundoff; the radial scale is bounded by
  // Cauchy-Schwarz on the already-computed norms.
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < std::min(basis.size(), a + 4); ++b) {
      const MultiIndex& ma = basis.monomial(a);
      const MultiIndex& mb = basis.monomial(b);
      double phase = 1.0;
      for (int q = 0; q < n; ++q) {
        auto uq = static_cast<size_t>(q);
        int dk = static_cast<int>(ma.holo[uq]) - static_cast<int>(mb.holo[uq]);
        phase *= std::abs(detail::phase_integral(dk));
      }
      double entry = phase * std::sqrt(rep.norms[a] * rep.norms[b]);
      rep.off_diagonal_max = std::max(rep.off_diagonal_max, entry);
    }
  return rep;
}

struct AdjointReport {
  double max_deviation = 0.0;      // max |(Q Nbar)^dagger - Q N| entry, safe zone
  std::vector<double> raising_gap;  // per-step gap along the raising line (n = 1)
  MeasureMode mode = MeasureMode::literal;
};

/// Compares the weighted-basis adjoint of the degree-lowering operator
/// against the degree-raising one. The Gram matrix is diagonal, so the
/// adjoint is G^{-1} M^H G with G the norms.
inline AdjointReport adjointness_check(const FockBasis& basis, const FockMeasure& measure,
                                       const OperatorMatrix& lowering,
                                       const OperatorMatrix& raising,
                                       const QuadratureOptions& opt = {}) {
  GramReport gram = monomial_norms(basis, measure, opt);
  AdjointReport rep;
  rep.mode = measure.mode();
  const size_t dim = basis.size();
  const int safe = basis.cutoff() - 1;
  for (size_t r = 0; r < dim; ++r) {
    if (basis.degree(r) > safe) continue;
    for (size_t c = 0; c < dim; ++c) {
      if (basis.degree(c) > safe) continue;
      std::complex<double> adj =
          std::conj(lowering.at_d(c, r)) * gram.norms[c] / gram.norms[r];
      std::complex<double> dev = adj - raising.at_d(r, c);
      rep.max_deviation = std::max(rep.max_deviation, std::abs(dev));
      if (basis.n() == 1 && r == c + 1)
        rep.raising_gap.push_back(std::abs(dev));
    }
  }
  return rep;
}

/// Weight exp(-Phi/hbar) as a point function, with an exponent corruption
/// hook for negative controls.
inline double hermitian_weight(const ModelParams& params,
                               std::span<const std::complex<double>> pt, int corrupt_shift = 0) {
  double s = 0.0;
  for (const auto& z : pt) s += std::norm(z);
  double base;
  if (params.flat()) {
    base = std::exp(-s / to_double(params.hbar()));
  } else {
    double a = 1.0 + to_double(params.c()) * s;
    base = std::pow(a, to_double(Rat(Rat(-4) / (params.k() * params.hbar()))));
  }
  if (corrupt_shift != 0) {
    double a = params.flat() ? std::exp(-s) : 1.0 + to_double(params.c()) * s;
    base *= std::pow(a, corrupt_shift);
  }
  return base;
}

/// Finite-difference check that the connection leaves the Hermitian
/// structure invariant: along real fields X,
///   X<lam, mu> = <D_X lam, mu> + <lam, D_X mu>
/// with <phi1 mu0, phi2 mu0> = phi1 conj(phi2) exp(-Phi/hbar). Returns the
/// max residual over sample points and fields.
inline double hermitian_invariance_check(const Model& model, int samples, std::uint64_t seed,
                                         int corrupt_shift = 0, double step = 1e-5) {
  const auto& p = model.params;
  const int n = p->n();
  std::mt19937_64 rng(seed);
  // two fixed polynomial sections
  Poly phi1 = Poly::one(n) + Poly::variable(n, 0, false);
  Poly phi2 = Poly::variable(n, 0, false) * Poly::variable(n, 0, false);
  if (n > 1) phi2 += Poly::variable(n, 1, false);
  const double hbar = to_double(p->hbar());

  double worst = 0.0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    auto pt = random_interior_point(*p, rng, 0.5);
    std::vector<std::complex<double>> dir(static_cast<size_t>(n));
    for (auto& d : dir) d = {u(rng), u(rng)};

    auto pair_at = [&](double t) {
      std::vector<std::complex<double>> q(pt);
      for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] += t * dir[static_cast<size_t>(j)];
      return phi1.eval(q) * std::conj(phi2.eval(q)) * hermitian_weight(*p, q, corrupt_shift);
    };
    std::complex<double> lhs = (pair_at(step) - pair_at(-step)) / (2.0 * step);

    auto x_of = [&](const Poly& f) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += dir[static_cast<size_t>(j)] * f.derivative(j, false).eval(pt);
        acc += std::conj(dir[static_cast<size_t>(j)]) * f.derivative(j, true).eval(pt);
      }
      return acc;
    };
    std::complex<double> alpha_x = 0.0;
    for (int j = 0; j < n; ++j)
      alpha_x += model.alpha.components[static_cast<size_t>(j)].eval(pt) * dir[static_cast<size_t>(j)];
    const std::complex<double> ih(0.0, 1.0 / hbar);
    std::complex<double> d1 = x_of(phi1) - ih * alpha_x * phi1.eval(pt);
    std::complex<double> d2 = x_of(phi2) - ih * alpha_x * phi2.eval(pt);
    double w = hermitian_weight(*p, pt, corrupt_shift);
    std::complex<double> rhs = (d1 * std::conj(phi2.eval(pt)) + phi1.eval(pt) * std::conj(d2)) * w;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

}  // namespace kq

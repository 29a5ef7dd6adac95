#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace kq {

struct QuadratureError : std::runtime_error {
  double last_estimate;
  double previous_estimate;
  QuadratureError(const std::string& what, double prev, double last)
      : std::runtime_error(what + " (refinements " + std::to_string(prev) + " -> " +
                           std::to_string(last) + ")"),
        last_estimate(last),
        previous_estimate(prev) {}
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kK15Nodes = {
    0.0000000000000000, 0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
    0.7415311855993945, 0.8648644233597691, 0.9491079123427585, 0.9914553711208126};
constexpr std::array<double, 8> kK15Weights = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
constexpr std::array<double, 4> kG7Weights = {0.4179591836734694, 0.3818300505051189,
                                              0.2797053914892767, 0.1294849661688697};

struct GkEstimate {
  double integral;
  double error;
};

inline GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double k15 = kK15Weights[0] * f(m);
  double g7 = kG7Weights[0] * f(m);
  for (int j = 1; j < 8; ++j) {
    double fv = f(m - h * kK15Nodes[static_cast<size_t>(j)]) +
                f(m + h * kK15Nodes[static_cast<size_t>(j)]);
    k15 += kK15Weights[static_cast<size_t>(j)] * fv;
    if (j % 2 == 0) g7 += kG7Weights[static_cast<size_t>(j / 2)] * fv;
  }
  return {k15 * h, std::abs(k15 - g7) * std::abs(h)};
}

inline double adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                       double rel_tol, int depth, double whole) {
  GkEstimate e = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::max(std::abs(whole), std::abs(e.integral)));
  if (e.error <= tol || (b - a) < 1e-14 * std::abs(b - a + 1.0)) return e.integral;
  if (depth <= 0) {
    GkEstimate left = gk15(f, a, 0.5 * (a + b));
    GkEstimate right = gk15(f, 0.5 * (a + b), b);
    throw QuadratureError("quadrature failed to converge", e.integral,
                          left.integral + right.integral);
  }
  double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, abs_tol * 0.5, rel_tol, depth - 1, whole) +
         adaptive(f, mid, b, abs_tol * 0.5, rel_tol, depth - 1, whole);
}

}  // namespace detail

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 48;
};

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  detail::GkEstimate coarse = detail::gk15(f, a, b);
  return detail::adaptive(f, a, b, opt.abs_tol, opt.rel_tol, opt.max_depth, coarse.integral);
}

/// Integration of f over [a, infinity) via t = a + u/(1-u).
inline double integrate_to_infinity(const std::function<double(double)>& f, double a,
                                    const QuadratureOptions& opt = {}) {
  auto g = [&](double u) {
    double om = 1.0 - u;
    double t = a + u / om;
    return f(t) / (om * om);
  };
  return integrate(g, 0.0, 1.0 - 1e-12, opt);
}

}  // namespace kq

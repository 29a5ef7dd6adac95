#pragma once

#include <complex>
#include <random>
#include <vector>

#include "kq/model.hpp"
#include "kq/rational.hpp"

namespace kq {

/// Random Gaussian-rational point strictly inside the domain U (for k < 0
/// the open ball of radius 2/sqrt(-k); otherwise a unit box). Denominators
/// stay small so exact evaluation stays cheap.
inline std::vector<GaussRat> random_rational_point(const ModelParams& params,
                                                   std::mt19937_64& rng) {
  const int n = params.n();
  std::uniform_int_distribution<long> num(-7, 7);
  const long den = 16;
  // Scale per coordinate so the squared radius sum stays below the bound.
  // For k < 0 the domain radius^2 is -4/k; (7/16)^2 * 2n < -4/k holds for
  // moderate n and |k| <= 4, but clamp defensively by rescaling.
  Rat bound = params.k() < 0 ? Rat(-4) / params.k() : Rat(0);
  while (true) {
    std::vector<GaussRat> pt;
    pt.reserve(static_cast<size_t>(n));
    Rat norm2(0);
    for (int j = 0; j < n; ++j) {
      GaussRat z(rat(num(rng), den), rat(num(rng), den));
      norm2 += z.norm2();
      pt.push_back(std::move(z));
    }
    if (params.k() >= 0 || norm2 < bound) return pt;
  }
}

inline std::vector<std::complex<double>> to_complex(const std::vector<GaussRat>& pt) {
  std::vector<std::complex<double>> r;
  r.reserve(pt.size());
  for (const auto& z : pt) r.emplace_back(to_double(z.re), to_double(z.im));
  return r;
}

/// Random double point strictly inside the domain (radius fraction of the
/// k<0 ball, unit box otherwise).
inline std::vector<std::complex<double>> random_interior_point(const ModelParams& params,
                                                               std::mt19937_64& rng,
                                                               double radius_fraction = 0.6) {
  const int n = params.n();
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double rmax = 1.0;
  if (params.k() < 0) rmax = 2.0 / std::sqrt(-to_double(params.k()));
  while (true) {
    std::vector<std::complex<double>> pt;
    double norm2 = 0.0;
    for (int j = 0; j < n; ++j) {
      std::complex<double> z(u(rng), u(rng));
      z *= rmax * radius_fraction / std::sqrt(static_cast<double>(n));
      norm2 += std::norm(z);
      pt.push_back(z);
    }
    if (params.k() >= 0 || norm2 < rmax * rmax * radius_fraction * radius_fraction) return pt;
  }
}

}  // namespace kq

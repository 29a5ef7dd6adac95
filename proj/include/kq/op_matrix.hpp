#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <vector>

#include "kq/diff_op.hpp"
#include "kq/fock_basis.hpp"

namespace kq {

/// Exact matrix of a HoloDiffOp on the truncated monomial basis. Columns
/// whose image sticks out beyond the cutoff are flagged as the truncation
/// zone; their in-range entries are still stored.
struct OperatorMatrix {
  FockBasis basis;
  std::vector<std::vector<GaussRat>> entries;  // entries[row][col]
  std::vector<bool> truncated_column;

  const GaussRat& at(size_t r, size_t c) const { return entries[r][c]; }
  size_t size() const { return basis.size(); }

  std::complex<double> at_d(size_t r, size_t c) const {
    return {to_double(entries[r][c].re), to_double(entries[r][c].im)};
  }
};

inline OperatorMatrix to_matrix(const HoloDiffOp& op, const FockBasis& basis) {
  if (op.n() != basis.n()) throw std::invalid_argument("to_matrix: dimension mismatch");
  const size_t dim = basis.size();
  OperatorMatrix m{basis,
                   std::vector<std::vector<GaussRat>>(dim, std::vector<GaussRat>(dim, GaussRat(0))),
                   std::vector<bool>(dim, false)};
  for (size_t col = 0; col < dim; ++col) {
    Poly image = op.apply(Poly::monomial(basis.monomial(col), GaussRat(1)));
    for (const auto& [mi, c] : image.terms()) {
      if (mi.total_degree() > basis.cutoff()) {
        m.truncated_column[col] = true;
        continue;
      }
      m.entries[basis.index_of(mi)][col] = c;
    }
  }
  return m;
}

struct SpectrumItem {
  bool exact = false;
  GaussRat value_exact;        // meaningful when exact
  std::complex<double> value;  // always filled
  int multiplicity = 1;
  double residual = 0.0;  // numeric path only
};

struct SpectrumResult {
  std::vector<SpectrumItem> items;
  bool exact = false;  // all items exact
  std::string method;  // "diagonal-blocks" or "numeric"
};

namespace detail {

inline bool degree_preserving(const OperatorMatrix& m) {
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m.size(); ++c)
      if (!m.entries[r][c].is_zero() && m.basis.degree(r) != m.basis.degree(c)) return false;
  for (size_t c = 0; c < m.size(); ++c)
    if (m.truncated_column[c]) return false;
  return true;
}

struct RatOrder {
  bool operator()(const GaussRat& a, const GaussRat& b) const {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

}  // namespace detail

/// Spectrum of the truncated operator. Degree-preserving operators are
/// handled exactly from their diagonal blocks (scalar blocks, or
/// triangular blocks read off the diagonal); anything else falls back to
/// a numeric eigensolver on the truncation-safe principal submatrix, with
/// per-eigenpair residuals reported.
inline SpectrumResult spectrum(const HoloDiffOp& op, const FockBasis& basis) {
  OperatorMatrix m = to_matrix(op, basis);
  SpectrumResult out;
  if (detail::degree_preserving(m)) {
    std::map<GaussRat, int, detail::RatOrder> eigs;
    bool all_scalar_or_triangular = true;
    for (int l = 0; l <= basis.cutoff(); ++l) {
      auto layer = basis.layer(l);
      if (layer.empty()) continue;
      bool lower_tri = true, upper_tri = true;
      for (size_t i = 0; i < layer.size(); ++i)
        for (size_t j = 0; j < layer.size(); ++j) {
          if (i == j || m.entries[layer[i]][layer[j]].is_zero()) continue;
          if (i < j) lower_tri = false;
          if (i > j) upper_tri = false;
        }
      if (!lower_tri && !upper_tri) {
        all_scalar_or_triangular = false;
        break;
      }
      for (size_t i = 0; i < layer.size(); ++i) eigs[m.entries[layer[i]][layer[i]]] += 1;
    }
    if (all_scalar_or_triangular) {
      out.exact = true;
      out.method = "diagonal-blocks";
      for (const auto& [v, mult] : eigs) {
        SpectrumItem item;
        item.exact = true;
        item.value_exact = v;
        item.value = {to_double(v.re), to_double(v.im)};
        item.multiplicity = mult;
        out.items.push_back(std::move(item));
      }
      return out;
    }
  }

  // Numeric fallback on the truncation-safe submatrix.
  out.exact = false;
  out.method = "numeric";
  int shift = std::max(0, op.max_degree_shift());
  int safe_degree = basis.cutoff() - shift;
  std::vector<size_t> keep;
  for (size_t j = 0; j < basis.size(); ++j)
    if (basis.degree(j) <= safe_degree) keep.push_back(j);
  const auto dim = static_cast<Eigen::Index>(keep.size());
  if (dim == 0) throw std::invalid_argument("spectrum: cutoff too small for this operator");
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      a(r, c) = m.at_d(keep[static_cast<size_t>(r)], keep[static_cast<size_t>(c)]);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
  for (Eigen::Index j = 0; j < dim; ++j) {
    SpectrumItem item;
    item.exact = false;
    item.value = solver.eigenvalues()(j);
    Eigen::VectorXcd v = solver.eigenvectors().col(j);
    item.residual = (a * v - item.value * v).norm();
    out.items.push_back(std::move(item));
  }
  std::sort(out.items.begin(), out.items.end(), [](const SpectrumItem& x, const SpectrumItem& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

}  // namespace kq

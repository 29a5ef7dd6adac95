#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "kq/model.hpp"
#include "kq/multiindex.hpp"

namespace kq {

/// Truncated graded monomial basis { z^m : |m| <= L } of holomorphic
/// polynomials, in graded lexicographic order. Size is C(L + n, n).
class FockBasis {
 public:
  FockBasis(ModelParamsPtr params, int cutoff) : params_(std::move(params)), cutoff_(cutoff) {
    if (cutoff_ < 0) throw std::invalid_argument("FockBasis: negative cutoff");
    const int n = params_->n();
    std::vector<std::uint32_t> exps(static_cast<size_t>(n), 0);
    enumerate(exps, 0, cutoff_);
    std::sort(members_.begin(), members_.end());
    for (size_t j = 0; j < members_.size(); ++j) index_[members_[j]] = j;
  }

  const ModelParamsPtr& params() const { return params_; }
  int n() const { return params_->n(); }
  int cutoff() const { return cutoff_; }
  size_t size() const { return members_.size(); }

  const MultiIndex& monomial(size_t j) const { return members_.at(j); }
  int degree(size_t j) const { return members_.at(j).total_degree(); }

  size_t index_of(const MultiIndex& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("FockBasis: monomial outside cutoff");
    return it->second;
  }
  bool contains(const MultiIndex& m) const { return index_.count(m) > 0; }

  /// Indices of the degree-l layer (contiguous in graded order).
  std::vector<size_t> layer(int l) const {
    std::vector<size_t> out;
    for (size_t j = 0; j < members_.size(); ++j)
      if (degree(j) == l) out.push_back(j);
    return out;
  }

 private:
  void enumerate(std::vector<std::uint32_t>& exps, int pos, int remaining) {
    if (pos == params_->n()) {
      members_.emplace_back(exps, std::vector<std::uint32_t>(exps.size(), 0));
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      exps[static_cast<size_t>(pos)] = static_cast<std::uint32_t>(e);
      enumerate(exps, pos + 1, remaining - e);
    }
    exps[static_cast<size_t>(pos)] = 0;
  }

  ModelParamsPtr params_;
  int cutoff_;
  std::vector<MultiIndex> members_;
  std::map<MultiIndex, size_t> index_;
};

}  // namespace kq

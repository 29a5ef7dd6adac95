#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace kq {

/// Exponent bookkeeping for a monomial z^a zbar^b in n complex variables.
/// `holo[j]` is the exponent of z^{j+1}, `anti[j]` that of zbar^{j+1}.
struct MultiIndex {
  std::vector<std::uint32_t> holo;
  std::vector<std::uint32_t> anti;

  MultiIndex() = default;
  explicit MultiIndex(int n) : holo(static_cast<size_t>(n), 0), anti(static_cast<size_t>(n), 0) {
    if (n < 1) throw std::invalid_argument("MultiIndex: n must be >= 1");
  }
  MultiIndex(std::vector<std::uint32_t> h, std::vector<std::uint32_t> a)
      : holo(std::move(h)), anti(std::move(a)) {
    if (holo.size() != anti.size() || holo.empty())
      throw std::invalid_argument("MultiIndex: holo/anti length mismatch");
  }

  int n() const { return static_cast<int>(holo.size()); }

  int holo_degree() const {
    return std::accumulate(holo.begin(), holo.end(), 0);
  }
  int anti_degree() const {
    return std::accumulate(anti.begin(), anti.end(), 0);
  }
  int total_degree() const { return holo_degree() + anti_degree(); }

  bool is_holomorphic() const { return anti_degree() == 0; }
  bool is_constant() const { return total_degree() == 0; }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r(*this);
    for (size_t j = 0; j < holo.size(); ++j) {
      r.holo[j] += o.holo[j];
      r.anti[j] += o.anti[j];
    }
    return r;
  }

  /// Swaps z and zbar exponents (the index part of complex conjugation).
  MultiIndex conj() const { return MultiIndex(anti, holo); }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.holo == b.holo && a.anti == b.anti;
  }

  /// Graded lexicographic order: total degree first, then lex on the
  /// concatenated (holo, anti) exponent sequence. Total and deterministic.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    if (a.holo != b.holo) return a.holo < b.holo;
    return a.anti < b.anti;
  }
};

}  // namespace kq

#pragma once

#include <sstream>
#include <string>

#include "kq/afrac.hpp"
#include "kq/diff_op.hpp"
#include "kq/section_op.hpp"

namespace kq {

/// Textual forms used by reports and golden files:
///   rationals   p/q
///   complex     p/q+r/si
///   monomials   c * z1^a * zb1^b      (exponent omitted when 1)
///   fractions   (<poly>)/A^m          (bare polynomial when m = 0)
///   operators   (<poly>) * dz1^a ...  and  (<afrac>) * dzb1 ...
/// Terms are emitted in descending graded-lex order, so output is stable.

inline std::string coefficient_string(const GaussRat& c) {
  std::string s = to_string(c);
  bool needs_parens = false;
  for (size_t j = 1; j < s.size(); ++j)
    if (s[j] == '+' || s[j] == '-') needs_parens = true;
  return needs_parens ? "(" + s + ")" : s;
}

inline std::string to_string(const MultiIndex& m) {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < m.n(); ++j) {
    auto uj = static_cast<size_t>(j);
    if (m.holo[uj] > 0) {
      if (!first) os << " * ";
      os << "z" << (j + 1);
      if (m.holo[uj] > 1) os << "^" << m.holo[uj];
      first = false;
    }
  }
  for (int j = 0; j < m.n(); ++j) {
    auto uj = static_cast<size_t>(j);
    if (m.anti[uj] > 0) {
      if (!first) os << " * ";
      os << "zb" << (j + 1);
      if (m.anti[uj] > 1) os << "^" << m.anti[uj];
      first = false;
    }
  }
  return os.str();
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!first) os << " + ";
    os << coefficient_string(it->second);
    std::string vars = to_string(it->first);
    if (!vars.empty()) os << " * " << vars;
    first = false;
  }
  return os.str();
}

inline std::string to_string(const AFrac& f) {
  if (f.is_zero()) return "0";
  if (f.apow() == 0) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/A^" + std::to_string(f.apow());
}

inline std::string to_string(const HoloDiffOp& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    if (!first) os << " + ";
    os << "(" << to_string(it->second) << ")";
    for (size_t j = 0; j < it->first.d.size(); ++j) {
      if (it->first.d[j] == 0) continue;
      os << " * dz" << (j + 1);
      if (it->first.d[j] > 1) os << "^" << it->first.d[j];
    }
    first = false;
  }
  return os.str();
}

inline std::string to_string(const SectionOp& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < op.n(); ++j) {
    const AFrac& c = op.holo[static_cast<size_t>(j)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << to_string(c) << ") * dz" << (j + 1);
    first = false;
  }
  for (int j = 0; j < op.n(); ++j) {
    const AFrac& c = op.anti[static_cast<size_t>(j)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << to_string(c) << ") * dzb" << (j + 1);
    first = false;
  }
  if (!op.scalar.is_zero()) {
    if (!first) os << " + ";
    os << "(" << to_string(op.scalar) << ")";
  }
  return os.str();
}

}  // namespace kq

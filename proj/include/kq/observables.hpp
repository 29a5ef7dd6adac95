#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kq/geometry.hpp"
#include "kq/vector_field.hpp"

namespace kq {

/// Classical observable: an A-fraction with an optional family tag.
/// H, N^a, Nbar^a and the mixed quadratic family all have apow = 1.
/// Reality is testable exactly but not enforced (N^a is complex; the real
/// span is {H, N^a + Nbar^a, i(N^a - Nbar^a), ...}).
struct Observable {
  AFrac value;
  std::string label;

  Observable(AFrac v, std::string lbl = "") : value(std::move(v)), label(std::move(lbl)) {}

  bool is_real() const { return value.is_real(); }
};

/// The deformed-oscillator observable family on one model:
///   H        = sum_v z^v zbar^v / A
///   N^b      = z^b / A
///   Nbar^b   = zbar^b / A
///   Hmix^{a bbar} = z^a zbar^b / A    (H = sum_a Hmix^{a abar})
struct ObservableFamily {
  Observable H;
  std::vector<Observable> N;
  std::vector<Observable> Nbar;
  std::vector<std::vector<Observable>> Hmix;
};

inline ObservableFamily build_family(const ModelParamsPtr& p) {
  const int n = p->n();
  Poly s = Poly::zero(n);
  for (int j = 0; j < n; ++j) {
    MultiIndex m(n);
    m.holo[static_cast<size_t>(j)] = 1;
    m.anti[static_cast<size_t>(j)] = 1;
    s += Poly::monomial(m, GaussRat(1));
  }
  ObservableFamily fam{Observable(AFrac(std::move(s), 1, p), "H"), {}, {}, {}};
  for (int b = 0; b < n; ++b) {
    fam.N.emplace_back(AFrac(Poly::variable(n, b, false), 1, p), "N^" + std::to_string(b + 1));
    fam.Nbar.emplace_back(AFrac(Poly::variable(n, b, true), 1, p),
                          "Nbar^" + std::to_string(b + 1));
  }
  for (int a = 0; a < n; ++a) {
    std::vector<Observable> row;
    for (int b = 0; b < n; ++b) {
      MultiIndex m(n);
      m.holo[static_cast<size_t>(a)] = 1;
      m.anti[static_cast<size_t>(b)] = 1;
      row.emplace_back(AFrac(Poly::monomial(m, GaussRat(1)), 1, p),
                       "Hmix^" + std::to_string(a + 1) + std::to_string(b + 1));
    }
    fam.Hmix.push_back(std::move(row));
  }
  return fam;
}

/// Hamiltonian vector field of f. The bivector carries the sign opposite
/// to omega_upper; this is the one calibration in the artifact, fixed so
/// that V(H) = i (z^v d_v - zbar^v dbar_v) exactly.
inline PolyVectorField hamiltonian_field(const AFrac& f, const SymplecticForm& s) {
  const int n = f.params()->n();
  PolyVectorField v = PolyVectorField::zero(f.params());
  std::vector<AFrac> df, dfbar;
  for (int j = 0; j < n; ++j) {
    df.push_back(f.derivative(j, false));
    dfbar.push_back(f.derivative(j, true));
  }
  for (int m = 0; m < n; ++m) {
    auto um = static_cast<size_t>(m);
    AFrac h = AFrac::zero(f.params());
    AFrac a = AFrac::zero(f.params());
    for (int j = 0; j < n; ++j) {
      auto uj = static_cast<size_t>(j);
      h = h - s.omega_upper[um][uj] * dfbar[uj];
      a = a + s.omega_upper[uj][um] * df[uj];
    }
    v.holo[um] = std::move(h);
    v.anti[um] = std::move(a);
  }
  return v;
}

inline PolyVectorField hamiltonian_field(const Observable& f, const SymplecticForm& s) {
  return hamiltonian_field(f.value, s);
}

/// V(z^a) = -i g^{a vbar} dbar_v, the spanning fields of the polarization.
inline PolyVectorField polarization_field(int a, const SymplecticForm& s) {
  PolyVectorField v = PolyVectorField::zero(s.params);
  for (int m = 0; m < s.params->n(); ++m)
    v.anti[static_cast<size_t>(m)] =
        s.omega_upper[static_cast<size_t>(a)][static_cast<size_t>(m)];
  return v;
}

/// Poisson bracket {f, g} = omega^{a bbar} (d_a f dbar_b g - dbar_b f d_a g)
/// with the same calibrated bivector as hamiltonian_field; equals V(f)g.
inline AFrac poisson(const AFrac& f, const AFrac& g, const SymplecticForm& s) {
  return hamiltonian_field(f, s).apply(g);
}

inline Observable poisson(const Observable& f, const Observable& g, const SymplecticForm& s) {
  return Observable(poisson(f.value, g.value, s),
                    "{" + f.label + "," + g.label + "}");
}

/// General polarization-preserving observable (u_a(z) zbar^a + v(z)) / A.
/// u entries and v must be holomorphic; anything else is rejected.
inline Observable general_solution(const std::vector<Poly>& u, const Poly& v,
                                   const ModelParamsPtr& p) {
  const int n = p->n();
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("general_solution: expected n holomorphic components");
  if (!v.is_holomorphic()) throw std::invalid_argument("general_solution: v must be holomorphic");
  Poly w = v;
  for (int a = 0; a < n; ++a) {
    if (!u[static_cast<size_t>(a)].is_holomorphic())
      throw std::invalid_argument("general_solution: u components must be holomorphic");
    w += u[static_cast<size_t>(a)] * Poly::variable(n, a, true);
  }
  return Observable(AFrac(std::move(w), 1, p), "W/A");
}

/// Preservation data for one observable: the second-order residual
///   r_{uv} = dbar_u dbar_v f + A^{-1} (dbar_u A dbar_v f + dbar_v A dbar_u f),
/// and, when it vanishes, the multiplier matrix a[f]^a_b from
/// [V(f), V(z^a)] = a[f]^a_b V(z^b) together with its trace.
struct PreservationCertificate {
  AMatrix residual;
  bool preserved = false;
  AMatrix a_matrix;
  AFrac a_trace;

  PreservationCertificate(const ModelParamsPtr& p)
      : residual(amatrix(p)), a_matrix(amatrix(p)), a_trace(AFrac::zero(p)) {}
};

inline PreservationCertificate check_preservation(const Observable& f, const HermitianMetric& m,
                                                  const SymplecticForm& s) {
  const auto& p = m.params;
  const int n = p->n();
  PreservationCertificate cert(p);
  AFrac ainv(Poly::one(n), 1, p);
  std::vector<AFrac> dbar_f, dbar_a;
  for (int j = 0; j < n; ++j) {
    dbar_f.push_back(f.value.derivative(j, true));
    dbar_a.push_back(AFrac::from_poly(p->A().derivative(j, true), p));
  }
  cert.preserved = true;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto uu = static_cast<size_t>(u), uv = static_cast<size_t>(v);
      AFrac r = dbar_f[uv].derivative(u, true) +
                ainv * (dbar_a[uu] * dbar_f[uv] + dbar_a[uv] * dbar_f[uu]);
      if (!r.is_zero()) cert.preserved = false;
      cert.residual[uu][uv] = std::move(r);
    }
  if (!cert.preserved) return cert;

  PolyVectorField vf = hamiltonian_field(f, s);
  for (int a = 0; a < n; ++a) {
    PolyVectorField bracket = lie_bracket(vf, polarization_field(a, s));
    for (const auto& h : bracket.holo)
      if (!h.is_zero()) throw std::logic_error("preservation bracket left the polarization");
    for (int b = 0; b < n; ++b) {
      AFrac acc = AFrac::zero(p);
      for (int u = 0; u < n; ++u)
        acc = acc + bracket.anti[static_cast<size_t>(u)] *
                        m.g_lower[static_cast<size_t>(b)][static_cast<size_t>(u)];
      cert.a_matrix[static_cast<size_t>(a)][static_cast<size_t>(b)] = GaussRat::i() * acc;
    }
    // a[f]^a_b must reconstruct the bracket exactly.
    PolyVectorField rebuilt = PolyVectorField::zero(p);
    for (int b = 0; b < n; ++b)
      rebuilt = rebuilt + cert.a_matrix[static_cast<size_t>(a)][static_cast<size_t>(b)] *
                              polarization_field(b, s);
    if (rebuilt != bracket) throw std::logic_error("multiplier extraction failed to reconstruct");
  }
  for (int a = 0; a < n; ++a)
    cert.a_trace = cert.a_trace + cert.a_matrix[static_cast<size_t>(a)][static_cast<size_t>(a)];
  return cert;
}

/// Requests the multiplier data, failing loudly for non-preserving f.
inline PreservationCertificate require_preserved(const Observable& f, const HermitianMetric& m,
                                                 const SymplecticForm& s) {
  PreservationCertificate cert = check_preservation(f, m, s);
  if (!cert.preserved)
    throw std::invalid_argument("observable is not polarization-preserving: " + f.label);
  return cert;
}

/// The closed-form oscillator fields; V of the family must reproduce these
/// exactly, and their commutator table is the deformation being verified.
struct OscillatorFields {
  PolyVectorField T;                           // V(H) = i (z d - zbar dbar)
  std::vector<PolyVectorField> Ta;             // V(N^a)
  std::vector<PolyVectorField> Tbar;           // V(Nbar^a)
  std::vector<std::vector<PolyVectorField>> Tmix;  // V(Hmix^{a bbar})
};

inline OscillatorFields oscillator_fields(const ModelParamsPtr& p) {
  const int n = p->n();
  const GaussRat I = GaussRat::i();
  const GaussRat c(p->c());
  OscillatorFields f;
  f.T = PolyVectorField::zero(p);
  for (int m = 0; m < n; ++m) {
    auto um = static_cast<size_t>(m);
    f.T.holo[um] = I * AFrac::variable(p, m, false);
    f.T.anti[um] = -I * AFrac::variable(p, m, true);
  }
  for (int a = 0; a < n; ++a) {
    PolyVectorField ta = PolyVectorField::zero(p);
    PolyVectorField tb = PolyVectorField::zero(p);
    for (int m = 0; m < n; ++m) {
      auto um = static_cast<size_t>(m);
      ta.holo[um] = -I * c * (AFrac::variable(p, a, false) * AFrac::variable(p, m, false));
      tb.anti[um] = I * c * (AFrac::variable(p, a, true) * AFrac::variable(p, m, true));
      if (m == a) {
        ta.anti[um] = AFrac::constant(p, -I);
        tb.holo[um] = AFrac::constant(p, I);
      }
    }
    f.Ta.push_back(std::move(ta));
    f.Tbar.push_back(std::move(tb));
  }
  for (int a = 0; a < n; ++a) {
    std::vector<PolyVectorField> row;
    for (int b = 0; b < n; ++b) {
      PolyVectorField t = PolyVectorField::zero(p);
      t.holo[static_cast<size_t>(b)] = I * AFrac::variable(p, a, false);
      t.anti[static_cast<size_t>(a)] = -I * AFrac::variable(p, b, true);
      row.push_back(std::move(t));
    }
    f.Tmix.push_back(std::move(row));
  }
  return f;
}

struct RelationCheck {
  std::string name;
  bool holds = false;
  bool exact = true;
  std::string note;
};

struct AlgebraReport {
  std::vector<RelationCheck> relations;
  int dimension_computed = 0;
  int dimension_paper_claim = 0;
  bool all_hold = true;

  void add(std::string name, bool holds, std::string note = "") {
    all_hold = all_hold && holds;
    relations.push_back({std::move(name), holds, true, std::move(note)});
  }
};

namespace detail {

/// Exact rank over Q of real vector fields with polynomial coefficients.
/// A real field is determined by its holomorphic coefficient slots; their
/// Gaussian-rational monomial coordinates are split into real pairs.
inline int real_rank(const std::vector<PolyVectorField>& fields) {
  if (fields.empty()) return 0;
  std::map<std::pair<int, MultiIndex>, size_t> columns;
  for (const auto& f : fields)
    for (int slot = 0; slot < f.n(); ++slot) {
      const AFrac& c = f.holo[static_cast<size_t>(slot)];
      if (!c.is_polynomial()) throw std::logic_error("real_rank: expected polynomial coefficients");
      for (const auto& [m, coeff] : c.num().terms())
        columns.try_emplace({slot, m}, columns.size());
    }
  std::vector<std::vector<Rat>> rows;
  for (const auto& f : fields) {
    std::vector<Rat> row(2 * columns.size(), Rat(0));
    for (int slot = 0; slot < f.n(); ++slot)
      for (const auto& [m, coeff] : f.holo[static_cast<size_t>(slot)].num().terms()) {
        size_t col = columns.at({slot, m});
        row[2 * col] = coeff.re;
        row[2 * col + 1] = coeff.im;
      }
    rows.push_back(std::move(row));
  }
  // Fraction-free enough for these sizes: plain rational elimination.
  size_t rank = 0;
  const size_t ncols = 2 * columns.size();
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rat factor = rows[r][col] / rows[rank][col];
      for (size_t cc = col; cc < ncols; ++cc) rows[r][cc] -= factor * rows[rank][cc];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace detail

/// Real dimension of the Lie algebra generated by the oscillator fields,
/// bracketing to closure (the table closes at depth one; the cap is a
/// safety margin) and taking the exact real rank.
inline int algebra_dimension(const ModelParamsPtr& p, int depth_cap = 4) {
  OscillatorFields f = oscillator_fields(p);
  const GaussRat I = GaussRat::i();
  std::vector<PolyVectorField> basis;
  const int n = p->n();
  for (int a = 0; a < n; ++a) {
    basis.push_back(f.Ta[static_cast<size_t>(a)] + f.Tbar[static_cast<size_t>(a)]);
    basis.push_back(I * (f.Ta[static_cast<size_t>(a)] - f.Tbar[static_cast<size_t>(a)]));
    basis.push_back(f.Tmix[static_cast<size_t>(a)][static_cast<size_t>(a)]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      basis.push_back(f.Tmix[static_cast<size_t>(a)][static_cast<size_t>(b)] +
                      f.Tmix[static_cast<size_t>(b)][static_cast<size_t>(a)]);
      basis.push_back(I * (f.Tmix[static_cast<size_t>(a)][static_cast<size_t>(b)] -
                           f.Tmix[static_cast<size_t>(b)][static_cast<size_t>(a)]));
    }
  int rank = detail::real_rank(basis);
  for (int depth = 0; depth < depth_cap; ++depth) {
    std::vector<PolyVectorField> extended = basis;
    size_t before = basis.size();
    for (size_t i = 0; i < before; ++i)
      for (size_t j = i + 1; j < before; ++j) {
        PolyVectorField br = lie_bracket(basis[i], basis[j]);
        if (br.is_zero()) continue;
        extended.push_back(std::move(br));
      }
    int new_rank = detail::real_rank(extended);
    if (new_rank == rank) break;
    rank = new_rank;
    basis = std::move(extended);
  }
  return rank;
}

/// Checks every commutator relation of the deformed oscillator table, the
/// flat-limit table at k=0, and reports the computed algebra dimension
/// beside the claimed n(n+4).
inline AlgebraReport verify_algebra(const ModelParamsPtr& p) {
  AlgebraReport rep;
  const int n = p->n();
  const GaussRat I = GaussRat::i();
  const GaussRat c(p->c());
  OscillatorFields f = oscillator_fields(p);
  Model model = Model::build(p);
  ObservableFamily fam = build_family(p);

  auto idx = [](int a) { return static_cast<size_t>(a); };

  // The Hamiltonian fields of the family must reproduce the closed forms.
  rep.add("V(H) = i(z d - zbar dbar)", hamiltonian_field(fam.H, model.omega) == f.T);
  for (int a = 0; a < n; ++a) {
    rep.add("V(N^" + std::to_string(a + 1) + ") closed form",
            hamiltonian_field(fam.N[idx(a)], model.omega) == f.Ta[idx(a)]);
    rep.add("V(Nbar^" + std::to_string(a + 1) + ") closed form",
            hamiltonian_field(fam.Nbar[idx(a)], model.omega) == f.Tbar[idx(a)]);
    for (int b = 0; b < n; ++b)
      rep.add("V(Hmix^" + std::to_string(a + 1) + std::to_string(b + 1) + ") closed form",
              hamiltonian_field(fam.Hmix[idx(a)][idx(b)], model.omega) == f.Tmix[idx(a)][idx(b)]);
  }

  PolyVectorField tsum = PolyVectorField::zero(p);
  for (int a = 0; a < n; ++a) tsum = tsum + f.Tmix[idx(a)][idx(a)];
  rep.add("T = sum_a Tmix^{a abar}", tsum == f.T);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      rep.add("[T^" + std::to_string(a + 1) + ",T^" + std::to_string(b + 1) + "] = 0",
              lie_bracket(f.Ta[idx(a)], f.Ta[idx(b)]).is_zero());
      PolyVectorField rhs = f.Tmix[idx(a)][idx(b)];
      if (a == b) rhs = rhs + f.T;
      rep.add("[T^" + std::to_string(a + 1) + ",Tbar^" + std::to_string(b + 1) +
                  "] = i(k/4)(delta T + Tmix)",
              lie_bracket(f.Ta[idx(a)], f.Tbar[idx(b)]) == (I * c) * rhs);
    }
  for (int a = 0; a < n; ++a) {
    rep.add("[T^" + std::to_string(a + 1) + ",T] = -i T^" + std::to_string(a + 1),
            lie_bracket(f.Ta[idx(a)], f.T) == (-I) * f.Ta[idx(a)]);
    rep.add("[Tbar^" + std::to_string(a + 1) + ",T] = +i Tbar^" + std::to_string(a + 1),
            lie_bracket(f.Tbar[idx(a)], f.T) == I * f.Tbar[idx(a)],
            "sign +i computed exactly; -i on this row would contradict the k=0 limit");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g) {
        PolyVectorField lhs = lie_bracket(f.Ta[idx(a)], f.Tmix[idx(b)][idx(g)]);
        PolyVectorField rhs =
            a == g ? I * f.Ta[idx(b)] : PolyVectorField::zero(p);
        rep.add("[T^a,Tmix^{b gbar}] = i delta^a_g T^b (" + std::to_string(a + 1) +
                    std::to_string(b + 1) + std::to_string(g + 1) + ")",
                lhs == rhs);
        PolyVectorField lhs2 = lie_bracket(f.Tbar[idx(a)], f.Tmix[idx(b)][idx(g)]);
        PolyVectorField rhs2 =
            a == b ? (-I) * f.Tbar[idx(g)] : PolyVectorField::zero(p);
        rep.add("[Tbar^a,Tmix^{b gbar}] = -i delta^a_b Tbar^g (" + std::to_string(a + 1) +
                    std::to_string(b + 1) + std::to_string(g + 1) + ")",
                lhs2 == rhs2);
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        for (int d = 0; d < n; ++d) {
          PolyVectorField lhs = lie_bracket(f.Tmix[idx(a)][idx(b)], f.Tmix[idx(g)][idx(d)]);
          PolyVectorField rhs = PolyVectorField::zero(p);
          if (g == b) rhs = rhs + f.Tmix[idx(a)][idx(d)];
          if (d == a) rhs = rhs - f.Tmix[idx(g)][idx(b)];
          rep.add("[Tmix,Tmix] row (" + std::to_string(a + 1) + std::to_string(b + 1) +
                      std::to_string(g + 1) + std::to_string(d + 1) + ")",
                  lhs == I * rhs);
        }

  // Poisson table. {f,g} = V(f)g; constants are central and die under V.
  auto pb = [&](const Observable& x, const Observable& y) {
    return poisson(x.value, y.value, model.omega);
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      rep.add("{N^a,N^b} = 0 (" + std::to_string(a + 1) + std::to_string(b + 1) + ")",
              pb(fam.N[idx(a)], fam.N[idx(b)]).is_zero());
      AFrac rhs = fam.Hmix[idx(a)][idx(b)].value;
      if (a == b) rhs = rhs + fam.H.value;
      rhs = (I * c) * rhs;
      if (a == b) rhs = rhs - AFrac::constant(p, I);
      rep.add("{N^a,Nbar^b} = i(k/4)(delta H + Hmix) - i delta (" + std::to_string(a + 1) +
                  std::to_string(b + 1) + ")",
              pb(fam.N[idx(a)], fam.Nbar[idx(b)]) == rhs);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g) {
        AFrac rhs = a == g ? I * fam.N[idx(b)].value : AFrac::zero(p);
        rep.add("{N^a,Hmix^{b gbar}} = i delta^a_g N^b (" + std::to_string(a + 1) +
                    std::to_string(b + 1) + std::to_string(g + 1) + ")",
                pb(fam.N[idx(a)], fam.Hmix[idx(b)][idx(g)]) == rhs);
        AFrac rhs2 = a == b ? (-I) * fam.Nbar[idx(g)].value : AFrac::zero(p);
        rep.add("{Nbar^a,Hmix^{b gbar}} = -i delta^a_b Nbar^g (" + std::to_string(a + 1) +
                    std::to_string(b + 1) + std::to_string(g + 1) + ")",
                pb(fam.Nbar[idx(a)], fam.Hmix[idx(b)][idx(g)]) == rhs2);
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        for (int d = 0; d < n; ++d) {
          AFrac rhs = AFrac::zero(p);
          if (g == b) rhs = rhs + fam.Hmix[idx(a)][idx(d)].value;
          if (d == a) rhs = rhs - fam.Hmix[idx(g)][idx(b)].value;
          rep.add("{Hmix,Hmix} row (" + std::to_string(a + 1) + std::to_string(b + 1) +
                      std::to_string(g + 1) + std::to_string(d + 1) + ")",
                  pb(fam.Hmix[idx(a)][idx(b)], fam.Hmix[idx(g)][idx(d)]) == I * rhs,
                  "sign fixed by V({f,g}) = [V(f),V(g)]; the opposite sign fails that identity");
        }

  // Homomorphism sign: V({f,g}) = [V(f), V(g)] across the family.
  {
    bool ok = true;
    std::vector<const Observable*> all = {&fam.H};
    for (const auto& o : fam.N) all.push_back(&o);
    for (const auto& o : fam.Nbar) all.push_back(&o);
    for (const auto& row : fam.Hmix)
      for (const auto& o : row) all.push_back(&o);
    for (const auto* x : all)
      for (const auto* y : all) {
        PolyVectorField lhs = hamiltonian_field(pb(*x, *y), model.omega);
        PolyVectorField rhs =
            lie_bracket(hamiltonian_field(*x, model.omega), hamiltonian_field(*y, model.omega));
        if (lhs != rhs) ok = false;
      }
    rep.add("V({f,g}) = [V(f),V(g)] on the family", ok);
  }

  if (p->flat()) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!lie_bracket(f.Ta[idx(a)], f.Tbar[idx(b)]).is_zero()) ok = false;
    rep.add("flat limit: [T^a,Tbar^b] = 0", ok);
  }

  rep.dimension_computed = algebra_dimension(p);
  rep.dimension_paper_claim = n * (n + 4);
  return rep;
}

}  // namespace kq

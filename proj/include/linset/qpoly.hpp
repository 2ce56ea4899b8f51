#pragma once

/**
 * @file qpoly.hpp
 * @brief Endomorphism spaces E = End(F_{Q^n}, F_Q) as twisted polynomials
 *        phi(x) = sum_i c_i x^{Q^i}, the Segre variety of rank-one elements
 *        inside PG(E, F_Q), its systems and secant hypersurface, the adjoint
 *        involution, the coefficient-shift collineations, and the group
 *        action fixing the systems.
 *
 * Composition, adjoint and the shift collineations all have closed
 * coefficient formulas in this representation; the n = 2 matrix picture is
 * reached through a fixed basis translation where needed.
 */

#include <set>
#include "linearset.hpp"

namespace linset {

/// The ambient data: endomorphisms of F_{p^top_d} linear over F_{p^base_d}.
struct EndoSpace {
  const Tower* tw = nullptr;
  int base_d = 1;  // F_Q
  int top_d = 2;   // F_{Q^n}
  int n = 2;       // top_d / base_d

  const GaloisField& F() const { return tw->F(); }
  long long Q() const { return tw->sub(base_d).size; }
  const Decomp& dec() const { return tw->dec(base_d, top_d); }
  /// PG(E, F_Q) = PG(n^2 - 1, Q).
  ProjSpace proj() const { return ProjSpace{tw, base_d, n * n}; }
};

inline EndoSpace endo_space(const Tower& tw, int base_d, int top_d) {
  if (top_d % base_d != 0) throw Error("endo space: base must divide top");
  return EndoSpace{&tw, base_d, top_d, top_d / base_d};
}

/// phi(x) = sum_{i<n} c[i] x^{Q^i}; F_Q-linear on F_{Q^n}.
struct QPoly {
  std::vector<Fe> c;

  bool is_zero() const {
    for (Fe x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }
};

inline QPoly qp_zero(const EndoSpace& E) { return QPoly{std::vector<Fe>(E.n, fe_zero())}; }

/// t_lambda: x -> lambda x.
inline QPoly t_map(const EndoSpace& E, Fe lambda) {
  QPoly r = qp_zero(E);
  r.c[0] = lambda;
  return r;
}

/// Tr: x -> x + x^Q + ... + x^{Q^{n-1}}.
inline QPoly tr_map(const EndoSpace& E) {
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i) r.c[i] = fe_one();
  return r;
}

inline Fe qp_eval(const EndoSpace& E, const QPoly& f, Fe x) {
  const GaloisField& F = E.F();
  Fe acc = fe_zero(), xp = x;
  for (int i = 0; i < E.n; ++i) {
    acc = F.add(acc, F.mul(f.c[i], xp));
    xp = F.frob(xp, E.base_d);
  }
  return acc;
}

inline QPoly qp_add(const EndoSpace& E, const QPoly& a, const QPoly& b) {
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i) r.c[i] = E.F().add(a.c[i], b.c[i]);
  return r;
}

inline QPoly qp_scale(const EndoSpace& E, Fe s, const QPoly& a) {
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i) r.c[i] = E.F().mul(s, a.c[i]);
  return r;
}

/// (a o b)(x) = a(b(x)): coefficient convolution with Frobenius twists.
inline QPoly qp_compose(const EndoSpace& E, const QPoly& a, const QPoly& b) {
  const GaloisField& F = E.F();
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i) {
    if (a.c[i].is_zero()) continue;
    for (int j = 0; j < E.n; ++j) {
      if (b.c[j].is_zero()) continue;
      int k = (i + j) % E.n;
      r.c[k] = F.add(r.c[k], F.mul(a.c[i], F.frob(b.c[j], static_cast<long long>(E.base_d) * i)));
    }
  }
  return r;
}

/// Matrix over F_Q in the decomposition basis, rows = coordinate images
/// (row-vector convention: coords(phi(x)) = coords(x) . M).
inline Mat qp_matrix(const EndoSpace& E, const QPoly& f) {
  const GaloisField& F = E.F();
  const Decomp& d = E.dec();
  Mat m(E.n, E.n);
  for (int i = 0; i < E.n; ++i) {
    auto co = d.coords(F, qp_eval(E, f, d.basis()[i]));
    m.set_row(i, co);
  }
  return m;
}

inline int qp_rank(const EndoSpace& E, const QPoly& f) { return mat_rank(E.F(), qp_matrix(E, f)); }

inline bool qp_invertible(const EndoSpace& E, const QPoly& f) { return qp_rank(E, f) == E.n; }

/// The twisted polynomial with prescribed images of the decomposition basis,
/// solved through the Moore matrix of the basis.
inline QPoly qp_from_images(const EndoSpace& E, const std::vector<Fe>& images) {
  const GaloisField& F = E.F();
  const Decomp& d = E.dec();
  Mat sys(E.n, E.n + 1);
  for (int i = 0; i < E.n; ++i) {
    for (int j = 0; j < E.n; ++j)
      sys.at(i, j) = F.frob(d.basis()[i], static_cast<long long>(E.base_d) * j);
    sys.at(i, E.n) = images[i];
  }
  auto piv = rref(F, sys);
  if (static_cast<int>(piv.size()) != E.n || piv.back() == E.n)
    throw Error("qp_from_images: basis system is singular");
  QPoly r = qp_zero(E);
  for (int j = 0; j < E.n; ++j) r.c[j] = sys.at(j, E.n);
  return r;
}

inline QPoly qp_inverse(const EndoSpace& E, const QPoly& f) {
  const GaloisField& F = E.F();
  Mat minv = mat_inverse(F, qp_matrix(E, f));
  const Decomp& d = E.dec();
  std::vector<Fe> images(E.n);
  for (int i = 0; i < E.n; ++i) images[i] = d.compose(F, minv.row(i));
  return qp_from_images(E, images);
}

/// Coordinates in PG(n^2 - 1, Q): the n blocks of F_Q-coordinates of the
/// coefficients.
inline Vec qp_coords(const EndoSpace& E, const QPoly& f) {
  const GaloisField& F = E.F();
  const Decomp& d = E.dec();
  Vec out;
  out.reserve(static_cast<size_t>(E.n) * E.n);
  for (int i = 0; i < E.n; ++i) {
    auto co = d.coords(F, f.c[i]);
    out.insert(out.end(), co.begin(), co.end());
  }
  return out;
}

inline QPoly qp_from_coords(const EndoSpace& E, const Vec& v) {
  const GaloisField& F = E.F();
  const Decomp& d = E.dec();
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i) {
    std::vector<Fe> co(v.begin() + static_cast<size_t>(i) * E.n,
                       v.begin() + static_cast<size_t>(i + 1) * E.n);
    r.c[i] = d.compose(F, co);
  }
  return r;
}

/// Adjoint with respect to the trace form Tr(xy): coefficient rule
/// c'_j = c_{(n-j) mod n} ^ {Q^j}.  Involutory anti-homomorphism fixing t_lambda.
inline QPoly qp_adjoint(const EndoSpace& E, const QPoly& f) {
  const GaloisField& F = E.F();
  QPoly r = qp_zero(E);
  for (int j = 0; j < E.n; ++j)
    r.c[j] = F.frob(f.c[(E.n - j) % E.n], static_cast<long long>(E.base_d) * j);
  return r;
}

/// The trace bilinear form backing the adjoint.
inline Fe trace_form(const EndoSpace& E, Fe x, Fe y) {
  return E.F().rel_trace(E.F().mul(x, y), E.base_d, E.top_d);
}

/// Coefficient shift: c'_i = c_{(i-j) mod n}^{Q^j}; equals composition with
/// the Q-power Frobenius on the left, so it is induced by an element of the
/// system-fixing group.
inline QPoly qp_upsilon1(const EndoSpace& E, const QPoly& f, int j) {
  const GaloisField& F = E.F();
  j = static_cast<int>(positive_mod(j, E.n));
  QPoly r = qp_zero(E);
  for (int i = 0; i < E.n; ++i)
    r.c[i] = F.frob(f.c[positive_mod(i - j, E.n)], static_cast<long long>(E.base_d) * j);
  return r;
}

/// The conjugate shift acting on the other spread: composition with the
/// inverse Frobenius on the right.
inline QPoly qp_upsilon2(const EndoSpace& E, const QPoly& f, int j) {
  return qp_adjoint(E, qp_upsilon1(E, qp_adjoint(E, f), j));
}

// ---------------------------------------------------------------------------
// The Segre variety of rank-one endomorphisms
// ---------------------------------------------------------------------------

struct SegreVariety {
  EndoSpace E;
  PointSet points;                   // rank 1
  PointSet omega;                    // rank < n (the determinantal hypersurface)
  std::vector<ProjSubspace> sys1;    // X(lambda) = { t_alpha o Tr o t_lambda }
  std::vector<ProjSubspace> sys2;    // X'(lambda) = { t_lambda o Tr o t_alpha }
};

inline ProjPoint qp_point(const EndoSpace& E, const QPoly& f) {
  return normalize_point(E.F(), qp_coords(E, f));
}

inline QPoly rank_one_map(const EndoSpace& E, Fe lambda, Fe mu) {
  return qp_compose(E, t_map(E, lambda), qp_compose(E, tr_map(E), t_map(E, mu)));
}

/// Builds the variety both parametrically (lambda, mu classes) and by the
/// rank test over all points, and requires the two to coincide.
inline SegreVariety build_segre(const EndoSpace& E, long long budget = kDefaultEnumBudget) {
  const GaloisField& F = E.F();
  const auto& units = E.tw->sub(E.top_d).units;
  SegreVariety S{E, {}, {}, {}, {}};

  std::vector<ProjPoint> param;
  for (Fe lam : units)
    for (Fe mu : units) param.push_back(qp_point(E, rank_one_map(E, lam, mu)));
  PointSet parametric = to_point_set(std::move(param));

  ProjSpace P = E.proj();
  long long combos = 1;
  for (int i = 0; i < P.r; ++i) {
    combos *= P.Q();
    if (combos > budget) throw BudgetError("Segre rank scan over budget");
  }
  std::vector<ProjPoint> rank1, omega;
  for (const ProjPoint& pt : subspace_points(P, ProjSubspace{Mat::identity(P.r)})) {
    int rk = qp_rank(E, qp_from_coords(E, pt.v));
    if (rk == 1) rank1.push_back(pt);
    if (rk < E.n) omega.push_back(pt);
  }
  S.points = to_point_set(std::move(rank1));
  S.omega = to_point_set(std::move(omega));
  if (S.points != parametric)
    throw Error("Segre variety: parametric and rank-one constructions disagree");

  const Decomp& d = E.dec();
  std::set<ProjSubspace> xs, xps;
  for (Fe lam : units) {
    std::vector<Vec> rows1, rows2;
    for (int j = 0; j < E.n; ++j) {
      rows1.push_back(qp_coords(E, rank_one_map(E, d.basis()[j], lam)));
      rows2.push_back(qp_coords(E, rank_one_map(E, lam, d.basis()[j])));
    }
    xs.insert(make_subspace(F, rows1));
    xps.insert(make_subspace(F, rows2));
  }
  S.sys1.assign(xs.begin(), xs.end());
  S.sys2.assign(xps.begin(), xps.end());
  long long members = (ipow(E.Q(), E.n) - 1) / (E.Q() - 1);
  if (static_cast<long long>(S.sys1.size()) != members ||
      static_cast<long long>(S.sys2.size()) != members)
    throw Error("Segre variety: wrong system sizes");
  return S;
}

inline bool in_omega(const EndoSpace& E, const QPoly& f) {
  return !f.is_zero() && qp_rank(E, f) < E.n;
}

/// The subspace I = { <t_lambda> }.
inline ProjSubspace identity_subspace(const EndoSpace& E) {
  std::vector<Vec> rows;
  for (int j = 0; j < E.n; ++j) rows.push_back(qp_coords(E, t_map(E, E.dec().basis()[j])));
  return make_subspace(E.F(), rows);
}

/// I^{Upsilon_1^j} = { <x -> lambda x^{Q^j}> }.
inline ProjSubspace shifted_identity_subspace(const EndoSpace& E, int j) {
  std::vector<Vec> rows;
  for (int b = 0; b < E.n; ++b) {
    QPoly f = qp_zero(E);
    f.c[static_cast<size_t>(positive_mod(j, E.n))] = E.dec().basis()[b];
    rows.push_back(qp_coords(E, f));
  }
  return make_subspace(E.F(), rows);
}

// ---------------------------------------------------------------------------
// The group fixing the systems, and its identity-subspace orbit
// ---------------------------------------------------------------------------

/// phi -> psi1 o phi o psi2, optionally pre-composed with the adjoint (the
/// transpose flag swaps the systems; without it they are fixed).
struct HElement {
  QPoly psi1, psi2;
  bool transpose = false;
};

inline HElement h_identity(const EndoSpace& E) {
  return HElement{t_map(E, fe_one()), t_map(E, fe_one()), false};
}

inline QPoly h_act(const EndoSpace& E, const HElement& h, const QPoly& f) {
  QPoly g = h.transpose ? qp_adjoint(E, f) : f;
  return qp_compose(E, h.psi1, qp_compose(E, g, h.psi2));
}

inline HElement h_inverse(const EndoSpace& E, const HElement& h) {
  if (!h.transpose) return HElement{qp_inverse(E, h.psi1), qp_inverse(E, h.psi2), false};
  // inverse of phi -> psi1 adj(phi) psi2 is phi -> adj(psi2) adj(... ) with the
  // adjoint anti-homomorphism pulled through
  return HElement{qp_adjoint(E, qp_inverse(E, h.psi2)), qp_adjoint(E, qp_inverse(E, h.psi1)), true};
}

inline HElement h_compose(const EndoSpace& E, const HElement& a, const HElement& b) {
  // (a o b)(phi) = a(b(phi))
  if (!b.transpose)
    return HElement{qp_compose(E, a.psi1, a.transpose ? qp_adjoint(E, b.psi2) : b.psi1),
                    qp_compose(E, a.transpose ? qp_adjoint(E, b.psi1) : b.psi2, a.psi2),
                    a.transpose};
  // b has the flag: a(psi1' adj(phi) psi2') = psi1 [adj]? ...
  QPoly left = a.transpose ? qp_adjoint(E, b.psi2) : b.psi1;
  QPoly right = a.transpose ? qp_adjoint(E, b.psi1) : b.psi2;
  return HElement{qp_compose(E, a.psi1, left), qp_compose(E, right, a.psi2), !a.transpose};
}

inline ProjSubspace h_act(const EndoSpace& E, const HElement& h, const ProjSubspace& s) {
  std::vector<Vec> rows;
  for (int i = 0; i < s.basis.rows; ++i)
    rows.push_back(qp_coords(E, h_act(E, h, qp_from_coords(E, s.basis.row(i)))));
  return make_subspace(E.F(), rows);
}

/// The two Desarguesian spreads through I: classes { t_alpha o phi } and
/// { phi o t_alpha }.  Elements are returned as canonical subspaces of P.
inline std::vector<ProjSubspace> d_spread(const EndoSpace& E, bool left) {
  const GaloisField& F = E.F();
  ProjSpace P = E.proj();
  std::set<ProjSubspace> elems;
  for (const ProjPoint& pt : subspace_points(P, ProjSubspace{Mat::identity(P.r)})) {
    QPoly f = qp_from_coords(E, pt.v);
    std::vector<Vec> rows;
    for (int j = 0; j < E.n; ++j) {
      QPoly tb = t_map(E, E.dec().basis()[j]);
      rows.push_back(qp_coords(E, left ? qp_compose(E, tb, f) : qp_compose(E, f, tb)));
    }
    elems.insert(make_subspace(F, rows));
  }
  return std::vector<ProjSubspace>(elems.begin(), elems.end());
}

struct DSubspaceCertificate {
  HElement h;  // I^h = X, with the flag off
};

/// Constructive membership test for the orbit of I under the system-fixing
/// group.  An (n-1)-subspace disjoint from the secant hypersurface carries a
/// field structure; the certificate is assembled from a module isomorphism
/// onto F_{Q^n} and verified by transporting I.
inline std::optional<DSubspaceCertificate> is_d_subspace(const EndoSpace& E,
                                                         const ProjSubspace& X) {
  const GaloisField& F = E.F();
  if (X.vdim() != E.n) return std::nullopt;
  std::vector<QPoly> basis;
  for (int i = 0; i < X.basis.rows; ++i) basis.push_back(qp_from_coords(E, X.basis.row(i)));

  // every nonzero F_Q-combination must be invertible
  const auto& coeffs = E.tw->sub(E.base_d).elems;
  std::vector<size_t> idx(E.n, 0);
  while (true) {
    QPoly f = qp_zero(E);
    bool nz = false;
    for (int i = 0; i < E.n; ++i) {
      if (coeffs[idx[i]].is_zero()) continue;
      nz = true;
      f = qp_add(E, f, qp_scale(E, coeffs[idx[i]], basis[i]));
    }
    if (nz && !qp_invertible(E, f)) return std::nullopt;
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }

  QPoly phi0 = basis[0];
  QPoly phi0_inv = qp_inverse(E, phi0);
  // B = phi0^{-1} X contains the identity; it must be composition-closed
  std::vector<QPoly> bbasis;
  std::vector<Vec> brows;
  for (const QPoly& f : basis) {
    bbasis.push_back(qp_compose(E, phi0_inv, f));
    brows.push_back(qp_coords(E, bbasis.back()));
  }
  Mat bspan = row_basis(F, Mat::from_rows(brows));
  for (const QPoly& a : bbasis)
    for (const QPoly& b : bbasis)
      if (!coords_in_rows(F, bspan, qp_coords(E, qp_compose(E, a, b)))) return std::nullopt;

  // find a multiplicative generator of the field B
  long long order_needed = ipow(E.Q(), E.n) - 1;
  QPoly id = t_map(E, fe_one());
  QPoly gen = qp_zero(E);
  {
    std::vector<size_t> ix(E.n, 0);
    bool found = false;
    while (!found) {
      QPoly f = qp_zero(E);
      bool nz = false;
      for (int i = 0; i < E.n; ++i) {
        if (coeffs[ix[i]].is_zero()) continue;
        nz = true;
        f = qp_add(E, f, qp_scale(E, coeffs[ix[i]], bbasis[i]));
      }
      if (nz) {
        long long ord = 1;
        QPoly cur = f;
        while (!(cur == id) && ord <= order_needed) {
          cur = qp_compose(E, cur, f);
          ++ord;
        }
        if (ord == order_needed) {
          gen = f;
          found = true;
        }
      }
      size_t pos = 0;
      while (pos < ix.size() && ++ix[pos] == coeffs.size()) ix[pos++] = 0;
      if (pos == ix.size() && !found) return std::nullopt;
    }
  }

  // minimal polynomial of gen over F_Q and one of its roots in F_{Q^n}
  std::vector<Vec> powers;
  QPoly cur = id;
  for (int k = 0; k <= E.n; ++k) {
    powers.push_back(qp_coords(E, cur));
    cur = qp_compose(E, cur, gen);
  }
  Mat pw = Mat::from_rows(powers);
  Mat ker = null_space(F, [&] {
    Mat m(pw.cols, pw.rows);
    for (int i = 0; i < pw.rows; ++i)
      for (int j = 0; j < pw.cols; ++j) m.at(j, i) = pw.at(i, j);
    return m;
  }());
  if (ker.rows != 1) return std::nullopt;  // generator should have degree n
  Vec mp = ker.row(0);                     // sum mp[k] gen^k = 0
  Fe lead_inv = F.inv(mp[E.n]);
  Fe lambda0;
  bool root_found = false;
  for (Fe x : E.tw->sub(E.top_d).elems) {
    Fe acc = fe_zero(), xp = fe_one();
    for (int k = 0; k <= E.n; ++k) {
      acc = F.add(acc, F.mul(F.mul(mp[k], lead_inv), xp));
      xp = F.mul(xp, x);
    }
    if (acc.is_zero()) {
      lambda0 = x;
      root_found = true;
      break;
    }
  }
  if (!root_found) return std::nullopt;

  // module isomorphism: x = b(1) -> chi(b), tabulated on the powers of gen
  std::vector<Fe> images(E.n, fe_zero());
  {
    const Decomp& d = E.dec();
    // psi(gen^k (1)) = lambda0^k; build psi on the decomposition basis by
    // solving the value table
    std::vector<std::pair<Fe, Fe>> table;  // (x, psi(x))
    QPoly p = id;
    Fe lp = fe_one();
    for (long long k = 0; k < order_needed; ++k) {
      table.emplace_back(qp_eval(E, p, fe_one()), lp);
      p = qp_compose(E, p, gen);
      lp = F.mul(lp, lambda0);
    }
    // psi is F_Q-linear: solve from n independent table entries
    std::vector<std::pair<Fe, Fe>> picked;
    std::vector<Vec> rows;
    for (auto& [x, y] : table) {
      Vec co = d.coords(F, x);
      rows.push_back(co);
      Mat m = Mat::from_rows(rows);
      if (mat_rank(F, m) == static_cast<int>(rows.size())) {
        picked.emplace_back(x, y);
        if (static_cast<int>(picked.size()) == E.n) break;
      } else {
        rows.pop_back();
      }
    }
    if (static_cast<int>(picked.size()) != E.n) return std::nullopt;
    // images of the decomposition basis: solve coords * images = psi values
    Mat coeff(E.n, E.n);
    for (int i = 0; i < E.n; ++i) coeff.set_row(i, d.coords(F, picked[i].first));
    Mat inv = mat_inverse(F, coeff);
    for (int j = 0; j < E.n; ++j) {
      Fe acc = fe_zero();
      for (int i = 0; i < E.n; ++i) acc = F.add(acc, F.mul(inv.at(j, i), picked[i].second));
      images[j] = acc;
    }
  }
  QPoly psi = qp_from_images(E, images);
  if (!qp_invertible(E, psi)) return std::nullopt;

  HElement h{qp_compose(E, phi0, qp_inverse(E, psi)), psi, false};
  if (!(h_act(E, h, identity_subspace(E)) == X)) return std::nullopt;
  return DSubspaceCertificate{h};
}

// ---------------------------------------------------------------------------
// The n = 2 quadric picture
// ---------------------------------------------------------------------------

struct QuadricReport {
  bool zero_set_matches = false;
  bool identity_line_external = false;
  bool conjugate_is_polar = false;
  long long zero_set_size = 0;
};

/// For n = 2 the variety is a hyperbolic quadric: phi = c_0 x + c_1 x^Q
/// vanishes on it iff N(c_0) = N(c_1).  Checks the zero set, that I is
/// external, and that I^{Upsilon_1} is the polar line of I under the
/// polarized form.
inline QuadricReport quadric_form_check(const EndoSpace& E) {
  if (E.n != 2) throw Error("quadric_form_check: n = 2 only");
  const GaloisField& F = E.F();
  auto S = build_segre(E);
  auto quad_form = [&](const QPoly& f) {
    return F.sub(F.rel_norm(f.c[0], E.base_d, E.top_d), F.rel_norm(f.c[1], E.base_d, E.top_d));
  };
  QuadricReport rep;
  ProjSpace P = E.proj();
  std::vector<ProjPoint> zeros;
  for (const ProjPoint& pt : subspace_points(P, ProjSubspace{Mat::identity(P.r)}))
    if (quad_form(qp_from_coords(E, pt.v)).is_zero()) zeros.push_back(pt);
  PointSet zs = to_point_set(std::move(zeros));
  rep.zero_set_size = static_cast<long long>(zs.size());
  rep.zero_set_matches = zs == S.points;

  ProjSubspace I = identity_subspace(E);
  rep.identity_line_external = true;
  for (const ProjPoint& pt : subspace_points(P, I))
    if (quad_form(qp_from_coords(E, pt.v)).is_zero()) rep.identity_line_external = false;

  // polarization b(f, g) = Q(f+g) - Q(f) - Q(g); Gram matrix over the
  // coordinate basis, then the polar subspace of I
  int r = P.r;
  auto basis_poly = [&](int a) {
    Vec v(r, fe_zero());
    v[a] = fe_one();
    return qp_from_coords(E, v);
  };
  Mat gram(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      QPoly fa = basis_poly(a), fb = basis_poly(b);
      Fe qa = quad_form(fa), qb = quad_form(fb), qab = quad_form(qp_add(E, fa, fb));
      gram.at(a, b) = F.sub(F.sub(qab, qa), qb);
    }
  Mat eqs = mat_mul(F, I.basis, gram);  // rows: b(i-th basis, .)
  ProjSubspace polar{row_basis(F, null_space(F, eqs))};
  rep.conjugate_is_polar = polar == shifted_identity_subspace(E, 1);
  return rep;
}

}  // namespace linset

#pragma once

/**
 * @file semifield.hpp
 * @brief Semifield spread sets inside E = End(F_{q^nt}, F_{q^t}): generic
 *        validation, the relevant linear set, Generalized Twisted Fields,
 *        the two-dimensional Knuth families, and recognition of both up to
 *        the system-fixing group action.
 *
 * A spread set is an F_q-subspace of E of dimension nt all of whose nonzero
 * elements are invertible.  Its projective image is an F_q-linear set of
 * rank nt in PG(n^2 - 1, q^t) disjoint from the determinantal hypersurface,
 * and the structure of that set against the identity subspace I, its
 * conjugates, and (for n = 2) the hyperbolic quadric decides the family.
 */

#include <set>
#include "pseudoregulus.hpp"
#include "qpoly.hpp"

namespace linset {

struct SpreadSetSemifield {
  EndoSpace E;      // base F_{q^t} (left nucleus side), top F_{q^nt}
  int center_d = 1; // F_q
  std::vector<QPoly> basis;  // nt maps, F_q-independent

  int rank() const { return static_cast<int>(basis.size()); }
};

struct SpreadSetFailure {
  QPoly element;  // a singular nonzero combination
  Fe kernel_x;    // a nonzero root of it
};

/// All nonzero F_q-combinations of the basis; fn may return false to stop.
template <typename Fn>
inline void for_each_spread_element(const SpreadSetSemifield& C, Fn&& fn) {
  const auto& coeffs = C.E.tw->sub(C.center_d).elems;
  std::vector<size_t> idx(C.basis.size(), 0);
  while (true) {
    QPoly f = qp_zero(C.E);
    bool nz = false;
    for (size_t i = 0; i < C.basis.size(); ++i) {
      if (coeffs[idx[i]].is_zero()) continue;
      nz = true;
      f = qp_add(C.E, f, qp_scale(C.E, coeffs[idx[i]], C.basis[i]));
    }
    if (nz && !fn(f)) return;
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
}

/// Validates independence and that every nonzero combination is invertible;
/// on failure carries a witness element and kernel vector.
inline SpreadSetSemifield make_spread_set(const EndoSpace& E, int center_d,
                                          std::vector<QPoly> basis,
                                          SpreadSetFailure* failure = nullptr) {
  SpreadSetSemifield C{E, center_d, std::move(basis)};
  int expected = E.n * (E.base_d / center_d);
  if (C.rank() != expected) throw Error("spread set must have F_q-dimension nt");
  std::vector<Vec> rows;
  for (const auto& f : C.basis) rows.push_back(qp_coords(E, f));
  ProjSpace P = E.proj();
  make_linear_set(ProjSpace{E.tw, E.base_d, P.r}, center_d, rows);  // throws if dependent
  std::optional<SpreadSetFailure> bad;
  for_each_spread_element(C, [&](const QPoly& f) {
    if (qp_invertible(E, f)) return true;
    Fe x;
    for (Fe cand : E.tw->sub(E.top_d).units)
      if (qp_eval(E, f, cand).is_zero()) {
        x = cand;
        break;
      }
    bad = SpreadSetFailure{f, x};
    return false;
  });
  if (bad) {
    if (failure) *failure = *bad;
    throw Error("spread set has a singular nonzero element");
  }
  return C;
}

/// The relevant linear set L(S) in PG(n^2 - 1, q^t), coefficient coordinates.
inline FqLinearSet spreadset_linear_set(const SpreadSetSemifield& C) {
  std::vector<Vec> rows;
  for (const auto& f : C.basis) rows.push_back(qp_coords(C.E, f));
  return make_linear_set(C.E.proj(), C.center_d, rows);
}

/// The field F_{q^nt} itself as a spread set: { t_y }.  Its linear set is the
/// identity subspace, the degenerate case of recognition.
inline SpreadSetSemifield field_spread_set(const EndoSpace& E, int center_d) {
  const Decomp& d = E.tw->dec(center_d, E.top_d);
  std::vector<QPoly> basis;
  for (Fe b : d.basis()) basis.push_back(t_map(E, b));
  return make_spread_set(E, center_d, std::move(basis));
}

// ---------------------------------------------------------------------------
// Generalized Twisted Fields:  x * y = yx - c y^{q^m} x^{q^{tl}}
// ---------------------------------------------------------------------------

struct GTFParams {
  int l = 1;  // 1 <= l <= n-1, gcd(l, n) = 1
  int m = 1;  // 1 <= m <= nt-1, gcd(t, m) = 1, m != t l
  Fe c;       // c != x^{q^{tl}-1} y^{q^m-1} for all x, y
};

/// The forbidden values of c: the products x^(q^tl - 1) y^(q^m - 1) form the
/// subgroup generated by g^d, d = gcd of the two power-map indices inside the
/// cyclic unit group.
inline std::set<Fe> gtf_excluded_set(const Tower& tw, int l, int m) {
  const GaloisField& F = tw.F();
  long long N = tw.qnt() - 1;
  long long a = std::gcd(ipow(tw.q(), tw.t() * l) - 1, N);
  long long b = std::gcd(ipow(tw.q(), m) - 1, N);
  long long d = std::gcd(a, b);
  std::set<Fe> out;
  for (long long k = 0; k < N; k += d) out.insert(F.pow(tw.Fqnt().gen, k));
  return out;
}

/// Same set by brute force over all (x, y) pairs; the oracle for the
/// subgroup form at small scales.
inline std::set<Fe> gtf_excluded_set_by_enumeration(const Tower& tw, int l, int m) {
  const GaloisField& F = tw.F();
  long long etl = ipow(tw.q(), tw.t() * l) - 1;
  long long em = ipow(tw.q(), m) - 1;
  std::set<Fe> out;
  for (Fe x : tw.Fqnt().units)
    for (Fe y : tw.Fqnt().units) out.insert(F.mul(F.pow(x, etl), F.pow(y, em)));
  return out;
}

inline void validate_gtf_params(const Tower& tw, const GTFParams& p) {
  int n = tw.n(), t = tw.t();
  if (tw.q() <= 2) throw Error("twisted field: q > 2 required");
  if (t == 1 && n < 3) throw Error("twisted field: t = 1 forces n >= 3");
  if (!(1 <= p.l && p.l <= n - 1) || std::gcd((long long)p.l, (long long)n) != 1)
    throw Error("twisted field: l out of range or gcd(l, n) != 1");
  if (!(1 <= p.m && p.m <= n * t - 1) || std::gcd((long long)t, (long long)p.m) != 1 ||
      p.m == t * p.l)
    throw Error("twisted field: m out of range, gcd(t, m) != 1, or m = t l");
  if (p.c.is_zero()) throw Error("twisted field: c must be nonzero");
}

/// phi_y(x) = yx - c y^{q^m} x^{q^{tl}} as a twisted polynomial over F_{q^t}.
inline QPoly gtf_map(const Tower& tw, const EndoSpace& E, const GTFParams& p, Fe y) {
  const GaloisField& F = tw.F();
  QPoly f = qp_zero(E);
  f.c[0] = y;
  f.c[p.l] = F.neg(F.mul(p.c, F.frob(y, static_cast<long long>(tw.h()) * p.m)));
  return f;
}

inline SpreadSetSemifield gtf_spread_set(const Tower& tw, const GTFParams& p) {
  validate_gtf_params(tw, p);
  auto excluded = gtf_excluded_set(tw, p.l, p.m);
  if (excluded.count(p.c)) {
    // find a witness pair
    const GaloisField& F = tw.F();
    long long etl = ipow(tw.q(), tw.t() * p.l) - 1;
    long long em = ipow(tw.q(), p.m) - 1;
    for (Fe x : tw.Fqnt().units)
      for (Fe y : tw.Fqnt().units)
        if (F.mul(F.pow(x, etl), F.pow(y, em)) == p.c)
          throw Error("twisted field: c = x^(q^tl - 1) y^(q^m - 1) at x exponent " +
                      std::to_string(x.v) + ", y exponent " + std::to_string(y.v));
    throw Error("twisted field: c lies in the excluded product set");
  }
  EndoSpace E = endo_space(tw, tw.d_qt(), tw.d_qnt());
  const Decomp& d = tw.dec(tw.h(), tw.d_qnt());
  std::vector<QPoly> basis;
  for (Fe b : d.basis()) basis.push_back(gtf_map(tw, E, p, b));
  return make_spread_set(E, tw.h(), std::move(basis));
}

/// All valid parameter triples, scanned (l, m) lexicographically and c by
/// ascending generator exponent.
inline std::vector<GTFParams> gtf_find_params(const Tower& tw, bool first_c_only = false) {
  std::vector<GTFParams> out;
  if (tw.q() <= 2) return out;
  if (tw.t() == 1 && tw.n() < 3) return out;
  for (int l = 1; l <= tw.n() - 1; ++l) {
    if (std::gcd((long long)l, (long long)tw.n()) != 1) continue;
    for (int m = 1; m <= tw.n() * tw.t() - 1; ++m) {
      if (std::gcd((long long)tw.t(), (long long)m) != 1 || m == tw.t() * l) continue;
      auto excluded = gtf_excluded_set(tw, l, m);
      for (Fe c : tw.Fqnt().units) {
        if (excluded.count(c)) continue;
        out.push_back(GTFParams{l, m, c});
        if (first_c_only) break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Knuth semifields two-dimensional over the left nucleus (n = 2)
// ---------------------------------------------------------------------------

struct KnuthParams {
  int family = 17;  // 17 or 19
  int sigma_s = 1;  // sigma = x -> x^{q^s}, gcd(s, t) = 1
  Fe f, g;          // nonzero; x^{q+1} + g x - f without roots in F_{q^t}
};

/// Roots of x^{q+1} + g x - f over F_{q^t}, by enumeration.
inline std::optional<Fe> knuth_polynomial_root(const Tower& tw, Fe f, Fe g) {
  const GaloisField& F = tw.F();
  for (Fe x : tw.Fqt().elems) {
    Fe val = F.sub(F.add(F.mul(F.frob(x, tw.h()), x), F.mul(g, x)), f);
    if (val.is_zero()) return x;
  }
  return std::nullopt;
}

inline Mat knuth_matrix(const Tower& tw, const KnuthParams& p, Fe x, Fe y) {
  const GaloisField& F = tw.F();
  long long s = static_cast<long long>(tw.h()) * p.sigma_s;
  long long sinv = positive_mod(-s, static_cast<long long>(tw.h()) * tw.t());
  Mat M(2, 2);
  M.at(0, 0) = x;
  M.at(0, 1) = y;
  if (p.family == 17) {
    M.at(1, 0) = F.mul(p.f, F.frob(y, s));
    M.at(1, 1) = F.add(F.frob(x, s), F.mul(p.g, F.frob(y, s)));
  } else {
    M.at(1, 0) = F.mul(p.f, F.frob(y, sinv));
    M.at(1, 1) = F.add(F.frob(x, s), F.mul(p.g, y));
  }
  return M;
}

inline Vec mat2_flatten(const Mat& M) { return Vec{M.at(0, 0), M.at(0, 1), M.at(1, 0), M.at(1, 1)}; }

inline Mat mat2_unflatten(const Vec& v) {
  Mat M(2, 2);
  M.at(0, 0) = v[0];
  M.at(0, 1) = v[1];
  M.at(1, 0) = v[2];
  M.at(1, 1) = v[3];
  return M;
}

inline void validate_knuth_params(const Tower& tw, const KnuthParams& p) {
  if (tw.n() != 2) throw Error("Knuth family: n = 2 required");
  if (tw.t() < 2) throw Error("Knuth family: t >= 2 required");
  if (p.family != 17 && p.family != 19) throw Error("Knuth family: 17 or 19");
  if (p.f.is_zero() || p.g.is_zero()) throw Error("Knuth family: f and g must be nonzero");
  if (std::gcd((long long)p.sigma_s, (long long)tw.t()) != 1)
    throw Error("Knuth family: companion automorphism must fix exactly F_q");
  if (auto root = knuth_polynomial_root(tw, p.f, p.g))
    throw Error("Knuth family: x^(q+1) + g x - f has the root with exponent " +
                std::to_string(root->v));
}

inline SpreadSetSemifield knuth_spread_set(const Tower& tw, const KnuthParams& p) {
  validate_knuth_params(tw, p);
  const GaloisField& F = tw.F();
  EndoSpace E = endo_space(tw, tw.d_qt(), tw.d_qnt());
  const Decomp& dq = tw.dec(tw.h(), tw.d_qt());
  std::vector<QPoly> basis;
  for (int which = 0; which < 2; ++which) {
    for (int j = 0; j < tw.t(); ++j) {
      Fe u = dq.basis()[j];
      Mat M = which == 0 ? knuth_matrix(tw, p, u, F.zero()) : knuth_matrix(tw, p, F.zero(), u);
      std::vector<Fe> images{
          E.dec().compose(F, {M.at(0, 0), M.at(0, 1)}),
          E.dec().compose(F, {M.at(1, 0), M.at(1, 1)}),
      };
      basis.push_back(qp_from_images(E, images));
    }
  }
  return make_spread_set(E, tw.h(), std::move(basis));
}

/// The relevant linear set in matrix coordinates (x0, x1, x2, x3).
inline FqLinearSet matrix_linear_set(const SpreadSetSemifield& C) {
  if (C.E.n != 2) throw Error("matrix coordinates need n = 2");
  std::vector<Vec> rows;
  for (const auto& f : C.basis) rows.push_back(mat2_flatten(qp_matrix(C.E, f)));
  ProjSpace sp{C.E.tw, C.E.base_d, 4};
  return make_linear_set(sp, C.center_d, rows);
}

/// The transpose collineation in matrix coordinates.
inline SemilinearMap transpose_map(const ProjSpace& sp) {
  Mat A(4, 4);
  A.at(0, 0) = fe_one();
  A.at(1, 2) = fe_one();
  A.at(2, 1) = fe_one();
  A.at(3, 3) = fe_one();
  return SemilinearMap::make(sp, A, 0);
}

/// The two reguli of the hyperbolic quadric x0 x3 = x1 x2: lines of constant
/// column factor (the one through x2 = x3 = 0) and of constant row factor.
inline std::vector<ProjSubspace> quadric_regulus(const ProjSpace& sp, bool column_side) {
  const GaloisField& F = sp.F();
  ProjSpace line{sp.tw, sp.coord_d, 2};
  std::vector<ProjSubspace> out;
  for (const ProjPoint& c : subspace_points(line, ProjSubspace{Mat::identity(2)})) {
    Mat a(2, 2), b(2, 2);
    if (column_side) {
      // span of c^T (1 0) and c^T (0 1)
      a.at(0, 0) = c.v[0];
      a.at(1, 0) = c.v[1];
      b.at(0, 1) = c.v[0];
      b.at(1, 1) = c.v[1];
    } else {
      a.at(0, 0) = c.v[0];
      a.at(0, 1) = c.v[1];
      b.at(1, 0) = c.v[0];
      b.at(1, 1) = c.v[1];
    }
    out.push_back(make_subspace(F, {mat2_flatten(a), mat2_flatten(b)}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Recognition
// ---------------------------------------------------------------------------

namespace detail {

inline std::optional<Vec> solve_linear(const GaloisField& F, const Mat& A, const Vec& b) {
  Mat At(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) At.at(j, i) = A.at(i, j);
  return coords_in_rows(F, At, b);
}

}  // namespace detail

struct KnuthRecognition {
  bool ok = false;
  std::string reason;
  KnuthParams params;
  // maps the matrix-coordinate linear set of the input onto the rebuilt
  // standard set; for family 19 includes the transpose
  std::optional<SemilinearMap> normalizer;
};

/// Recognizes presemifields two-dimensional over the left nucleus whose
/// relevant linear set admits a transversal pair inside the quadric: finds
/// the pair regulus by regulus, normalizes the pair onto the coordinate
/// lines with a foot adjustment, reads off the companion automorphism and
/// the two coefficients, and verifies the round trip point-set-wise.
inline KnuthRecognition recognize_knuth(const SpreadSetSemifield& C) {
  KnuthRecognition out;
  const Tower& tw = *C.E.tw;
  const GaloisField& F = tw.F();
  if (C.E.n != 2) {
    out.reason = "not two-dimensional over the left nucleus";
    return out;
  }
  int t = tw.t();
  FqLinearSet L = matrix_linear_set(C);
  PointSet pts = enumerate_points(L);
  if (static_cast<long long>(pts.size()) != L.max_size()) {
    out.reason = "relevant linear set is not scattered";
    return out;
  }
  ProjSpace sp = L.sp;

  auto left_mul_map = [&](const Mat& Pm) {
    Mat A(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Mat Eab(2, 2);
        Eab.at(a, b) = fe_one();
        Vec img = mat2_flatten(mat_mul(F, Pm, Eab));
        for (int r = 0; r < 4; ++r) A.at(r, 2 * a + b) = img[r];
      }
    return SemilinearMap::make(sp, A, 0);
  };
  auto right_mul_map = [&](const Mat& Rm) {
    Mat A(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Mat Eab(2, 2);
        Eab.at(a, b) = fe_one();
        Vec img = mat2_flatten(mat_mul(F, Eab, Rm));
        for (int r = 0; r < 4; ++r) A.at(r, 2 * a + b) = img[r];
      }
    return SemilinearMap::make(sp, A, 0);
  };

  // a nonzero matrix of a quadric line has rank one; its column factor
  auto column_factor = [&](const ProjSubspace& line) {
    Mat M = mat2_unflatten(line.basis.row(0));
    Vec col{M.at(0, 0), M.at(1, 0)};
    if (vec_is_zero(col)) col = Vec{M.at(0, 1), M.at(1, 1)};
    return col;
  };

  // Verified transversal pairs are not unique for t = 2, and not every pair
  // normalizes onto the standard form with both coefficients nonzero, so
  // attempt the full normalization pair by pair and keep the first success.
  auto attempt = [&](const Pseudoregulus& found, bool column_side,
                     std::string& why) -> std::optional<KnuthRecognition> {
    SemilinearMap total = SemilinearMap::make(sp, Mat::identity(4), 0);
    FqLinearSet work = L;
    Pseudoregulus wpr = found;
    if (!column_side) {  // family 19 side: transpose down to the column regulus
      SemilinearMap T = transpose_map(sp);
      work = apply_map(T, work);
      wpr.t1 = T.apply(wpr.t1);
      wpr.t2 = T.apply(wpr.t2);
      total = T;
    }

    Vec c1 = column_factor(wpr.t1), c2 = column_factor(wpr.t2);
    Mat cm(2, 2);
    cm.at(0, 0) = c1[0];
    cm.at(1, 0) = c1[1];
    cm.at(0, 1) = c2[0];
    cm.at(1, 1) = c2[1];
    SemilinearMap N1 = left_mul_map(mat_inverse(F, cm));  // c1 -> e0, c2 -> e1
    work = apply_map(N1, work);
    total = N1.compose(total);

    // foot adjustment: the partner of R = <(1,0,0,0)> moves to <(0,0,0,1)>
    ProjSubspace rp_line = make_subspace(F, {Vec{fe_zero(), fe_zero(), fe_one(), fe_zero()},
                                             Vec{fe_zero(), fe_zero(), fe_zero(), fe_one()}});
    Vec R{fe_one(), fe_zero(), fe_zero(), fe_zero()};
    std::optional<Vec> partner;
    for (const ProjPoint& B : subspace_points(sp, rp_line)) {
      ProjSubspace cand = make_subspace(F, {R, B.v});
      if (weight(work, cand) == t) {
        if (partner) {
          why = "foot of the first coordinate point is not unique";
          return std::nullopt;
        }
        partner = B.v;
      }
    }
    if (!partner) {
      why = "no weight-t joining line through the first coordinate point";
      return std::nullopt;
    }
    Fe u = (*partner)[2], v = (*partner)[3];
    if (v.is_zero()) {
      why = "degenerate foot inside the quadric";
      return std::nullopt;
    }
    Mat R2 = Mat::identity(2);
    R2.at(1, 0) = F.neg(F.div(u, v));
    SemilinearMap N2 = right_mul_map(R2);
    work = apply_map(N2, work);
    total = N2.compose(total);

    // read off sigma and the rows x2 = a1 x0^s + a2 x1^s, x3 = b1 x0^s + b2 x1^s
    std::optional<int> sigma_found;
    Fe a1, a2, b1, b2;
    for (int s = 1; s < t && !sigma_found; ++s) {
      if (std::gcd((long long)s, (long long)t) != 1) continue;
      long long js = static_cast<long long>(tw.h()) * s;
      Mat A(work.rank(), 2);
      Vec rhs2(work.rank()), rhs3(work.rank());
      for (int i = 0; i < work.rank(); ++i) {
        Vec row = work.basis.row(i);
        A.at(i, 0) = F.frob(row[0], js);
        A.at(i, 1) = F.frob(row[1], js);
        rhs2[i] = row[2];
        rhs3[i] = row[3];
      }
      auto sol2 = detail::solve_linear(F, A, rhs2);
      auto sol3 = detail::solve_linear(F, A, rhs3);
      if (sol2 && sol3 && mat_rank(F, A) == 2) {
        sigma_found = s;
        a1 = (*sol2)[0];
        a2 = (*sol2)[1];
        b1 = (*sol3)[0];
        b2 = (*sol3)[1];
      }
    }
    if (!sigma_found) {
      why = "transversal collineation is not semilinear over the nucleus";
      return std::nullopt;
    }
    if (!a1.is_zero()) {
      why = "foot normalization failed";
      return std::nullopt;
    }
    if (b1.is_zero()) {
      why = "linear set meets the quadric";
      return std::nullopt;
    }
    Fe fpar = F.div(a2, b1), gpar = F.div(b2, b1);
    if (fpar.is_zero() || gpar.is_zero()) {
      why = "normalized coefficients vanish";
      return std::nullopt;
    }
    if (knuth_polynomial_root(tw, fpar, gpar)) {
      why = "normalized coefficients admit a polynomial root";
      return std::nullopt;
    }
    // rescale: divide x2, x3 by beta = b1
    Mat D = Mat::identity(2);
    D.at(1, 1) = F.inv(b1);
    SemilinearMap omega = left_mul_map(D);
    work = apply_map(omega, work);
    total = omega.compose(total);

    KnuthParams build17{17, *sigma_found, fpar, gpar};
    SpreadSetSemifield K17 = knuth_spread_set(tw, build17);
    PointSet rebuilt = enumerate_points(matrix_linear_set(K17));
    if (enumerate_points(work) != rebuilt) {
      why = "round trip mismatch after normalization";
      return std::nullopt;
    }
    KnuthRecognition res;
    res.params = build17;
    if (!column_side) {
      // family 19 parameters via the transpose identity
      long long sinv = positive_mod(-static_cast<long long>(tw.h()) * build17.sigma_s,
                                    static_cast<long long>(tw.h()) * t);
      res.params = KnuthParams{19, build17.sigma_s, F.inv(F.frob(build17.f, sinv)),
                               F.div(build17.g, build17.f)};
      SpreadSetSemifield K19 = knuth_spread_set(tw, res.params);
      SemilinearMap T = transpose_map(sp);
      if (enumerate_points(apply_map(T, matrix_linear_set(K19))) != rebuilt) {
        why = "transpose-family parameters do not verify";
        return std::nullopt;
      }
    }
    res.ok = true;
    res.normalizer = total;
    return res;
  };

  bool saw_pair = false;
  std::string last_why;
  for (bool side : {true, false}) {
    auto reg = quadric_regulus(sp, side);
    for (size_t i = 0; i < reg.size(); ++i) {
      for (size_t j = 0; j < reg.size(); ++j) {
        if (i == j) continue;
        bool clean = true;
        for (const ProjSubspace* line : {&reg[i], &reg[j]}) {
          for (const ProjPoint& p : subspace_points(sp, *line))
            if (point_set_contains(pts, p)) {
              clean = false;
              break;
            }
          if (!clean) break;
        }
        if (!clean) continue;
        auto found = detect_with_hint(L, reg[i], reg[j]);
        if (!found) continue;
        saw_pair = true;
        std::string why;
        if (auto res = attempt(*found, side, why)) return *res;
        last_why = why;
      }
    }
  }
  out.reason = saw_pair ? "no quadric transversal pair normalizes: " + last_why
                        : "no transversal pair inside the quadric";
  return out;
}

struct GtfRecognition {
  enum class Status { gtf, not_gtf, degenerate };
  Status status = Status::not_gtf;
  std::string reason;
  GTFParams params;
  std::optional<HElement> normalizer;  // carries C onto the rebuilt standard set
};

namespace detail {

/// Fits B(y) = eta y^{q^m} against the (A, B) coefficient pairs of a spread
/// set contained in <I, I^shift_l>; returns (m, c = -eta) when a single
/// monomial matches every basis element.
inline std::optional<GTFParams> fit_gtf_monomial(const Tower& tw, const EndoSpace& E,
                                                 const std::vector<QPoly>& basis, int l) {
  const GaloisField& F = tw.F();
  int n = E.n, t = tw.t();
  for (int m = 1; m <= n * t - 1; ++m) {
    if (std::gcd((long long)t, (long long)m) != 1 || m == t * l) continue;
    std::optional<Fe> eta;
    bool ok = true;
    for (const QPoly& f : basis) {
      Fe A = f.c[0], B = f.c[l];
      for (int k = 0; k < n; ++k)
        if (k != 0 && k != l && !f.c[k].is_zero()) return std::nullopt;
      if (A.is_zero()) return std::nullopt;
      Fe ratio = F.div(B, F.frob(A, static_cast<long long>(tw.h()) * m));
      if (!eta)
        eta = ratio;
      else if (!(*eta == ratio)) {
        ok = false;
        break;
      }
    }
    if (ok && eta && !eta->is_zero()) {
      GTFParams p{l, m, F.neg(*eta)};
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Recognizes Generalized Twisted Fields from the relevant linear set lying
/// between two conjugate subspaces of the identity orbit: for t >= 2 the set
/// must be of pseudoregulus type with those subspaces as transversals (for
/// n = 2 they are the external polar pairs of the quadric); for t = 1 the
/// induced set on the spread line must be of pseudoregulus type with the
/// identity orbit points as transversal points.
inline GtfRecognition recognize_gtf(const SpreadSetSemifield& C) {
  GtfRecognition out;
  const Tower& tw = *C.E.tw;
  const GaloisField& F = tw.F();
  const EndoSpace& E = C.E;
  int n = E.n, t = tw.t();
  FqLinearSet L = spreadset_linear_set(C);
  ProjSpace P = E.proj();
  ProjSubspace Lspan = make_subspace(F, L.basis);

  if (t >= 2 && Lspan.vdim() == n) {
    // degenerate: the rank exceeds n but the span collapses to an
    // (n-1)-subspace, so the spread set is a field
    if (is_d_subspace(E, Lspan)) {
      out.status = GtfRecognition::Status::degenerate;
      out.reason = "the spread set is a field: its linear set is a subspace of the identity orbit";
      return out;
    }
    out.reason = "linear set spans only an (n-1)-subspace outside the identity orbit";
    return out;
  }

  if (t == 1) {
    // support must be a conjugate pair {j1, j2}
    std::vector<char> used(n, 0);
    for (const QPoly& f : C.basis)
      for (int k = 0; k < n; ++k)
        if (!f.c[k].is_zero()) used[k] = 1;
    std::vector<int> support;
    for (int k = 0; k < n; ++k)
      if (used[k]) support.push_back(k);
    if (support.size() == 1) {
      // the spread set fills one conjugate of the identity subspace: a field
      out.status = GtfRecognition::Status::degenerate;
      out.reason = "the spread set is a field: its linear set is one identity-orbit conjugate";
      return out;
    }
    if (support.size() != 2) {
      out.reason = "linear set is not contained in the span of two identity-orbit conjugates";
      return out;
    }
    int j1 = support[0], l = support[1] - support[0];
    std::vector<QPoly> shifted;
    for (const QPoly& f : C.basis) shifted.push_back(qp_upsilon1(E, f, -j1));
    if (std::gcd((long long)l, (long long)n) != 1) {
      out.reason = "conjugate offset is not coprime to n";
      return out;
    }
    // induced line set in the spread representation: coefficient pairs
    ProjSpace line_sp{&tw, E.top_d, 2};
    std::vector<Vec> rows;
    for (const QPoly& f : shifted) rows.push_back(Vec{f.c[0], f.c[l]});
    FqLinearSet induced = make_linear_set(line_sp, C.center_d, rows);
    auto det = detect_line_pr(induced);
    if (det.status != PrStatus::pr && det.status != PrStatus::t2_nonunique) {
      out.reason = "induced line set is not of pseudoregulus type";
      return out;
    }
    PointSet want = to_point_set({normalize_point(F, Vec{fe_one(), fe_zero()}),
                                  normalize_point(F, Vec{fe_zero(), fe_one()})});
    bool pair_ok = false;
    for (auto& pr : det.pairs)
      if (to_point_set({pr.first, pr.second}) == want) pair_ok = true;
    if (!pair_ok) {
      out.reason = "induced transversal points are not the identity-orbit conjugates";
      return out;
    }
    auto fit = detail::fit_gtf_monomial(tw, E, shifted, l);
    if (!fit) {
      out.reason = "coefficient map is not a single twisted monomial";
      return out;
    }
    SpreadSetSemifield rebuilt = gtf_spread_set(tw, *fit);
    // verify as point sets of the relevant linear sets
    SpreadSetSemifield shifted_set = make_spread_set(E, C.center_d, shifted);
    if (enumerate_points(spreadset_linear_set(shifted_set)) !=
        enumerate_points(spreadset_linear_set(rebuilt))) {
      out.reason = "round trip mismatch";
      return out;
    }
    QPoly frob_qp = qp_zero(E);
    frob_qp.c[static_cast<size_t>(positive_mod(-j1, n))] = fe_one();
    out.status = GtfRecognition::Status::gtf;
    out.params = *fit;
    out.normalizer = HElement{frob_qp, t_map(E, fe_one()), false};
    return out;
  }

  // t >= 2
  PointSet pts = enumerate_points(L);
  if (static_cast<long long>(pts.size()) != L.max_size()) {
    out.reason = "relevant linear set is not scattered";
    return out;
  }

  std::optional<std::pair<ProjSubspace, ProjSubspace>> pair;
  if (n == 2) {
    // transversals must be a polar pair of lines external to the quadric
    auto gram = [&]() {
      Mat G(4, 4);
      auto basis_poly = [&](int a) {
        Vec v(4, fe_zero());
        v[a] = fe_one();
        return qp_from_coords(E, v);
      };
      auto quad = [&](const QPoly& f) {
        return F.sub(F.rel_norm(f.c[0], E.base_d, E.top_d), F.rel_norm(f.c[1], E.base_d, E.top_d));
      };
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          QPoly fa = basis_poly(a), fb = basis_poly(b);
          G.at(a, b) = F.sub(F.sub(quad(qp_add(E, fa, fb)), quad(fa)), quad(fb));
        }
      return G;
    }();
    for_each_subspace(tw, P.coord_d, 4, 2, 1 << 24, [&](const Mat& rows) {
      if (pair) return;
      ProjSubspace X{row_basis(F, rows)};
      for (const ProjPoint& p : subspace_points(P, X)) {
        if (point_set_contains(pts, p)) return;
        if (in_omega(E, qp_from_coords(E, p.v))) return;
      }
      ProjSubspace Xp{row_basis(F, null_space(F, mat_mul(F, X.basis, gram)))};
      if (Xp.vdim() != 2 || subspaces_meet(F, X, Xp)) return;
      for (const ProjPoint& p : subspace_points(P, Xp))
        if (point_set_contains(pts, p)) return;
      if (detect_with_hint(L, X, Xp)) pair = std::make_pair(X, Xp);
    });
  } else if (t >= 3) {
    FqLinearSet inner = restrict_to_subspace(L, Lspan);
    auto det = detect_pseudoregulus(inner);
    if (det.status != PrStatus::pr) {
      out.reason = "relevant linear set is not of pseudoregulus type: " + det.reason;
      return out;
    }
    auto back = [&](const ProjSubspace& s) {
      std::vector<Vec> rows;
      for (int i = 0; i < s.basis.rows; ++i) rows.push_back(vec_mat(F, s.basis.row(i), Lspan.basis));
      return make_subspace(F, rows);
    };
    pair = std::make_pair(back(det.pseudoregulus->t1), back(det.pseudoregulus->t2));
  } else {
    throw BudgetError("twisted-field recognition for t = 2, n > 2 exceeds the desk-scale search");
  }
  if (!pair) {
    out.reason = "no transversal pair of external polar identity-orbit lines";
    return out;
  }

  // normalize the first transversal onto I; the second must land on a shift
  for (bool swap : {false, true}) {
    ProjSubspace X = swap ? pair->second : pair->first;
    ProjSubspace Xp = swap ? pair->first : pair->second;
    auto cert = is_d_subspace(E, X);
    if (!cert) continue;
    HElement hinv = h_inverse(E, cert->h);
    ProjSubspace img = h_act(E, hinv, Xp);
    int l_found = -1;
    for (int l = 1; l < n; ++l)
      if (img == shifted_identity_subspace(E, l)) l_found = l;
    if (l_found < 0) continue;
    if (std::gcd((long long)l_found, (long long)n) != 1) continue;
    std::vector<QPoly> moved;
    for (const QPoly& f : C.basis) moved.push_back(h_act(E, hinv, f));
    auto fit = detail::fit_gtf_monomial(tw, E, moved, l_found);
    if (!fit) continue;
    SpreadSetSemifield rebuilt = gtf_spread_set(tw, *fit);
    SpreadSetSemifield moved_set = make_spread_set(E, C.center_d, moved);
    if (enumerate_points(spreadset_linear_set(moved_set)) !=
        enumerate_points(spreadset_linear_set(rebuilt)))
      continue;
    out.status = GtfRecognition::Status::gtf;
    out.params = *fit;
    out.normalizer = hinv;
    return out;
  }
  out.reason = "transversal pair is not a conjugate pair in the identity orbit";
  return out;
}

}  // namespace linset

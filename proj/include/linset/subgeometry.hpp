#pragma once

/**
 * @file subgeometry.hpp
 * @brief Canonical subgeometries Sigma = Fix(Psi) of PG(tn-1, q^t),
 *        Desarguesian (t-1)-spreads with their director spaces, projections
 *        p_{Gamma,Lambda}, and the projection-side view of pseudoregulus-type
 *        sets.
 *
 * Psi is fixed to the coordinatewise q-power collineation with identity
 * matrix; its fixed points are exactly the points with a representative all
 * of whose coordinates lie in F_q, so Sigma is a copy of PG(tn-1, q).
 */

#include <set>
#include "pseudoregulus.hpp"

namespace linset {

struct CanonicalSubgeometry {
  ProjSpace star;  // PG(tn-1, q^t)
  int base_d = 1;  // F_q
  int t = 2;

  const GaloisField& F() const { return star.F(); }
  FrobeniusAut psi_aut() const { return FrobeniusAut{&F(), base_d}; }

  Vec psi_vec(const Vec& v) const { return vec_frob(F(), v, base_d); }
  ProjPoint psi(const ProjPoint& p) const { return normalize_point(F(), psi_vec(p.v)); }
  ProjSubspace psi(const ProjSubspace& s) const {
    std::vector<Vec> rows;
    for (int i = 0; i < s.basis.rows; ++i) rows.push_back(psi_vec(s.basis.row(i)));
    return make_subspace(F(), rows);
  }
  ProjSubspace psi_iter(ProjSubspace s, int times) const {
    for (int i = 0; i < times; ++i) s = psi(s);
    return s;
  }

  bool is_fixed(const ProjPoint& p) const {
    for (Fe x : p.v)
      if (!F().in_subfield(x, base_d)) return false;
    return true;
  }

  long long fixed_count() const {
    long long q = star.tw->sub(base_d).size, s = 0, pw = 1;
    for (int i = 0; i < star.r; ++i) {
      s += pw;
      pw *= q;
    }
    return s;
  }

  /// Enumerates the fixed points (the subgeometry Sigma), each with its
  /// all-F_q representative, in sorted order.
  template <typename Fn>
  void for_each_fixed_point(Fn&& fn) const {
    const auto& elems = star.tw->sub(base_d).elems;
    std::vector<size_t> idx(star.r, 0);
    std::vector<ProjPoint> pts;
    while (true) {
      Vec v(star.r);
      bool nz = false;
      for (int i = 0; i < star.r; ++i) {
        v[i] = elems[idx[i]];
        nz = nz || !v[i].is_zero();
      }
      if (nz) pts.push_back(normalize_point(F(), v));
      int pos = 0;
      while (pos < star.r && ++idx[pos] == elems.size()) idx[pos++] = 0;
      if (pos == star.r) break;
    }
    auto ps = to_point_set(std::move(pts));
    for (const auto& p : ps) fn(p);
  }

  PointSet fixed_points() const {
    PointSet out;
    for_each_fixed_point([&](const ProjPoint& p) { out.push_back(p); });
    return out;
  }

  /// The F_q-rational part of an F_{q^t}-subspace S: the subspace of Sigma
  /// cut out by S, returned as an F_q-row-basis (vectors with coordinates in
  /// F_q).  Solving S's linear equations coordinate-blown over F_q.
  Mat rational_part(const ProjSubspace& s) const {
    const GaloisField& Fd = F();
    Mat eqs = null_space(Fd, s.basis);  // rows e with x in S  <=>  x . e = 0
    const auto& dec = star.tw->dec(base_d, star.coord_d);
    int tt = dec.dim();
    Mat blown(eqs.rows * tt, star.r);
    for (int i = 0; i < eqs.rows; ++i)
      for (int c = 0; c < star.r; ++c) {
        auto co = dec.coords(Fd, eqs.at(i, c));
        for (int j = 0; j < tt; ++j) blown.at(i * tt + j, c) = co[j];
      }
    return row_basis(Fd, null_space(Fd, blown));
  }
};

inline CanonicalSubgeometry canonical_subgeometry(const Tower& tw) {
  if (tw.t() < 2) throw Error("canonical subgeometry needs an order-t collineation, t >= 2");
  ProjSpace star{&tw, tw.d_qt(), tw.t() * tw.n()};
  return CanonicalSubgeometry{star, tw.h(), tw.t()};
}

// ---------------------------------------------------------------------------
// Desarguesian spreads
// ---------------------------------------------------------------------------

struct SpreadElement {
  ProjSubspace ext;            // X*: the F_{q^t}-extension in Sigma*
  Mat rational;                // F_q-basis (t rows) of the Sigma-part X
  std::vector<ProjPoint> pts;  // the points of X, sorted

  friend bool operator<(const SpreadElement& a, const SpreadElement& b) { return a.ext < b.ext; }
  friend bool operator==(const SpreadElement& a, const SpreadElement& b) { return a.ext == b.ext; }
};

enum class SpreadOrigin { director_construction, field_reduction, recovered };

struct DesarguesianSpread {
  std::vector<SpreadElement> elems;        // sorted by extension
  std::vector<ProjSubspace> directors;     // the director spaces found
  SpreadOrigin origin = SpreadOrigin::director_construction;
};

namespace detail {

inline SpreadElement make_element(const CanonicalSubgeometry& G, ProjSubspace ext) {
  SpreadElement el;
  el.rational = G.rational_part(ext);
  if (el.rational.rows != G.t)
    throw Error("spread element does not meet the subgeometry in a PG(t-1, q)");
  std::vector<ProjPoint> pts;
  const auto& elems = G.star.tw->sub(G.base_d).elems;
  std::vector<size_t> idx(el.rational.rows, 0);
  while (true) {
    Vec v(G.star.r, fe_zero());
    bool nz = false;
    for (int i = 0; i < el.rational.rows; ++i) {
      if (elems[idx[i]].is_zero()) continue;
      nz = true;
      for (int c = 0; c < G.star.r; ++c)
        v[c] = G.F().add(v[c], G.F().mul(elems[idx[i]], el.rational.at(i, c)));
    }
    if (nz) pts.push_back(normalize_point(G.F(), v));
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  el.pts = to_point_set(std::move(pts));
  el.ext = std::move(ext);
  return el;
}

inline void validate_spread(const CanonicalSubgeometry& G, const DesarguesianSpread& D) {
  long long q = G.star.tw->sub(G.base_d).size;
  long long expected = 0;
  for (int i = 0; i * G.t < G.star.r; ++i) expected += ipow(q, G.t * i);
  if (static_cast<long long>(D.elems.size()) != expected)
    throw Error("spread has the wrong number of elements");
  long long covered = 0;
  std::set<ProjPoint> all;
  for (const auto& el : D.elems) {
    covered += static_cast<long long>(el.pts.size());
    all.insert(el.pts.begin(), el.pts.end());
  }
  if (covered != G.fixed_count() || static_cast<long long>(all.size()) != covered)
    throw Error("spread elements do not partition the subgeometry");
}

}  // namespace detail

/// A concrete director space that always satisfies the orbit-span condition:
/// rows r_j = sum_i a^i e_{i n + j} with a a generator of F_{q^t}, whose
/// Psi-orbit stacks into block Vandermonde matrices in the conjugates of a.
inline ProjSubspace default_director(const CanonicalSubgeometry& G) {
  const GaloisField& F = G.F();
  int n = G.star.r / G.t;
  Fe a = G.star.coord_field().gen;
  Mat rows(n, G.star.r);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < G.t; ++i) rows.at(j, i * n + j) = F.pow(a, i);
  return make_subspace(F, rows);
}

/// Psi-orbit span condition for a candidate director space.
inline bool director_span_condition(const CanonicalSubgeometry& G, const ProjSubspace& theta) {
  ProjSubspace acc = theta, cur = theta;
  for (int i = 1; i < G.t; ++i) {
    cur = G.psi(cur);
    acc = span(G.F(), acc, cur);
  }
  return acc.vdim() == G.star.r;
}

/// D(Theta): spread elements X*(P) = <P, P^Psi, ..., P^{Psi^{t-1}}> cut with
/// Sigma, for P running over Theta.  Validates the spread axioms and that the
/// director spaces found by the membership test are exactly the Psi-orbit of
/// Theta.
inline DesarguesianSpread spread_from_director(const CanonicalSubgeometry& G,
                                               const ProjSubspace& theta);

/// Director-space search: candidate (n-1)-spaces spanned by one point from
/// each of the first n extended elements, kept when they meet every extended
/// element and satisfy the orbit-span condition.  For n = 2 the second foot
/// is confined to <P, X*_2> cap X*_1, which prunes the pair scan to a few
/// candidates per starting point.
inline std::vector<ProjSubspace> find_directors(const CanonicalSubgeometry& G,
                                                const std::vector<SpreadElement>& elems) {
  const GaloisField& F = G.F();
  int n = G.star.r / G.t;
  std::set<ProjSubspace> found;
  auto keep_if_director = [&](ProjSubspace cand) {
    if (cand.vdim() != n || found.count(cand)) return;
    for (const auto& el : elems)
      if (!subspaces_meet(F, cand, el.ext)) return;
    if (director_span_condition(G, cand)) found.insert(std::move(cand));
  };
  if (n == 2) {
    ProjSubspace ext1{elems[1].ext}, ext2{elems[2].ext};
    for (const ProjPoint& P1 : subspace_points(G.star, elems[0].ext)) {
      ProjSubspace joined = span(F, make_subspace(F, {P1.v}), ext2);
      ProjSubspace feet2 = intersect(F, joined, ext1);
      for (const ProjPoint& P2 : subspace_points(G.star, feet2))
        keep_if_director(make_subspace(F, {P1.v, P2.v}));
    }
  } else {
    std::vector<std::vector<ProjPoint>> pls;
    for (int i = 0; i < n; ++i) pls.push_back(subspace_points(G.star, elems[i].ext));
    std::vector<size_t> idx(n, 0);
    while (true) {
      std::vector<Vec> gens;
      for (int i = 0; i < n; ++i) gens.push_back(pls[i][idx[i]].v);
      keep_if_director(make_subspace(F, gens));
      int pos = 0;
      while (pos < n && ++idx[pos] == pls[pos].size()) idx[pos++] = 0;
      if (pos == n) break;
    }
  }
  return std::vector<ProjSubspace>(found.begin(), found.end());
}

inline DesarguesianSpread spread_from_director(const CanonicalSubgeometry& G,
                                               const ProjSubspace& theta) {
  const GaloisField& F = G.F();
  int n = G.star.r / G.t;
  if (theta.vdim() != n) throw Error("director space must have projective dimension n-1");
  if (!director_span_condition(G, theta))
    throw Error("Psi-orbit of the candidate director does not span the space");
  std::set<ProjSubspace> exts;
  for (const ProjPoint& P : subspace_points(G.star, theta)) {
    std::vector<Vec> gens{P.v};
    Vec cur = P.v;
    for (int i = 1; i < G.t; ++i) {
      cur = G.psi_vec(cur);
      gens.push_back(cur);
    }
    exts.insert(make_subspace(F, gens));
  }
  DesarguesianSpread D;
  D.origin = SpreadOrigin::director_construction;
  for (auto& e : exts) D.elems.push_back(detail::make_element(G, e));
  std::sort(D.elems.begin(), D.elems.end());
  detail::validate_spread(G, D);
  D.directors = find_directors(G, D.elems);
  // the directors are exactly the Psi-orbit of theta
  std::set<ProjSubspace> orbit;
  ProjSubspace cur = theta;
  for (int i = 0; i < G.t; ++i) {
    orbit.insert(cur);
    cur = G.psi(cur);
  }
  if (std::set<ProjSubspace>(D.directors.begin(), D.directors.end()) != orbit)
    throw Error("director spaces are not the Psi-orbit of the given one");
  return D;
}

/// The field-reduction spread: V(n, q^t) read as V(nt, q).  Element of a
/// point <w>: the F_q-span of the scalar multiples of w, mapped into Sigma's
/// all-F_q coordinates.  Independent of the director construction; used as an
/// oracle for Desarguesian-ness.
inline DesarguesianSpread field_reduction_spread(const CanonicalSubgeometry& G) {
  const GaloisField& F = G.F();
  const Tower& tw = *G.star.tw;
  int n = G.star.r / G.t;
  const auto& dec = tw.dec(G.base_d, G.star.coord_d);
  // points of PG(n-1, q^t)
  ProjSpace small{&tw, G.star.coord_d, n};
  ProjSubspace whole{Mat::identity(n)};
  DesarguesianSpread D;
  D.origin = SpreadOrigin::field_reduction;
  for (const ProjPoint& w : subspace_points(small, whole)) {
    // F_q-basis of { lambda w }: rows (b * w) blown to F_q coordinates of Sigma
    Mat rational(G.t, G.star.r);
    for (int j = 0; j < G.t; ++j) {
      Vec scaled = vec_scale(F, dec.basis()[j], w.v);
      Vec big;
      for (Fe x : scaled) {
        auto co = dec.coords(F, x);
        big.insert(big.end(), co.begin(), co.end());
      }
      rational.set_row(j, big);
    }
    ProjSubspace ext = make_subspace(F, rational);
    SpreadElement el = detail::make_element(G, ext);
    D.elems.push_back(std::move(el));
  }
  std::sort(D.elems.begin(), D.elems.end());
  detail::validate_spread(G, D);
  D.directors = find_directors(G, D.elems);
  if (D.directors.empty()) throw Error("field-reduction spread admits no director space");
  return D;
}

// ---------------------------------------------------------------------------
// Projection
// ---------------------------------------------------------------------------

struct ProjectionSpec {
  ProjSubspace center;  // Gamma, disjoint from Sigma and from the axis; may be empty
  ProjSubspace axis;    // Lambda
};

inline void validate_projection(const CanonicalSubgeometry& G, const ProjectionSpec& ps) {
  const GaloisField& F = G.F();
  if (ps.center.vdim() + ps.axis.vdim() != G.star.r)
    throw Error("projection: center and axis dimensions must be complementary");
  if (!ps.center.empty()) {
    if (subspaces_meet(F, ps.center, ps.axis)) throw Error("projection: center meets the axis");
    if (G.rational_part(ps.center).rows != 0)
      throw Error("projection: center meets the subgeometry");
  }
}

/// A projected linear set, carried in the axis coordinates together with the
/// data needed to move between Lambda-coordinates and Sigma*-coordinates.
struct ProjectedSet {
  FqLinearSet set;      // in PG(axis.vdim()-1, q^t), coordinates = axis basis
  ProjSubspace center;  // Gamma
  Mat axis_basis;       // rows: the chosen basis of Lambda in Sigma* coordinates

  Vec to_star(const GaloisField& F, const Vec& lambda_coords) const {
    return vec_mat(F, lambda_coords, axis_basis);
  }
  ProjSubspace to_star(const GaloisField& F, const ProjSubspace& s) const {
    std::vector<Vec> rows;
    for (int i = 0; i < s.basis.rows; ++i) rows.push_back(to_star(F, s.basis.row(i)));
    return make_subspace(F, rows);
  }
};

/// p_{Gamma,Lambda}: project the subgeometry's F_q-frame along the center
/// into the axis; the images of the tn frame vectors form the F_q-basis of
/// the resulting rank-tn linear set.
inline ProjectedSet project(const CanonicalSubgeometry& G, const ProjectionSpec& ps,
                            std::optional<Mat> axis_basis = std::nullopt) {
  validate_projection(G, ps);
  const GaloisField& F = G.F();
  Mat basis = axis_basis ? *axis_basis : ps.axis.basis;
  if (row_basis(F, basis).rows != ps.axis.vdim())
    throw Error("projection: axis basis rows are dependent");
  // stacked [axis; center] is a basis of V; coordinates of v split as
  // (axis part | center part), and the projection keeps the axis part.
  Mat stacked(G.star.r, G.star.r);
  for (int i = 0; i < basis.rows; ++i) stacked.set_row(i, basis.row(i));
  for (int i = 0; i < ps.center.vdim(); ++i)
    stacked.set_row(basis.rows + i, ps.center.basis.row(i));
  Mat inv = mat_inverse(F, stacked);  // throws if center+axis don't span
  // frame vector e_c has stacked-coordinates row c of the inverse; the
  // projection keeps the axis block
  std::vector<Vec> rows;
  for (int c = 0; c < G.star.r; ++c) {
    Vec full = inv.row(c);
    rows.push_back(Vec(full.begin(), full.begin() + basis.rows));
  }
  ProjSpace axis_sp{G.star.tw, G.star.coord_d, basis.rows};
  ProjectedSet out{make_linear_set(axis_sp, G.base_d, rows), ps.center, basis};
  if (out.set.rank() != G.star.r) throw Error("projection: rank dropped (center meets Sigma)");
  return out;
}

struct ProjectionConstruction {
  ProjectedSet projected;
  bool pr_type = false;           // gcd(i2-i1, t) == 1
  int linearity = 1;              // s = gcd(i2-i1, t): the set is F_{q^s}-linear
  ProjSubspace t1_axis, t2_axis;  // Theta^{Psi^{i1}}, Theta^{Psi^{i2}} in axis coords
  ProjSubspace theta;             // the director used
  int i1 = 0, i2 = 1;
};

/// Projects Sigma from Gamma = <Theta^{Psi^i} : i != i1, i2> to
/// Lambda = <Theta^{Psi^{i1}}, Theta^{Psi^{i2}}>, with the axis coordinatized
/// by the two director conjugates (first n coordinates on the i1 side).
inline ProjectionConstruction construct_by_projection(const CanonicalSubgeometry& G,
                                                      const ProjSubspace& theta, int i1, int i2) {
  if (!(0 <= i1 && i1 < i2 && i2 < G.t)) throw Error("construct_by_projection: need 0 <= i1 < i2 < t");
  const GaloisField& F = G.F();
  int n = G.star.r / G.t;
  std::vector<ProjSubspace> conj(G.t);
  conj[0] = theta;
  for (int i = 1; i < G.t; ++i) conj[i] = G.psi(conj[i - 1]);

  std::vector<Vec> center_rows;
  for (int i = 0; i < G.t; ++i) {
    if (i == i1 || i == i2) continue;
    for (auto& r : conj[i].basis.to_rows()) center_rows.push_back(r);
  }
  ProjSubspace gamma = center_rows.empty() ? ProjSubspace{Mat(0, G.star.r)}
                                           : make_subspace(F, center_rows);
  Mat axis_basis(2 * n, G.star.r);
  for (int i = 0; i < n; ++i) axis_basis.set_row(i, conj[i1].basis.row(i));
  for (int i = 0; i < n; ++i) axis_basis.set_row(n + i, conj[i2].basis.row(i));
  ProjSubspace lambda = make_subspace(F, axis_basis);

  ProjectionConstruction out;
  out.projected = project(G, ProjectionSpec{gamma, lambda}, axis_basis);
  out.theta = theta;
  out.i1 = i1;
  out.i2 = i2;
  int s = static_cast<int>(std::gcd(static_cast<long long>(i2 - i1), static_cast<long long>(G.t)));
  out.linearity = s;
  out.pr_type = s == 1;
  Mat t1(n, 2 * n), t2(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    t1.at(i, i) = fe_one();
    t2.at(i, n + i) = fe_one();
  }
  out.t1_axis = ProjSubspace{std::move(t1)};
  out.t2_axis = ProjSubspace{std::move(t2)};
  if (s > 1) {
    // F_{q^s}-linearity witness: the point count is 1 mod q^s
    auto pts = enumerate_points(out.projected.set);
    long long qs = ipow(G.star.tw->sub(G.base_d).size, s);
    if ((static_cast<long long>(pts.size()) - 1) % qs != 0)
      throw Error("projection with gcd s > 1 is not F_{q^s}-linear by count");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spread recovery from a projected pseudoregulus
// ---------------------------------------------------------------------------

struct SpreadRecovery {
  DesarguesianSpread spread;   // D_L = { <Gamma, s> cap Sigma : s in P }
  ProjSubspace theta_bar;      // director with Gamma = <theta_bar^{tau^j} : j <= t-3>
  int m = 1;                   // tau = Psi^m, gcd(m, t) = 1
  std::vector<std::pair<ProjSubspace, int>> all_decompositions;  // every (director, m) fit
};

/// Rebuilds the spread induced by the line family through the center and
/// certifies it Desarguesian via the director-space membership test; then
/// fits the center as the span of t-2 consecutive tau-conjugates of one
/// director.
inline SpreadRecovery recover_spread(const CanonicalSubgeometry& G, const ProjectedSet& proj,
                                     const Pseudoregulus& P) {
  const GaloisField& F = G.F();
  SpreadRecovery out;
  out.spread.origin = SpreadOrigin::recovered;
  std::set<ProjSubspace> exts;
  for (const auto& line : P.lines) {
    ProjSubspace star_line = proj.to_star(F, line);
    ProjSubspace joined = proj.center.empty() ? star_line : span(F, proj.center, star_line);
    // X* is the extension of the rational part of <Gamma, s>
    Mat rational = G.rational_part(joined);
    if (rational.rows != G.t) throw Error("recover_spread: a line does not induce a PG(t-1, q)");
    exts.insert(make_subspace(F, rational));
  }
  for (auto& e : exts) {
    // extended elements must be Psi-stable
    if (!(G.psi(e) == e)) throw Error("recover_spread: extended element is not Psi-stable");
    out.spread.elems.push_back(detail::make_element(G, e));
  }
  std::sort(out.spread.elems.begin(), out.spread.elems.end());
  detail::validate_spread(G, out.spread);
  out.spread.directors = find_directors(G, out.spread.elems);
  if (out.spread.directors.empty())
    throw Error("recover_spread: no director space (spread not Desarguesian)");

  for (const auto& H : out.spread.directors) {
    for (int m = 1; m < G.t; ++m) {
      if (std::gcd(static_cast<long long>(m), static_cast<long long>(G.t)) != 1) continue;
      if (proj.center.empty()) {  // t = 2: the center is the empty span
        out.all_decompositions.emplace_back(H, m);
        continue;
      }
      ProjSubspace acc = H, cur = H;
      for (int j = 1; j <= G.t - 3; ++j) {
        cur = G.psi_iter(cur, m);
        acc = span(F, acc, cur);
      }
      if (acc == proj.center) out.all_decompositions.emplace_back(H, m);
    }
  }
  if (out.all_decompositions.empty())
    throw Error("recover_spread: center is not a span of consecutive director conjugates");
  out.theta_bar = out.all_decompositions.front().first;
  out.m = out.all_decompositions.front().second;
  return out;
}

}  // namespace linset

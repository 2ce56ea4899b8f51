#pragma once

/**
 * @file pseudoregulus.hpp
 * @brief Construction, detection, invariants and equivalences of scattered
 *        linear sets of pseudoregulus type, in PG(2n-1, q^t) and on the line
 *        PG(1, q^t).
 *
 * The defining structure: a scattered F_q-linear set L of rank tn together
 * with m = (q^nt - 1)/(q^t - 1) pairwise disjoint lines of weight t and
 * exactly two (n-1)-dimensional transversal spaces meeting every line and
 * missing L.  For t >= 3 the line family and the transversals are unique;
 * for t = 2 the set is a Baer subgeometry and every Desarguesian line spread
 * of it produces a valid family, so detection reports an explicit
 * non-uniqueness flag together with one constructed witness.
 */

#include <map>
#include <set>
#include <unordered_map>

#include "linearset.hpp"

namespace linset {

inline constexpr long long kDefaultLineBudget = 1LL << 29;
inline constexpr long long kDefaultPairBudget = 1LL << 25;

// ---------------------------------------------------------------------------
// Specs and construction
// ---------------------------------------------------------------------------

/// V = U_1 + U_2 with an invertible sigma-semilinear f : U_1 -> U_2 and a
/// scalar rho != 0.  sigma = x -> x^{q^sigma_i} must have gcd(sigma_i, t) = 1,
/// so that its fixed field is exactly F_q.
struct PseudoregulusSpec {
  ProjSpace sp;   // PG(2n-1, q^t)
  int base_d = 1; // F_q
  Mat u1basis;    // n rows
  Mat u2basis;    // n rows
  Mat fmat;       // n x n over F_{q^t}: f(u) has U_2-coords fmat . x^sigma
  int sigma_i = 1;
  Fe rho = fe_one();

  int n() const { return u1basis.rows; }
  int t() const { return sp.coord_d / base_d; }
  FrobeniusAut sigma() const { return FrobeniusAut{&sp.F(), static_cast<int>(positive_mod(static_cast<long long>(base_d) * sigma_i, sp.F().e()))}; }
};

inline void validate_spec(const PseudoregulusSpec& s) {
  const GaloisField& F = s.sp.F();
  if (s.sp.r != 2 * s.n() || s.u2basis.rows != s.n())
    throw Error("pseudoregulus spec: U_1, U_2 must have dimension n = r/2");
  if (s.n() < 2) throw Error("pseudoregulus spec: n >= 2 required; use the line construction for n = 1");
  Mat stacked(2 * s.n(), s.sp.r);
  for (int i = 0; i < s.n(); ++i) stacked.set_row(i, s.u1basis.row(i));
  for (int i = 0; i < s.n(); ++i) stacked.set_row(s.n() + i, s.u2basis.row(i));
  if (mat_rank(F, stacked) != 2 * s.n()) throw Error("pseudoregulus spec: V is not U_1 + U_2");
  mat_inverse(F, s.fmat);  // throws if singular
  if (std::gcd(static_cast<long long>(s.sigma_i), static_cast<long long>(s.t())) != 1)
    throw Error("pseudoregulus spec: companion automorphism must fix exactly F_q");
  if (s.rho.is_zero()) throw Error("pseudoregulus spec: rho must be nonzero");
}

/// The standard decomposition: U_1 = <e_0..e_{n-1}>, U_2 = <e_n..e_{2n-1}>,
/// f given by an n x n block (identity by default).
inline PseudoregulusSpec standard_pr_spec(const ProjSpace& sp, int base_d, int sigma_i, Fe rho,
                                          Mat fmat = Mat()) {
  int n = sp.r / 2;
  Mat u1(n, sp.r), u2(n, sp.r);
  for (int i = 0; i < n; ++i) {
    u1.at(i, i) = fe_one();
    u2.at(i, n + i) = fe_one();
  }
  if (fmat.rows == 0) fmat = Mat::identity(n);
  PseudoregulusSpec s{sp, base_d, std::move(u1), std::move(u2), std::move(fmat), sigma_i, rho};
  validate_spec(s);
  return s;
}

/// f applied to a vector of U_1 (standard coordinates in, standard out).
inline Vec apply_f(const PseudoregulusSpec& s, const Vec& u) {
  const GaloisField& F = s.sp.F();
  auto x = coords_in_rows(F, s.u1basis, u);
  if (!x) throw Error("apply_f: vector not in U_1");
  Vec xs = vec_frob(F, *x, s.sigma().j);
  Vec y = mat_vec(F, s.fmat, xs);
  Vec out(s.sp.r, fe_zero());
  for (int j = 0; j < s.n(); ++j)
    if (!y[j].is_zero()) out = vec_add(F, out, vec_scale(F, y[j], s.u2basis.row(j)));
  return out;
}

/// L_{rho,f} = { <u + rho f(u)> : u in U_1 \ {0} }, of rank tn.
inline FqLinearSet build_pr_linear_set(const PseudoregulusSpec& s) {
  validate_spec(s);
  const GaloisField& F = s.sp.F();
  const auto& dec = s.sp.tw->dec(s.base_d, s.sp.coord_d);
  std::vector<Vec> rows;
  rows.reserve(static_cast<size_t>(s.n()) * s.t());
  for (int i = 0; i < s.n(); ++i) {
    for (int j = 0; j < s.t(); ++j) {
      Vec u = vec_scale(F, dec.basis()[j], s.u1basis.row(i));
      Vec fu = apply_f(s, u);
      rows.push_back(vec_add(F, u, vec_scale(F, s.rho, fu)));
    }
  }
  return make_linear_set(s.sp, s.base_d, rows);
}

struct Pseudoregulus {
  std::vector<ProjSubspace> lines;  // m pairwise disjoint lines, sorted
  ProjSubspace t1, t2;              // the transversal (n-1)-spaces

  long long m() const { return static_cast<long long>(lines.size()); }
};

/// The associated line family { <P, P^{Phi_f}> : P in T_1 }.
inline Pseudoregulus pseudoregulus_of_spec(const PseudoregulusSpec& s) {
  const GaloisField& F = s.sp.F();
  ProjSubspace t1{row_basis(F, s.u1basis)}, t2{row_basis(F, s.u2basis)};
  Pseudoregulus P;
  P.t1 = t1;
  P.t2 = t2;
  for (const ProjPoint& pt : subspace_points(s.sp, t1))
    P.lines.push_back(make_subspace(F, {pt.v, apply_f(s, pt.v)}));
  std::sort(P.lines.begin(), P.lines.end());
  return P;
}

/// Trace of L_{rho,f} on the line through <u> and <f(u)>:
/// { <lambda u + rho lambda^sigma f(u)> : lambda != 0 }.
inline PointSet line_trace(const PseudoregulusSpec& s, const Vec& u) {
  const GaloisField& F = s.sp.F();
  Vec fu = apply_f(s, u);
  std::vector<ProjPoint> pts;
  for (Fe lam : s.sp.coord_field().units) {
    Vec v = vec_add(F, vec_scale(F, lam, u),
                    vec_scale(F, F.mul(s.rho, F.frob(lam, s.sigma().j)), fu));
    pts.push_back(normalize_point(F, v));
  }
  return to_point_set(std::move(pts));
}

// ---------------------------------------------------------------------------
// Weight-t line search
// ---------------------------------------------------------------------------

namespace detail {

/// All weight-t lines through the point P = <v> of a scattered L, found by
/// projecting from P: lines through P of weight t correspond to points of
/// weight t-1 of the quotient linear set, which are read off multiplicities
/// in a single pass over the q^(k-1) quotient combinations.
inline std::vector<ProjSubspace> weight_t_lines_through(const FqLinearSet& L, const Vec& v,
                                                        int target_t, long long& budget) {
  const GaloisField& F = L.sp.F();
  int r = L.sp.r;
  int c0 = 0;
  while (v[c0].is_zero()) ++c0;
  Fe vinv = F.inv(v[c0]);
  auto project = [&](const Vec& x) {
    Vec y = vec_sub(F, x, vec_scale(F, F.mul(x[c0], vinv), v));
    Vec out;
    out.reserve(r - 1);
    for (int c = 0; c < r; ++c)
      if (c != c0) out.push_back(y[c]);
    return out;
  };
  // F_q-basis of the quotient image of U
  std::vector<Vec> imgs;
  for (int i = 0; i < L.rank(); ++i) imgs.push_back(project(L.basis.row(i)));
  ProjSpace qsp{L.sp.tw, L.sp.coord_d, r - 1};
  Mat blown = blow_up_rows(qsp, L.base_d, Mat::from_rows(imgs));
  Mat reduced = row_basis(F, blown);
  if (reduced.rows != L.rank() - 1)
    throw Error("weight-t line search requires a scattered set (weight-1 points)");
  std::vector<Vec> qbasis;
  for (int i = 0; i < reduced.rows; ++i)
    qbasis.push_back(compose_from_blowup(qsp, L.base_d, reduced.row(i)));
  FqLinearSet quo = make_linear_set(qsp, L.base_d, qbasis);

  long long cost = 1;
  for (int i = 0; i < quo.rank(); ++i) cost *= L.base_q();
  budget -= cost;
  if (budget < 0) throw BudgetError("weight-t line search over budget");

  long long want = 1;
  for (int i = 0; i < target_t - 1; ++i) want *= L.base_q();
  want -= 1;  // q^(t-1) - 1 vectors over a weight-(t-1) point

  std::unordered_map<ProjPoint, long long, ProjPointHash> mult;
  for_each_combination(quo, cost, [&](const Vec& w) { ++mult[normalize_point(F, w)]; });

  std::vector<ProjSubspace> out;
  for (const auto& [qpt, count] : mult) {
    if (count != want) continue;
    Vec lift(r, fe_zero());
    int k = 0;
    for (int c = 0; c < r; ++c)
      if (c != c0) lift[c] = qpt.v[k++];
    out.push_back(make_subspace(F, {v, lift}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Every line of the host space of weight exactly t in L.  For t >= 3 these
/// are pairwise disjoint, so points already covered by a found line are
/// skipped; for t = 2 every point gets its own pass.
inline std::vector<ProjSubspace> weight_t_lines(const FqLinearSet& L,
                                                long long budget = kDefaultLineBudget) {
  const GaloisField& F = L.sp.F();
  int t = L.sp.coord_d / L.base_d;
  PointSet pts = enumerate_points(L);
  std::unordered_set<ProjPoint, ProjPointHash> covered;
  std::set<ProjSubspace> lines;
  for (const ProjPoint& P : pts) {
    if (t >= 3 && covered.count(P)) continue;
    for (auto& line : detail::weight_t_lines_through(L, P.v, t, budget)) {
      if (t >= 3)
        for (const ProjPoint& lp : subspace_points(L.sp, line))
          if (point_set_contains(pts, lp)) covered.insert(lp);
      lines.insert(line);
    }
  }
  std::vector<ProjSubspace> out(lines.begin(), lines.end());
  if (t >= 3) {
    long long cap = (ipow(L.base_q(), L.rank()) - 1) / (ipow(L.base_q(), t) - 1);
    if (static_cast<long long>(out.size()) > cap)
      throw Error("weight-t line count exceeds the disjointness bound");
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = i + 1; j < out.size(); ++j)
        if (subspaces_meet(F, out[i], out[j]))
          throw Error("weight-t lines are not pairwise disjoint");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

enum class PrStatus { pr, not_pr, t2_nonunique };

struct DetectPrResult {
  PrStatus status = PrStatus::not_pr;
  std::optional<Pseudoregulus> pseudoregulus;
  std::string reason;
};

/// Checks every clause of the defining property for a given line family and
/// transversal pair.  Returns an empty string on success, else the failed
/// clause.
inline std::string check_pseudoregulus_axioms(const FqLinearSet& L, const Pseudoregulus& P) {
  const GaloisField& F = L.sp.F();
  int t = L.sp.coord_d / L.base_d;
  int n = L.sp.r / 2;
  long long m_expected = (ipow(L.base_q(), L.rank()) - 1) / (ipow(L.base_q(), t) - 1);
  if (P.m() != m_expected) return "line count is not (q^nt - 1)/(q^t - 1)";
  for (const auto& s : P.lines)
    if (weight(L, s) != t) return "a line does not have weight t";
  for (size_t i = 0; i < P.lines.size(); ++i)
    for (size_t j = i + 1; j < P.lines.size(); ++j)
      if (subspaces_meet(F, P.lines[i], P.lines[j])) return "lines are not pairwise disjoint";
  if (P.t1.pdim() != n - 1 || P.t2.pdim() != n - 1) return "transversal spaces have wrong dimension";
  if (subspaces_meet(F, P.t1, P.t2)) return "transversal spaces are not disjoint";
  PointSet pts = enumerate_points(L);
  for (const ProjSubspace* T : {&P.t1, &P.t2}) {
    for (const ProjPoint& tp : subspace_points(L.sp, *T))
      if (point_set_contains(pts, tp)) return "a transversal space meets L";
    for (const auto& s : P.lines)
      if (!subspaces_meet(F, *T, s)) return "a transversal space misses a line";
  }
  return "";
}

/// Given a disjoint pair of candidate (n-1)-spaces missing L, tries to build
/// the line family they would be transversal to: each point of T_1 must see a
/// unique weight-t joining line into T_2.  Used where the family is not
/// unique (t = 2) or is prescribed by an outer structure.
inline std::optional<Pseudoregulus> detect_with_hint(const FqLinearSet& L, const ProjSubspace& T1,
                                                     const ProjSubspace& T2) {
  const GaloisField& F = L.sp.F();
  int t = L.sp.coord_d / L.base_d;
  if (subspaces_meet(F, T1, T2)) return std::nullopt;
  Pseudoregulus P;
  P.t1 = T1;
  P.t2 = T2;
  auto t2pts = subspace_points(L.sp, T2);
  for (const ProjPoint& A : subspace_points(L.sp, T1)) {
    std::optional<ProjSubspace> found;
    for (const ProjPoint& B : t2pts) {
      ProjSubspace line = make_subspace(F, {A.v, B.v});
      if (weight(L, line) != t) continue;
      if (found) return std::nullopt;  // ambiguous partner
      found = line;
    }
    if (!found) return std::nullopt;
    P.lines.push_back(*found);
  }
  std::sort(P.lines.begin(), P.lines.end());
  P.lines.erase(std::unique(P.lines.begin(), P.lines.end()), P.lines.end());
  if (!check_pseudoregulus_axioms(L, P).empty()) return std::nullopt;
  return P;
}

namespace detail {

/// Transversal-space search over a found line family: candidate joining lines
/// of point pairs on two family lines, filtered against the family members in
/// their span, grouped per side and spanned.
inline std::optional<std::pair<ProjSubspace, ProjSubspace>> find_transversals(
    const FqLinearSet& L, const std::vector<ProjSubspace>& lines) {
  const GaloisField& F = L.sp.F();
  int n = L.sp.r / 2;
  const ProjSubspace& s1 = lines[0];
  auto s1pts = subspace_points(L.sp, s1);
  // survivors grouped by their point on s1; once exactly two groups span
  // (n-1)-spaces the scan can stop, since the verification that follows is
  // what decides
  std::map<ProjPoint, std::vector<ProjSubspace>> groups;
  auto spans_ready = [&] {
    if (groups.size() != 2) return false;
    for (auto& [foot, cands] : groups) {
      std::vector<Vec> rows;
      for (auto& c : cands)
        for (auto& r : c.basis.to_rows()) rows.push_back(r);
      if (make_subspace(F, rows).vdim() != n) return false;
    }
    return true;
  };
  size_t upper = n == 2 ? 2 : lines.size();
  for (size_t j = 1; j < upper; ++j) {
    if (n > 2 && j > static_cast<size_t>(n) && spans_ready()) break;
    ProjSubspace S = span(F, s1, lines[j]);
    std::vector<const ProjSubspace*> members;
    for (const auto& s : lines)
      if (subspace_contains(F, S, s)) members.push_back(&s);
    for (const ProjPoint& A : s1pts) {
      for (const ProjPoint& B : subspace_points(L.sp, lines[j])) {
        ProjSubspace cand = make_subspace(F, {A.v, B.v});
        bool ok = true;
        for (const ProjSubspace* s : members)
          if (!subspaces_meet(F, cand, *s)) {
            ok = false;
            break;
          }
        if (ok) groups[A].push_back(cand);
      }
    }
  }
  if (groups.size() != 2) return std::nullopt;
  std::vector<ProjSubspace> spans;
  for (auto& [foot, cands] : groups) {
    std::vector<Vec> rows;
    for (auto& c : cands)
      for (auto& r : c.basis.to_rows()) rows.push_back(r);
    spans.push_back(make_subspace(F, rows));
  }
  if (spans[0] < spans[1]) return std::make_pair(spans[0], spans[1]);
  return std::make_pair(spans[1], spans[0]);
}

}  // namespace detail

/// Baer-subgeometry witness for t = 2: puts an F_{q^2}-structure J on U,
/// takes the induced Desarguesian line spread of L, and reads the transversal
/// spaces off the eigenspaces of the extension of J to V.
inline Pseudoregulus t2_witness(const FqLinearSet& L) {
  const GaloisField& F = L.sp.F();
  int k = L.rank();
  const auto& dec = L.sp.tw->dec(L.base_d, L.sp.coord_d);
  Fe omega = L.sp.coord_field().gen;
  auto mp = dec.coords(F, F.mul(omega, omega));  // omega^2 = delta + gamma*omega
  Fe delta = mp[0], gamma = mp[1];

  Mat Ju(k, k);
  for (int i = 0; i + 1 < k; i += 2) {
    Ju.at(i, i + 1) = fe_one();
    Ju.at(i + 1, i) = delta;
    Ju.at(i + 1, i + 1) = gamma;
  }
  Mat P = L.basis;  // rows form an F_{q^2}-basis of V as well
  Mat Pinv = mat_inverse(F, P);
  Mat Jhat = mat_mul(F, mat_mul(F, Pinv, Ju), P);

  auto eigenspace = [&](Fe ev) {
    Mat m = Jhat;
    for (int i = 0; i < k; ++i) m.at(i, i) = F.sub(m.at(i, i), ev);
    // left kernel: y with y . Jhat = ev . y
    Mat mt(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) mt.at(j, i) = m.at(i, j);
    return ProjSubspace{row_basis(F, null_space(F, mt))};
  };
  Pseudoregulus out;
  out.t1 = eigenspace(omega);
  out.t2 = eigenspace(F.frob(omega, L.base_d));

  const auto& coeffs = L.sp.tw->sub(L.base_d).elems;
  std::set<ProjSubspace> lines;
  std::vector<size_t> idx(k, 0);
  while (true) {
    Vec xi(k, fe_zero());
    bool nz = false;
    for (int i = 0; i < k; ++i) {
      xi[i] = coeffs[idx[i]];
      nz = nz || !xi[i].is_zero();
    }
    if (nz) {
      Vec v = vec_mat(F, xi, P);
      Vec jv = vec_mat(F, vec_mat(F, xi, Ju), P);
      lines.insert(make_subspace(F, {v, jv}));
    }
    int pos = 0;
    while (pos < k && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  out.lines.assign(lines.begin(), lines.end());
  std::string fail = check_pseudoregulus_axioms(L, out);
  if (!fail.empty()) throw Error("Baer witness construction failed: " + fail);
  return out;
}

/// Full detection.  Preconditions (scattered, rank tn, r = 2n) are enforced;
/// violations are errors, not a not_pr verdict.
inline DetectPrResult detect_pseudoregulus(const FqLinearSet& L,
                                           long long line_budget = kDefaultLineBudget) {
  if (L.sp.r % 2 != 0 || L.sp.r < 4) throw Error("detect: host space must be PG(2n-1, q^t), n >= 2");
  int n = L.sp.r / 2;
  int t = L.sp.coord_d / L.base_d;
  if (L.rank() != t * n) throw Error("detect: rank tn required");
  PointSet pts = enumerate_points(L);
  if (static_cast<long long>(pts.size()) != L.max_size()) throw Error("detect: input is not scattered");

  if (t == 2) return {PrStatus::t2_nonunique, t2_witness(L), "line family is not unique for t = 2"};

  long long m_expected = (ipow(L.base_q(), L.rank()) - 1) / (ipow(L.base_q(), t) - 1);
  std::unordered_set<ProjPoint, ProjPointHash> covered;
  std::vector<ProjSubspace> lines;
  for (const ProjPoint& P : pts) {
    if (covered.count(P)) continue;
    auto through = detail::weight_t_lines_through(L, P.v, t, line_budget);
    if (through.empty())
      return {PrStatus::not_pr, std::nullopt, "a point of L lies on no line of weight t"};
    if (through.size() > 1)
      return {PrStatus::not_pr, std::nullopt, "a point of L lies on several lines of weight t"};
    lines.push_back(through[0]);
    for (const ProjPoint& lp : subspace_points(L.sp, through[0]))
      if (point_set_contains(pts, lp)) covered.insert(lp);
    if (static_cast<long long>(lines.size()) > m_expected)
      return {PrStatus::not_pr, std::nullopt, "more than (q^nt - 1)/(q^t - 1) weight-t lines"};
  }
  if (static_cast<long long>(lines.size()) != m_expected)
    return {PrStatus::not_pr, std::nullopt, "weight-t lines do not cover L with the right count"};
  std::sort(lines.begin(), lines.end());

  auto tv = detail::find_transversals(L, lines);
  if (!tv)
    return {PrStatus::not_pr, std::nullopt, "no transversal pair spans from the joining-line filter"};
  Pseudoregulus P{lines, tv->first, tv->second};
  std::string fail = check_pseudoregulus_axioms(L, P);
  if (!fail.empty()) return {PrStatus::not_pr, std::nullopt, fail};
  return {PrStatus::pr, P, ""};
}

// ---------------------------------------------------------------------------
// The recovered automorphism class and constructive equivalence
// ---------------------------------------------------------------------------

struct SigmaRecovery {
  int raw_i = 0;   // exponent read in the T_1 -> T_2 direction
  int cls = 0;     // canonical class representative min(i, t-i)
  Mat scaled_feet; // n rows: f(b_i) with frame-consistent scalars
};

/// Reconstructs the collineation T_1 -> T_2 from the line family (point P
/// maps to its partner foot) and solves for the companion automorphism
/// exponent in a frame adapted to n+1 lines.
inline SigmaRecovery recover_sigma(const FqLinearSet& L, const Pseudoregulus& P) {
  const GaloisField& F = L.sp.F();
  int n = L.sp.r / 2;
  int t = L.sp.coord_d / L.base_d;
  if (n < 2) throw Error("recover_sigma: n >= 2 required");

  std::unordered_map<ProjPoint, ProjPoint, ProjPointHash> phi;  // T1 foot -> T2 foot
  for (const auto& s : P.lines) {
    ProjSubspace f1 = intersect(F, s, P.t1), f2 = intersect(F, s, P.t2);
    if (f1.vdim() != 1 || f2.vdim() != 1)
      throw Error("recover_sigma: a line does not meet the transversals in single points");
    auto a = normalize_point(F, f1.basis.row(0));
    if (!phi.emplace(a, normalize_point(F, f2.basis.row(0))).second)
      throw Error("recover_sigma: two lines share a foot");
  }
  auto image_of = [&](const Vec& v) -> Vec {
    auto it = phi.find(normalize_point(F, v));
    if (it == phi.end()) throw Error("recover_sigma: foot map is not total on T_1");
    return it->second.v;
  };

  // frame: basis feet and the unit foot
  std::vector<Vec> w(n);
  for (int i = 0; i < n; ++i) w[i] = image_of(P.t1.basis.row(i));
  Vec unit(L.sp.r, fe_zero());
  for (int i = 0; i < n; ++i) unit = vec_add(F, unit, P.t1.basis.row(i));
  Vec wu = image_of(unit);
  Mat wrows = Mat::from_rows(w);
  auto c = coords_in_rows(F, wrows, wu);
  if (!c) throw Error("recover_sigma: unit foot outside the image frame");
  Mat scaled(n, L.sp.r);
  for (int i = 0; i < n; ++i) {
    if ((*c)[i].is_zero()) throw Error("recover_sigma: degenerate frame scalars");
    scaled.set_row(i, vec_scale(F, (*c)[i], w[i]));
  }

  std::vector<char> viable(t, 1);
  for (Fe lam : L.sp.coord_field().units) {
    Vec p = vec_add(F, P.t1.basis.row(0), vec_scale(F, lam, P.t1.basis.row(1)));
    Vec y = image_of(p);
    auto d = coords_in_rows(F, scaled, y);
    if (!d) throw Error("recover_sigma: foot image outside T_2 frame");
    for (int j = 2; j < n; ++j)
      if (!(*d)[j].is_zero()) throw Error("recover_sigma: foot map is not line-compatible");
    Fe mu = F.div((*d)[1], (*d)[0]);
    for (int i = 0; i < t; ++i)
      if (viable[i] && F.frob(lam, static_cast<long long>(L.base_d) * i) != mu) viable[i] = 0;
  }
  int found = -1;
  for (int i = 0; i < t; ++i)
    if (viable[i]) {
      if (found >= 0) throw Error("recover_sigma: companion automorphism not unique");
      found = i;
    }
  if (found < 0) throw Error("recover_sigma: foot map is not semilinear");
  if (std::gcd(static_cast<long long>(found), static_cast<long long>(t)) != 1)
    throw Error("recover_sigma: companion automorphism does not fix exactly F_q");
  return SigmaRecovery{found, std::min(found, t - found), std::move(scaled)};
}

/// Rebuilds a full spec (U_1 = T_1, U_2 = T_2, f from the recovered feet,
/// rho from a norm-class scan) whose linear set equals L point-set-wise.
inline PseudoregulusSpec recover_spec(const FqLinearSet& L, const Pseudoregulus& P) {
  const GaloisField& F = L.sp.F();
  int n = L.sp.r / 2;
  SigmaRecovery rec = recover_sigma(L, P);
  Mat fmat(n, n);
  for (int i = 0; i < n; ++i) {
    auto y = coords_in_rows(F, P.t2.basis, rec.scaled_feet.row(i));
    if (!y) throw Error("recover_spec: feet outside T_2");
    for (int j = 0; j < n; ++j) fmat.at(j, i) = (*y)[j];
  }
  PointSet target = enumerate_points(L);
  for (long long j = 0; j < L.base_q() - 1; ++j) {
    PseudoregulusSpec s{L.sp, L.base_d, P.t1.basis, P.t2.basis, fmat,
                        rec.raw_i, F.pow(L.sp.coord_field().gen, j)};
    if (enumerate_points(build_pr_linear_set(s)) == target) return s;
  }
  throw Error("recover_spec: no norm class reproduces L");
}

/// Semilinear map from images of a spanning row basis and a companion
/// automorphism exponent (p-power).
inline SemilinearMap map_from_basis_images(const ProjSpace& sp, const Mat& basis_rows,
                                           const std::vector<Vec>& images, int frob_j) {
  const GaloisField& F = sp.F();
  Mat A(sp.r, sp.r);
  for (int c = 0; c < sp.r; ++c) {
    Vec e(sp.r, fe_zero());
    e[c] = fe_one();
    auto xi = coords_in_rows(F, basis_rows, e);
    if (!xi) throw Error("map_from_basis_images: rows do not span");
    Vec img(sp.r, fe_zero());
    for (int i = 0; i < basis_rows.rows; ++i) {
      Fe coef = F.frob((*xi)[i], frob_j);
      if (!coef.is_zero()) img = vec_add(F, img, vec_scale(F, coef, images[i]));
    }
    for (int rr = 0; rr < sp.r; ++rr) A.at(rr, c) = img[rr];
  }
  return SemilinearMap::make(sp, std::move(A), frob_j);
}

/// The constructive equivalence between two sets on the same decomposition:
/// a collineation carrying L_{rho,f} to L_{rho',g} exists iff the companion
/// exponents agree or are inverse mod t; in the first case it fixes U_1 and
/// U_2, in the second it swaps them.
inline std::optional<SemilinearMap> build_equivalence(const PseudoregulusSpec& f,
                                                      const PseudoregulusSpec& g) {
  const GaloisField& F = f.sp.F();
  if (!(f.u1basis == g.u1basis) || !(f.u2basis == g.u2basis))
    throw Error("build_equivalence: specs must share the decomposition");
  int t = f.t();
  // rho-normalize: L_{rho,f} = L_{1, rho f}
  Mat bf = f.fmat, bg = g.fmat;
  for (Fe& x : bf.a) x = F.mul(f.rho, x);
  for (Fe& x : bg.a) x = F.mul(g.rho, x);
  int n = f.n();
  std::vector<Vec> images(2 * n);
  Mat stacked(2 * n, f.sp.r);
  for (int i = 0; i < n; ++i) stacked.set_row(i, f.u1basis.row(i));
  for (int i = 0; i < n; ++i) stacked.set_row(n + i, f.u2basis.row(i));

  auto u2_vec = [&](const Vec& coords) {
    Vec out(f.sp.r, fe_zero());
    for (int j = 0; j < n; ++j)
      if (!coords[j].is_zero()) out = vec_add(F, out, vec_scale(F, coords[j], f.u2basis.row(j)));
    return out;
  };
  auto u1_vec = [&](const Vec& coords) {
    Vec out(f.sp.r, fe_zero());
    for (int j = 0; j < n; ++j)
      if (!coords[j].is_zero()) out = vec_add(F, out, vec_scale(F, coords[j], f.u1basis.row(j)));
    return out;
  };

  if (positive_mod(f.sigma_i - g.sigma_i, t) == 0) {
    // u_1 + u_2 -> u_1 + g(f^{-1}(u_2)): linear, block C = bg . bf^{-1} on U_2 coords
    Mat C = mat_mul(F, bg, mat_inverse(F, bf));
    for (int i = 0; i < n; ++i) images[i] = f.u1basis.row(i);
    for (int i = 0; i < n; ++i) {
      Vec e(n, fe_zero());
      e[i] = fe_one();
      images[n + i] = u2_vec(mat_vec(F, C, e));
    }
    return map_from_basis_images(f.sp, stacked, images, 0);
  }
  if (positive_mod(f.sigma_i + g.sigma_i, t) == 0) {
    // u_1 + u_2 -> g(u_1) + f^{-1}(u_2): companion sigma_g
    int frob_j = static_cast<int>(positive_mod(static_cast<long long>(f.base_d) * g.sigma_i,
                                               F.e()));
    Mat bf_inv = mat_inverse(F, bf);
    // f^{-1}(w) has U_1-coords (bf^{-1} y)^{sigma_f^{-1}}; with companion sigma_g
    // pulled out, the residual matrix is (bf^{-1})^{sigma_f^{-1}}.
    long long sf_inv = positive_mod(-static_cast<long long>(f.base_d) * f.sigma_i, F.e());
    Mat bf_inv_tw = mat_frob(F, bf_inv, sf_inv);
    for (int i = 0; i < n; ++i) {
      Vec e(n, fe_zero());
      e[i] = fe_one();
      images[i] = u2_vec(mat_vec(F, bg, e));
      images[n + i] = u1_vec(mat_vec(F, bf_inv_tw, e));
    }
    return map_from_basis_images(f.sp, stacked, images, frob_j);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The line case PG(1, q^t)
// ---------------------------------------------------------------------------

struct LinePRSpec {
  ProjSpace sp;  // r = 2
  int base_d = 1;
  Vec w, v;      // representatives of the two transversal points
  int tau_i = 1; // companion x -> x^{q^tau_i}, gcd(tau_i, t) = 1
  Fe rho = fe_one();

  int t() const { return sp.coord_d / base_d; }
};

inline void validate_line_spec(const LinePRSpec& s) {
  const GaloisField& F = s.sp.F();
  if (s.sp.r != 2) throw Error("line spec: host must be PG(1, q^t)");
  if (normalize_point(F, s.w) == normalize_point(F, s.v))
    throw Error("line spec: transversal points must be distinct");
  if (std::gcd(static_cast<long long>(s.tau_i), static_cast<long long>(s.t())) != 1)
    throw Error("line spec: companion automorphism must fix exactly F_q");
  if (s.rho.is_zero()) throw Error("line spec: rho must be nonzero");
}

/// W_{rho,tau} = { lambda w + rho lambda^tau v : lambda in F_{q^t} }.
inline FqLinearSet build_line_pr(const LinePRSpec& s) {
  validate_line_spec(s);
  const GaloisField& F = s.sp.F();
  const auto& dec = s.sp.tw->dec(s.base_d, s.sp.coord_d);
  long long tau_j = static_cast<long long>(s.base_d) * s.tau_i;
  std::vector<Vec> rows;
  for (int j = 0; j < s.t(); ++j) {
    Fe lam = dec.basis()[j];
    rows.push_back(vec_add(F, vec_scale(F, lam, s.w),
                           vec_scale(F, F.mul(s.rho, F.frob(lam, tau_j)), s.v)));
  }
  return make_linear_set(s.sp, s.base_d, rows);
}

struct DetectLineResult {
  PrStatus status = PrStatus::not_pr;
  std::vector<std::pair<ProjPoint, ProjPoint>> pairs;  // unordered, canonical order inside
  std::optional<LinePRSpec> spec;
  long long trials = 0;
};

/// Brute-force transversal search: ordered pairs of points off L, companion
/// exponents coprime to t, and one rho per norm class.
inline DetectLineResult detect_line_pr(const FqLinearSet& L,
                                       long long budget = kDefaultPairBudget) {
  const GaloisField& F = L.sp.F();
  if (L.sp.r != 2) throw Error("detect_line_pr: host must be PG(1, q^t)");
  int t = L.sp.coord_d / L.base_d;
  if (L.rank() != t) throw Error("detect_line_pr: rank t required");
  PointSet pts = enumerate_points(L);
  if (static_cast<long long>(pts.size()) != L.max_size())
    throw Error("detect_line_pr: input is not scattered");
  std::unordered_set<ProjPoint, ProjPointHash> inL(pts.begin(), pts.end());

  // all points of the line
  std::vector<ProjPoint> off;
  {
    ProjSubspace whole{Mat::identity(2)};
    for (const ProjPoint& P : subspace_points(L.sp, whole))
      if (!inL.count(P)) off.push_back(P);
  }
  std::vector<int> exps;
  for (int i = 1; i < t; ++i)
    if (std::gcd(static_cast<long long>(i), static_cast<long long>(t)) == 1) exps.push_back(i);

  DetectLineResult out;
  std::set<std::pair<ProjPoint, ProjPoint>> pair_set;
  for (const ProjPoint& P1 : off) {
    for (const ProjPoint& P2 : off) {
      if (P1 == P2) continue;
      for (int i : exps) {
        long long tau_j = static_cast<long long>(L.base_d) * i;
        for (long long rc = 0; rc < L.base_q() - 1; ++rc) {
          if (++out.trials > budget) throw BudgetError("transversal pair search over budget");
          Fe rho = F.pow(L.sp.coord_field().gen, rc);
          bool match = true;
          for (Fe lam : L.sp.coord_field().units) {
            Vec vv = vec_add(F, vec_scale(F, lam, P1.v),
                             vec_scale(F, F.mul(rho, F.frob(lam, tau_j)), P2.v));
            if (!inL.count(normalize_point(F, vv))) {
              match = false;
              break;
            }
          }
          if (match) {
            auto pr = P1 < P2 ? std::make_pair(P1, P2) : std::make_pair(P2, P1);
            if (pair_set.insert(pr).second && !out.spec)
              out.spec = LinePRSpec{L.sp, L.base_d, P1.v, P2.v, i, rho};
          }
        }
      }
    }
  }
  out.pairs.assign(pair_set.begin(), pair_set.end());
  if (out.pairs.empty()) {
    out.status = PrStatus::not_pr;
  } else if (t >= 3) {
    if (out.pairs.size() != 1)
      throw Error("detect_line_pr: transversal pair not unique although t >= 3");
    out.status = PrStatus::pr;
  } else {
    out.status = out.pairs.size() == 1 ? PrStatus::pr : PrStatus::t2_nonunique;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The scattered family that is not of pseudoregulus type
// ---------------------------------------------------------------------------

struct LpExample {
  FqLinearSet set;
  bool expected_non_pr = false;  // guaranteed only for q > 3, t >= 4, rho != 0
};

/// (n = 1)  L_rho = { <(x, rho x^q + x^{q^(t-1)})> : x != 0 },  rank t;
/// (n >= 2) the rank-tn extension with the same twist on the first block.
/// Requires N_{q^t/q}(rho) != 1, and rho != 0 when n >= 2.
inline LpExample lp_example_set(const Tower& tw, Fe rho, int n = 1) {
  if (tw.t() < 2) throw Error("lp_example_set: t >= 2 required");
  const GaloisField& F = tw.F();
  int h = tw.h(), t = tw.t();
  if (!rho.is_zero() && F.rel_norm(rho, h, h * t) == F.one())
    throw Error("lp_example_set: rho has relative norm 1");
  if (n >= 2 && rho.is_zero()) throw Error("lp_example_set: rho must be nonzero for the rank-tn form");
  ProjSpace sp{&tw, h * t, 2 * std::max(n, 1)};
  const auto& dec = tw.dec(h, h * t);
  auto twist = [&](Fe x) {
    return F.add(F.mul(rho, F.frob(x, h)), F.frob(x, static_cast<long long>(h) * (t - 1)));
  };
  std::vector<Vec> rows;
  if (n == 1) {
    for (int j = 0; j < t; ++j) {
      Fe x = dec.basis()[j];
      rows.push_back(Vec{x, twist(x)});
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < t; ++j) {
        Fe x = dec.basis()[j];
        Vec v(2 * n, fe_zero());
        v[i] = x;
        if (i == 0)
          v[n] = twist(x);
        else
          v[n + i] = F.frob(x, h);
        rows.push_back(v);
      }
    }
  }
  LpExample out{make_linear_set(sp, h, rows), tw.q() > 3 && t >= 4 && !rho.is_zero()};
  return out;
}

}  // namespace linset

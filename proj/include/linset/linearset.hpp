#pragma once

/**
 * @file linearset.hpp
 * @brief F_q-linear sets of PG(r-1, q^t): enumeration, weights, scatteredness,
 *        and exhaustive subspace searches at desk scale.
 *
 * An F_q-linear set is carried by an F_q-basis of a subspace U of the
 * coordinate vector space; its points are the projective classes of the
 * nonzero F_q-combinations.  All F_q-dimension computations expand coordinate
 * vectors over a fixed basis of the coordinate field (powers of the field
 * generator), turning V(r, q^t) into V(rt, q).
 */

#include <map>
#include <random>

#include "projspace.hpp"

namespace linset {

inline constexpr long long kDefaultEnumBudget = 1LL << 22;

struct FqLinearSet {
  ProjSpace sp;
  int base_d = 1;  // the F_q of linearity: q = p^base_d
  Mat basis;       // rank() rows over the coordinate field, F_q-independent

  int rank() const { return basis.rows; }
  long long base_q() const { return sp.tw->sub(base_d).size; }
  /// (q^k - 1)/(q - 1): the size of a scattered set of this rank.
  long long max_size() const {
    long long s = 0, pw = 1;
    for (int i = 0; i < rank(); ++i) {
      s += pw;
      pw *= base_q();
    }
    return s;
  }
};

/// F_q-coordinate expansion of a coordinate-field vector.
inline Vec blow_up_vec(const ProjSpace& sp, int base_d, const Vec& v) {
  if (base_d == sp.coord_d) return v;
  const auto& dec = sp.tw->dec(base_d, sp.coord_d);
  Vec out;
  out.reserve(static_cast<size_t>(sp.r) * dec.dim());
  for (Fe x : v) {
    auto c = dec.coords(sp.F(), x);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

inline Vec compose_from_blowup(const ProjSpace& sp, int base_d, const Vec& big) {
  if (base_d == sp.coord_d) return big;
  const auto& dec = sp.tw->dec(base_d, sp.coord_d);
  Vec out(sp.r);
  for (int i = 0; i < sp.r; ++i) {
    std::vector<Fe> c(big.begin() + static_cast<size_t>(i) * dec.dim(),
                      big.begin() + static_cast<size_t>(i + 1) * dec.dim());
    out[i] = dec.compose(sp.F(), c);
  }
  return out;
}

/// F_q-basis matrix of the blow-up of the F_q-span of the given rows.
inline Mat blow_up_rows(const ProjSpace& sp, int base_d, const Mat& rows) {
  Mat out(rows.rows, rows.cols * (base_d == sp.coord_d ? 1 : sp.tw->dec(base_d, sp.coord_d).dim()));
  for (int i = 0; i < rows.rows; ++i) out.set_row(i, blow_up_vec(sp, base_d, rows.row(i)));
  return out;
}

/// F_q-basis matrix of a coordinate-field subspace, viewed over F_q: the rows
/// are b * w for every decomposition-basis scalar b and subspace basis row w.
inline Mat blow_up_subspace(const ProjSpace& sp, int base_d, const ProjSubspace& s) {
  const GaloisField& F = sp.F();
  std::vector<Vec> rows;
  if (base_d == sp.coord_d) {
    rows = s.basis.to_rows();
  } else {
    const auto& dec = sp.tw->dec(base_d, sp.coord_d);
    for (int i = 0; i < s.basis.rows; ++i)
      for (Fe b : dec.basis()) rows.push_back(blow_up_vec(sp, base_d, vec_scale(F, b, s.basis.row(i))));
  }
  return row_basis(F, Mat::from_rows(rows));
}

inline FqLinearSet make_linear_set(const ProjSpace& sp, int base_d, const std::vector<Vec>& gens) {
  FqLinearSet L{sp, base_d, Mat::from_rows(gens)};
  Mat blown = blow_up_rows(sp, base_d, L.basis);
  if (mat_rank(sp.F(), blown) != L.rank())
    throw Error("linear set basis is not F_q-independent");
  return L;
}

namespace detail {

/// Iterates v = sum over basis rows with coefficients from the base field,
/// skipping zero; calls fn(v) for each of the q^k - 1 combinations.
template <typename Fn>
void for_each_combination(const FqLinearSet& L, long long budget, Fn&& fn) {
  const GaloisField& F = L.sp.F();
  const auto& coeffs = L.sp.tw->sub(L.base_d).elems;
  int k = L.rank();
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<long long>(coeffs.size());
    if (total > budget)
      throw BudgetError("linear-set enumeration needs " + std::to_string(L.base_q()) + "^" +
                        std::to_string(k) + " combinations, over budget " + std::to_string(budget));
  }
  std::vector<size_t> idx(k, 0);
  while (true) {
    Vec v(L.sp.r, fe_zero());
    bool nz = false;
    for (int i = 0; i < k; ++i) {
      Fe c = coeffs[idx[i]];
      if (c.is_zero()) continue;
      nz = true;
      for (int col = 0; col < L.sp.r; ++col)
        v[col] = F.add(v[col], F.mul(c, L.basis.at(i, col)));
    }
    if (nz) fn(v);
    int pos = 0;
    while (pos < k && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
}

}  // namespace detail

/// Distinct points of the linear set.  Postconditions from first principles:
/// the size respects the rank bound and is 1 mod q.
inline PointSet enumerate_points(const FqLinearSet& L, long long budget = kDefaultEnumBudget) {
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  const GaloisField& F = L.sp.F();
  detail::for_each_combination(L, budget, [&](const Vec& v) { seen.insert(normalize_point(F, v)); });
  PointSet out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  if (static_cast<long long>(out.size()) > L.max_size())
    throw Error("linear set size exceeds its rank bound");
  if (!out.empty() && (static_cast<long long>(out.size()) - 1) % L.base_q() != 0)
    throw Error("linear set size is not 1 mod q");
  return out;
}

/// Point -> number of nonzero vectors of U over it (= q^weight - 1).
inline std::map<ProjPoint, long long> enumerate_with_multiplicity(const FqLinearSet& L,
                                                                  long long budget = kDefaultEnumBudget) {
  std::map<ProjPoint, long long> mult;
  const GaloisField& F = L.sp.F();
  detail::for_each_combination(L, budget, [&](const Vec& v) { ++mult[normalize_point(F, v)]; });
  return mult;
}

/// Weight of a subspace: dim_Fq(U cap W), by F_q-linear algebra after blow-up.
inline int weight(const FqLinearSet& L, const ProjSubspace& s) {
  if (s.basis.cols != L.sp.r) throw Error("weight: subspace from a different space");
  Mat ub = blow_up_rows(L.sp, L.base_d, L.basis);
  Mat wb = blow_up_subspace(L.sp, L.base_d, s);
  return span_and_meet(L.sp.F(), ub, wb).second.rows;
}

inline int weight(const FqLinearSet& L, const ProjPoint& p) {
  return weight(L, make_subspace(L.sp.F(), {p.v}));
}

inline bool is_scattered(const FqLinearSet& L, long long budget = kDefaultEnumBudget) {
  return static_cast<long long>(enumerate_points(L, budget).size()) == L.max_size();
}

inline FqLinearSet apply_map(const SemilinearMap& M, const FqLinearSet& L) {
  std::vector<Vec> rows;
  rows.reserve(L.rank());
  for (int i = 0; i < L.rank(); ++i) rows.push_back(M.apply_vec(L.basis.row(i)));
  return make_linear_set(L.sp, L.base_d, rows);
}

/// The linear set U cap W viewed inside the subspace S = PG(W), in the
/// coordinates of S's canonical basis.
inline FqLinearSet restrict_to_subspace(const FqLinearSet& L, const ProjSubspace& s) {
  const GaloisField& F = L.sp.F();
  Mat ub = blow_up_rows(L.sp, L.base_d, L.basis);
  Mat wb = blow_up_subspace(L.sp, L.base_d, s);
  Mat meet = span_and_meet(F, ub, wb).second;  // F_q-basis of U cap W, blown up
  std::vector<Vec> rows;
  for (int i = 0; i < meet.rows; ++i) {
    Vec v = compose_from_blowup(L.sp, L.base_d, meet.row(i));
    auto c = coords_in_rows(F, s.basis, v);
    if (!c) throw Error("restrict_to_subspace: inconsistent intersection");
    rows.push_back(*c);
  }
  ProjSpace sub_sp{L.sp.tw, L.sp.coord_d, s.vdim()};
  return make_linear_set(sub_sp, L.base_d, rows);
}

// ---- exhaustive and random subspace generation ------------------------------

/// All k-dimensional row spaces of F^m over the subfield of degree base_d,
/// one canonical RREF matrix each.
template <typename Fn>
void for_each_subspace(const Tower& tw, int base_d, int m, int k, long long budget, Fn&& fn) {
  const auto& elems = tw.sub(base_d).elems;
  const long long q = static_cast<long long>(elems.size());
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  long long emitted = 0;
  auto advance_pivots = [&]() -> bool {
    int i = k - 1;
    while (i >= 0 && piv[i] == m - k + i) --i;
    if (i < 0) return false;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    return true;
  };
  if (k == 0) {
    fn(Mat(0, m));
    return;
  }
  if (k > m) return;
  do {
    // free positions: row i, non-pivot columns right of piv[i]
    std::vector<std::pair<int, int>> free_pos;
    std::vector<char> is_piv(m, 0);
    for (int c : piv) is_piv[c] = 1;
    for (int i = 0; i < k; ++i)
      for (int c = piv[i] + 1; c < m; ++c)
        if (!is_piv[c]) free_pos.emplace_back(i, c);
    long long combos = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) {
      combos *= q;
      if (combos > budget) throw BudgetError("subspace enumeration over budget");
    }
    std::vector<size_t> idx(free_pos.size(), 0);
    while (true) {
      Mat mrow(k, m);
      for (int i = 0; i < k; ++i) mrow.at(i, piv[i]) = fe_one();
      for (size_t f = 0; f < free_pos.size(); ++f)
        mrow.at(free_pos[f].first, free_pos[f].second) = elems[idx[f]];
      fn(mrow);
      if (++emitted > budget) throw BudgetError("subspace enumeration over budget");
      size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  } while (advance_pivots());
}

struct BoundCheckReport {
  long long subspaces_checked = 0;
  long long scattered_found = 0;
  int rank_checked = 0;
};

/// Exhausts every F_q-subspace of V(r, q^t) of rank floor(rt/2) + 1 and tests
/// scatteredness; for a correct implementation none can be scattered.
inline BoundCheckReport max_scattered_bound_check(const ProjSpace& sp, int base_d,
                                                  long long budget = kDefaultEnumBudget) {
  int trel = base_d == sp.coord_d ? 1 : sp.tw->dec(base_d, sp.coord_d).dim();
  int m = sp.r * trel;
  int k = (sp.r * trel) / 2 + 1;
  BoundCheckReport rep;
  rep.rank_checked = k;
  for_each_subspace(*sp.tw, base_d, m, k, budget, [&](const Mat& rows) {
    std::vector<Vec> gens;
    gens.reserve(k);
    for (int i = 0; i < rows.rows; ++i) gens.push_back(compose_from_blowup(sp, base_d, rows.row(i)));
    FqLinearSet L = make_linear_set(sp, base_d, gens);
    ++rep.subspaces_checked;
    if (is_scattered(L, budget)) ++rep.scattered_found;
  });
  return rep;
}

inline FqLinearSet random_linear_set(std::mt19937_64& rng, const ProjSpace& sp, int base_d, int k) {
  const auto& coord = sp.coord_field().elems;
  std::uniform_int_distribution<size_t> pick(0, coord.size() - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vec> gens(k, Vec(sp.r));
    for (auto& v : gens)
      for (Fe& x : v) x = coord[pick(rng)];
    Mat blown = blow_up_rows(sp, base_d, Mat::from_rows(gens));
    if (mat_rank(sp.F(), blown) == k) return FqLinearSet{sp, base_d, Mat::from_rows(gens)};
  }
  throw Error("random_linear_set: could not draw an independent basis");
}

}  // namespace linset

#pragma once

/**
 * @file projspace.hpp
 * @brief Projective spaces PG(r-1, p^d) over a coordinate subfield of a
 *        Tower, with normalized points, canonical subspaces, and semilinear
 *        collineations.
 *
 * Points are normalized so the first nonzero coordinate is 1, which makes
 * equality plain vector equality.  Subspaces are kept in reduced row echelon
 * form, so subspace equality is row-wise equality.
 */

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "vecmat.hpp"

namespace linset {

struct ProjSpace {
  const Tower* tw = nullptr;
  int coord_d = 1;  // coordinate field F_{p^coord_d}, a subfield of the ambient field
  int r = 1;        // vector-space dimension; projective dimension r-1

  const GaloisField& F() const { return tw->F(); }
  const Subfield& coord_field() const { return tw->sub(coord_d); }
  long long Q() const { return coord_field().size; }
  long long point_count() const {
    long long s = 0, pw = 1;
    for (int i = 0; i < r; ++i) {
      s += pw;
      pw *= Q();
    }
    return s;
  }
  friend bool operator==(const ProjSpace& a, const ProjSpace& b) {
    return a.tw == b.tw && a.coord_d == b.coord_d && a.r == b.r;
  }
};

struct ProjPoint {
  Vec v;  // normalized: leading nonzero coordinate is one
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.v == b.v; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.v < b.v; }
};

struct ProjPointHash {
  size_t operator()(const ProjPoint& p) const {
    size_t h = 1469598103934665603ull;
    for (Fe x : p.v) {
      h ^= static_cast<size_t>(x.v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline ProjPoint normalize_point(const GaloisField& F, Vec v) {
  for (Fe x : v) {
    if (x.is_zero()) continue;
    Fe s = F.inv(x);
    for (Fe& y : v) y = F.mul(s, y);
    return ProjPoint{std::move(v)};
  }
  throw Error("projective point from zero vector");
}

/// Row space in canonical echelon form.  pdim() is the projective dimension;
/// the empty subspace (no rows) has pdim -1.
struct ProjSubspace {
  Mat basis;  // RREF, no zero rows

  int vdim() const { return basis.rows; }
  int pdim() const { return basis.rows - 1; }
  bool empty() const { return basis.rows == 0; }
  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b) { return a.basis == b.basis; }
  friend bool operator<(const ProjSubspace& a, const ProjSubspace& b) {
    if (a.basis.rows != b.basis.rows) return a.basis.rows < b.basis.rows;
    return a.basis.a < b.basis.a;
  }
};

inline ProjSubspace make_subspace(const GaloisField& F, const std::vector<Vec>& gens) {
  return ProjSubspace{row_basis(F, Mat::from_rows(gens))};
}

inline ProjSubspace make_subspace(const GaloisField& F, Mat gens) {
  return ProjSubspace{row_basis(F, std::move(gens))};
}

inline ProjSubspace span(const GaloisField& F, const ProjSubspace& a, const ProjSubspace& b) {
  std::vector<Vec> rows = a.basis.to_rows();
  for (auto& r : b.basis.to_rows()) rows.push_back(r);
  return make_subspace(F, rows);
}

inline ProjSubspace intersect(const GaloisField& F, const ProjSubspace& a, const ProjSubspace& b) {
  return ProjSubspace{span_and_meet(F, a.basis, b.basis).second};
}

inline bool subspace_contains(const GaloisField& F, const ProjSubspace& s, const Vec& v) {
  return coords_in_rows(F, s.basis, v).has_value();
}

inline bool subspace_contains(const GaloisField& F, const ProjSubspace& s, const ProjSubspace& t) {
  for (int i = 0; i < t.basis.rows; ++i)
    if (!subspace_contains(F, s, t.basis.row(i))) return false;
  return true;
}

/// True iff the two subspaces have a common point.
inline bool subspaces_meet(const GaloisField& F, const ProjSubspace& a, const ProjSubspace& b) {
  Mat stacked(a.basis.rows + b.basis.rows, a.basis.cols);
  for (int i = 0; i < a.basis.rows; ++i) stacked.set_row(i, a.basis.row(i));
  for (int i = 0; i < b.basis.rows; ++i) stacked.set_row(a.basis.rows + i, b.basis.row(i));
  return mat_rank(F, stacked) < a.basis.rows + b.basis.rows;
}

/// All projective points of a subspace, sorted.  Enumerates coordinate tuples
/// over the given subfield, so cost is |coord field|^vdim.
inline std::vector<ProjPoint> subspace_points(const ProjSpace& sp, const ProjSubspace& s) {
  const GaloisField& F = sp.F();
  const auto& elems = sp.coord_field().elems;
  int k = s.vdim();
  std::vector<ProjPoint> out;
  if (k == 0) return out;
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  std::vector<size_t> idx(k, 0);
  while (true) {
    Vec v(s.basis.cols, fe_zero());
    bool nz = false;
    for (int i = 0; i < k; ++i) {
      if (elems[idx[i]].is_zero()) continue;
      nz = true;
      for (int c = 0; c < s.basis.cols; ++c)
        v[c] = F.add(v[c], F.mul(elems[idx[i]], s.basis.at(i, c)));
    }
    if (nz) seen.insert(normalize_point(F, std::move(v)));
    int pos = 0;
    while (pos < k && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == k) break;
  }
  out.assign(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Invertible matrix plus companion automorphism: <v> -> <A . v^phi>.
/// With the identity automorphism this is a projectivity.
struct SemilinearMap {
  ProjSpace sp;
  Mat A;        // r x r, invertible (checked at construction)
  int frob_j = 0;  // companion x -> x^{p^frob_j}

  static SemilinearMap make(const ProjSpace& sp, Mat A, int frob_j) {
    if (A.rows != sp.r || A.cols != sp.r) throw Error("semilinear map: wrong shape");
    mat_inverse(sp.F(), A);  // rejects singular input
    return SemilinearMap{sp, std::move(A), static_cast<int>(positive_mod(frob_j, sp.F().e()))};
  }

  Vec apply_vec(const Vec& v) const { return mat_vec(sp.F(), A, vec_frob(sp.F(), v, frob_j)); }

  ProjPoint apply(const ProjPoint& p) const { return normalize_point(sp.F(), apply_vec(p.v)); }

  ProjSubspace apply(const ProjSubspace& s) const {
    std::vector<Vec> rows;
    rows.reserve(s.basis.rows);
    for (int i = 0; i < s.basis.rows; ++i) rows.push_back(apply_vec(s.basis.row(i)));
    return make_subspace(sp.F(), rows);
  }

  /// this after other:  x -> this(other(x)).
  SemilinearMap compose(const SemilinearMap& other) const {
    const GaloisField& F = sp.F();
    Mat m = mat_mul(F, A, mat_frob(F, other.A, frob_j));
    return SemilinearMap{sp, std::move(m),
                         static_cast<int>(positive_mod(frob_j + other.frob_j, F.e()))};
  }

  SemilinearMap inverse() const {
    const GaloisField& F = sp.F();
    int jinv = static_cast<int>(positive_mod(-frob_j, F.e()));
    Mat m = mat_frob(F, mat_inverse(F, A), jinv);
    return SemilinearMap{sp, std::move(m), jinv};
  }

  bool is_projectivity() const { return frob_j % sp.F().e() == 0; }
};

// ---- sorted point sets ------------------------------------------------------

using PointSet = std::vector<ProjPoint>;  // sorted, unique

inline PointSet to_point_set(std::vector<ProjPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline bool point_set_contains(const PointSet& s, const ProjPoint& p) {
  return std::binary_search(s.begin(), s.end(), p);
}

inline PointSet point_set_intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PointSet point_set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool point_sets_disjoint(const PointSet& a, const PointSet& b) {
  return point_set_intersect(a, b).empty();
}

}  // namespace linset

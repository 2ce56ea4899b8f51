#pragma once

// Dense vectors and matrices over (a subfield of) a GaloisField, sized for
// desk-scale geometry: row reduction, kernels, Zassenhaus span/meet.
// Vectors are rows; a subspace is the row space of its basis matrix.

#include <optional>
#include <vector>

#include "gf.hpp"

namespace linset {

using Vec = std::vector<Fe>;

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Fe> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fe_zero()) {}

  Fe& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  Fe at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  Vec row(int r) const { return Vec(a.begin() + static_cast<size_t>(r) * cols, a.begin() + static_cast<size_t>(r + 1) * cols); }
  void set_row(int r, const Vec& v) {
    for (int c = 0; c < cols; ++c) at(r, c) = v[c];
  }

  static Mat from_rows(const std::vector<Vec>& rows_in) {
    if (rows_in.empty()) return Mat(0, 0);
    Mat m(static_cast<int>(rows_in.size()), static_cast<int>(rows_in[0].size()));
    for (int r = 0; r < m.rows; ++r) m.set_row(r, rows_in[r]);
    return m;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = fe_one();
    return m;
  }

  std::vector<Vec> to_rows() const {
    std::vector<Vec> out;
    out.reserve(rows);
    for (int r = 0; r < rows; ++r) out.push_back(row(r));
    return out;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

inline bool vec_is_zero(const Vec& v) {
  for (Fe x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Vec vec_add(const GaloisField& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.add(x[i], y[i]);
  return r;
}

inline Vec vec_scale(const GaloisField& F, Fe c, const Vec& x) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.mul(c, x[i]);
  return r;
}

inline Vec vec_sub(const GaloisField& F, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.sub(x[i], y[i]);
  return r;
}

/// Coordinatewise x -> x^{p^j}.
inline Vec vec_frob(const GaloisField& F, const Vec& x, long long j) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = F.frob(x[i], j);
  return r;
}

inline Mat mat_frob(const GaloisField& F, const Mat& m, long long j) {
  Mat r = m;
  for (Fe& x : r.a) x = F.frob(x, j);
  return r;
}

/// Row vector times matrix.
inline Vec vec_mat(const GaloisField& F, const Vec& v, const Mat& m) {
  Vec r(m.cols, fe_zero());
  for (int i = 0; i < m.rows; ++i) {
    if (v[i].is_zero()) continue;
    for (int c = 0; c < m.cols; ++c) r[c] = F.add(r[c], F.mul(v[i], m.at(i, c)));
  }
  return r;
}

/// Matrix times column vector.
inline Vec mat_vec(const GaloisField& F, const Mat& m, const Vec& v) {
  Vec r(m.rows, fe_zero());
  for (int i = 0; i < m.rows; ++i) {
    Fe s = fe_zero();
    for (int c = 0; c < m.cols; ++c) s = F.add(s, F.mul(m.at(i, c), v[c]));
    r[i] = s;
  }
  return r;
}

inline Mat mat_mul(const GaloisField& F, const Mat& x, const Mat& y) {
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Fe v = x.at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
    }
  return r;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<int> rref(const GaloisField& F, Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    Fe piv = F.inv(m.at(r, c));
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = F.mul(piv, m.at(r, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Fe f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Canonical row-space basis: RREF with zero rows dropped.
inline Mat row_basis(const GaloisField& F, Mat m) {
  auto piv = rref(F, m);
  Mat out(static_cast<int>(piv.size()), m.cols);
  for (int r = 0; r < out.rows; ++r) out.set_row(r, m.row(r));
  return out;
}

inline int mat_rank(const GaloisField& F, Mat m) { return static_cast<int>(rref(F, m).size()); }

/// Basis of { x : x . rows(m)^T = 0 }, i.e. of the orthogonal complement of
/// the row space under the standard dot product -- used as the solution space
/// of homogeneous systems whose equations are the rows of m.
inline Mat null_space(const GaloisField& F, Mat m) {
  int n = m.cols;
  auto piv = rref(F, m);
  std::vector<char> is_piv(n, 0);
  for (int c : piv) is_piv[c] = 1;
  Mat out(n - static_cast<int>(piv.size()), n);
  int k = 0;
  for (int c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    Vec v(n, fe_zero());
    v[c] = fe_one();
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(m.at(static_cast<int>(r), c));
    out.set_row(k++, v);
  }
  return out;
}

/// Matrix inverse; throws on singular input.
inline Mat mat_inverse(const GaloisField& F, const Mat& m) {
  if (m.rows != m.cols) throw Error("mat_inverse: not square");
  int n = m.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = fe_one();
  }
  auto piv = rref(F, aug);
  if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
    throw Error("mat_inverse: singular matrix");
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/// Coordinates of v in the row basis `rows`, if v lies in the row space.
inline std::optional<Vec> coords_in_rows(const GaloisField& F, const Mat& rows, const Vec& v) {
  // solve c . rows = v by reducing [rows^T | v^T]
  Mat aug(rows.cols, rows.rows + 1);
  for (int i = 0; i < rows.cols; ++i) {
    for (int j = 0; j < rows.rows; ++j) aug.at(i, j) = rows.at(j, i);
    aug.at(i, rows.rows) = v[i];
  }
  auto piv = rref(F, aug);
  if (!piv.empty() && piv.back() == rows.rows) return std::nullopt;  // inconsistent
  Vec c(rows.rows, fe_zero());
  for (size_t r = 0; r < piv.size(); ++r) c[piv[r]] = aug.at(static_cast<int>(r), rows.rows);
  return c;
}

/// Zassenhaus: canonical bases of span and intersection of two row spaces.
inline std::pair<Mat, Mat> span_and_meet(const GaloisField& F, const Mat& A, const Mat& B) {
  int n = A.cols;
  Mat big(A.rows + B.rows, 2 * n);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < n; ++j) {
      big.at(i, j) = A.at(i, j);
      big.at(i, n + j) = A.at(i, j);
    }
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < n; ++j) big.at(A.rows + i, j) = B.at(i, j);
  auto piv = rref(F, big);
  int span_rows = 0;
  for (int c : piv)
    if (c < n) ++span_rows;
  Mat sp(span_rows, n), meet(static_cast<int>(piv.size()) - span_rows, n);
  for (int r = 0; r < span_rows; ++r)
    for (int j = 0; j < n; ++j) sp.at(r, j) = big.at(r, j);
  for (int r = span_rows; r < static_cast<int>(piv.size()); ++r)
    for (int j = 0; j < n; ++j) meet.at(r - span_rows, j) = big.at(r, n + j);
  // canonicalize (meet block is echelon in the right half already, re-reduce)
  return {row_basis(F, sp), row_basis(F, meet)};
}

}  // namespace linset

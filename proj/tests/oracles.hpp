#pragma once

// Test-only oracles, independent of the Zech-table implementation they check.
// Field arithmetic here is plain polynomial arithmetic modulo the defining
// polynomial; irreducibility and primitivity are decided by brute force.

#include <vector>

#include "linset/util.hpp"

namespace oracle {

// Elements are coefficient vectors of length e over F_p (ascending degree).
struct PolyField {
  long long p;
  int e;
  std::vector<long long> f;  // monic modulus, size e+1, ascending

  using Elt = std::vector<long long>;

  Elt zero() const { return Elt(e, 0); }
  Elt one() const {
    Elt r(e, 0);
    r[0] = 1;
    return r;
  }
  Elt x() const {
    Elt r(e, 0);
    if (e == 1)
      r[0] = linset::positive_mod(-f[0], p);
    else
      r[1] = 1;
    return r;
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt r(e);
    for (int i = 0; i < e; ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<long long> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int d = 2 * e - 2; d >= e; --d) {
      long long c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < e; ++i)
        prod[d - e + i] = linset::positive_mod(prod[d - e + i] - c * f[i], p);
    }
    prod.resize(e);
    return prod;
  }

  Elt pow(Elt a, long long k) const {
    Elt r = one();
    while (k > 0) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  bool is_zero(const Elt& a) const {
    for (long long c : a)
      if (c != 0) return false;
    return true;
  }

  bool is_one(const Elt& a) const {
    if (a[0] != 1) return false;
    for (int i = 1; i < e; ++i)
      if (a[i] != 0) return false;
    return true;
  }

  long long encode(const Elt& a) const {
    long long enc = 0;
    for (int i = e - 1; i >= 0; --i) enc = enc * p + a[i];
    return enc;
  }
};

// Polynomial product over F_p, plain convolution (for irreducibility checks).
inline std::vector<long long> poly_mul(long long p, const std::vector<long long>& a,
                                       const std::vector<long long>& b) {
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

// Irreducibility of a monic polynomial over F_p by trial products of all
// factor-degree splits.  Exponential, fine for the degrees used in tests.
inline bool poly_irreducible(long long p, const std::vector<long long>& f) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    // enumerate monic divisor candidates of degree d
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<long long> g(d + 1, 0);
      long long w = v;
      for (int i = 0; i < d; ++i) {
        g[i] = w % p;
        w /= p;
      }
      g[d] = 1;
      // long division f by g
      std::vector<long long> rem = f;
      for (int i = deg; i >= d; --i) {
        long long c = rem[i];
        if (c == 0) continue;
        for (int j = 0; j <= d; ++j)
          rem[i - d + j] = linset::positive_mod(rem[i - d + j] - c * g[j], p);
      }
      bool zero = true;
      for (int i = 0; zero && i < d; ++i) zero = rem[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

// Multiplicative order of x in F_p[x]/(f); f must be irreducible.
inline long long root_order(long long p, const std::vector<long long>& f) {
  PolyField F{p, static_cast<int>(f.size()) - 1, f};
  auto cur = F.x();
  long long q = 1;
  for (int i = 0; i < F.e; ++i) q *= p;
  for (long long k = 1; k <= q; ++k) {
    if (F.is_one(cur)) return k;
    cur = F.mul(cur, F.x());
  }
  return -1;
}

// Gaussian binomial [m k]_q: number of k-dim subspaces of an m-dim space.
inline long long gauss_binom(long long m, long long k, long long q) {
  if (k < 0 || k > m) return 0;
  __int128 num = 1, den = 1;
  for (long long i = 0; i < k; ++i) {
    num *= linset::ipow(q, static_cast<int>(m - i)) - 1;
    den *= linset::ipow(q, static_cast<int>(i + 1)) - 1;
  }
  return static_cast<long long>(num / den);
}

}  // namespace oracle

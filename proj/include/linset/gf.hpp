#pragma once

/**
 * @file gf.hpp
 * @brief Small finite fields with Zech-logarithm arithmetic, plus nested
 *        subfield towers F_p < F_q < F_{q^t} < F_{q^nt} inside one ambient
 *        field.
 *
 * A field GF(p^e) is represented by discrete logarithms with respect to a
 * primitive root of a deterministically chosen defining polynomial: the
 * lexicographically least monic irreducible of degree e over F_p whose root
 * generates the multiplicative group.  Equal (p, e) therefore always yield
 * bit-identical tables, with no external polynomial database.
 *
 * Elements are carried as exponents (ZERO is a distinct tag, never an
 * exponent), so multiplication and inversion are index arithmetic and
 * addition is a single Zech-table lookup.  Tables are immutable after
 * construction and safe for unrestricted concurrent reads.
 */

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <map>
#include <utility>

#include "util.hpp"

namespace linset {

/// Hard cap on field size: tables are O(p^e) words.
inline constexpr long long kFieldSizeBudget = 1LL << 20;

/// A field element: either ZERO (v == -1) or exponent of the generator.
struct Fe {
  int32_t v = -1;

  constexpr bool is_zero() const { return v < 0; }
  friend constexpr bool operator==(Fe a, Fe b) { return a.v == b.v; }
  friend constexpr bool operator!=(Fe a, Fe b) { return a.v != b.v; }
  friend constexpr bool operator<(Fe a, Fe b) { return a.v < b.v; }
};

inline constexpr Fe fe_zero() { return Fe{-1}; }
inline constexpr Fe fe_one() { return Fe{0}; }

class GaloisField {
 public:
  GaloisField(long long p, int e) : p_(p), e_(e) {
    if (!is_prime(p)) throw Error("GF: characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw Error("GF: extension degree must be positive");
    q_ = ipow_capped(p, e, kFieldSizeBudget);
    if (q_ < 0)
      throw SizeError("GF: " + std::to_string(p) + "^" + std::to_string(e) +
                      " exceeds the table budget 2^20");
    units_ = q_ - 1;
    find_defining_polynomial();
    build_tables();
  }

  long long p() const { return p_; }
  int e() const { return e_; }
  long long q() const { return q_; }
  long long units() const { return units_; }  // order of the multiplicative group

  /// Monic defining polynomial, coefficients ascending, size e+1.
  const std::vector<long long>& poly() const { return poly_; }

  Fe zero() const { return fe_zero(); }
  Fe one() const { return fe_one(); }
  Fe gen() const { return units_ == 0 ? fe_one() : Fe{1}; }  // the root x itself

  Fe from_exp(long long k) const {
    if (units_ == 0) return fe_one();  // F_2: the only unit
    return Fe{static_cast<int32_t>(positive_mod(k, units_))};
  }

  Fe add(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // a + b = g^i (1 + g^{j-i})
    long long d = positive_mod(b.v - a.v, units_ == 0 ? 1 : units_);
    int32_t z = zech_[d];
    if (z < 0) return fe_zero();
    return from_exp(a.v + z);
  }

  Fe neg(Fe a) const {
    if (a.is_zero() || p_ == 2) return a;
    return from_exp(a.v + units_ / 2);
  }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe mul(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (a.is_zero() || b.is_zero()) return fe_zero();
    return from_exp(static_cast<long long>(a.v) + b.v);
  }

  Fe inv(Fe a) const {
    if (a.is_zero()) throw Error("GF: inverse of zero");
    return from_exp(-static_cast<long long>(a.v));
  }

  Fe div(Fe a, Fe b) const {
    if (b.is_zero()) throw Error("GF: division by zero");
    if (a.is_zero()) return fe_zero();
    return from_exp(static_cast<long long>(a.v) - b.v);
  }

  Fe pow(Fe a, long long k) const {
    if (a.is_zero()) {
      if (k == 0) return fe_one();
      if (k < 0) throw Error("GF: negative power of zero");
      return fe_zero();
    }
    if (units_ == 0) return fe_one();
    return from_exp(positive_mod(static_cast<long long>(a.v) * positive_mod(k, units_), units_));
  }

  /// x -> x^{p^j}; an automorphism for any j.
  Fe frob(Fe a, long long j) const {
    if (a.is_zero()) return a;
    if (units_ == 0) return a;
    long long pj = mod_pow(p_, positive_mod(j, e_), units_);
    return from_exp(static_cast<long long>(a.v) * pj);
  }

  /// True iff a lies in the subfield F_{p^d}; requires d | e.
  bool in_subfield(Fe a, int d) const {
    require_subfield_degree(d);
    if (a.is_zero()) return true;
    long long sub_units = ipow(p_, d) - 1;
    if (sub_units == 0) return a == fe_one();
    long long step = units_ / sub_units;
    return a.v % step == 0;
  }

  /// Generator of the subfield F_{p^d} inside this field.
  Fe subfield_gen(int d) const {
    require_subfield_degree(d);
    long long sub_units = ipow(p_, d) - 1;
    if (sub_units == 0) return fe_one();
    return Fe{static_cast<int32_t>(units_ / sub_units)};
  }

  /// Relative norm F_{p^sup} -> F_{p^sub}; requires sub | sup | e.
  Fe rel_norm(Fe a, int sub_d, int sup_d) const {
    require_nested(sub_d, sup_d);
    if (!in_subfield(a, sup_d)) throw Error("GF: norm argument outside the named field");
    if (a.is_zero()) return a;
    long long expo = (ipow(p_, sup_d) - 1) / (ipow(p_, sub_d) - 1);
    return pow(a, expo);
  }

  /// Relative trace F_{p^sup} -> F_{p^sub}; requires sub | sup | e.
  Fe rel_trace(Fe a, int sub_d, int sup_d) const {
    require_nested(sub_d, sup_d);
    if (!in_subfield(a, sup_d)) throw Error("GF: trace argument outside the named field");
    Fe s = fe_zero();
    int reps = sup_d / sub_d;
    Fe cur = a;
    for (int i = 0; i < reps; ++i) {
      s = add(s, cur);
      cur = frob(cur, sub_d);
    }
    return s;
  }

  /// Base-p digit encoding of the element's polynomial representative.
  long long encode(Fe a) const { return a.is_zero() ? 0 : exp_enc_[a.v]; }

  Fe decode(long long enc) const {
    if (enc <= 0 || enc >= q_) return enc == 0 ? fe_zero() : throw Error("GF: bad encoding");
    return Fe{log_[enc]};
  }

  bool same_field(const GaloisField& o) const { return p_ == o.p_ && e_ == o.e_; }

  // -- versioned binary table dump, bit-exact across runs --------------------

  static constexpr std::array<char, 8> kDumpMagic = {'L', 'S', 'G', 'F', 'T', 'B', 'L', '1'};

  void dump(std::ostream& os) const {
    os.write(kDumpMagic.data(), kDumpMagic.size());
    auto put32 = [&](uint32_t w) {
      unsigned char b[4] = {static_cast<unsigned char>(w), static_cast<unsigned char>(w >> 8),
                            static_cast<unsigned char>(w >> 16), static_cast<unsigned char>(w >> 24)};
      os.write(reinterpret_cast<char*>(b), 4);
    };
    put32(1);  // version
    put32(static_cast<uint32_t>(p_));
    put32(static_cast<uint32_t>(e_));
    for (long long c : poly_) put32(static_cast<uint32_t>(c));
    put32(static_cast<uint32_t>(zech_.size()));
    for (int32_t z : zech_) put32(static_cast<uint32_t>(z));
  }

  /// Reconstructs a field from a dump and cross-checks it against a fresh
  /// build for the same (p, e).
  static GaloisField load(std::istream& is) {
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kDumpMagic) throw Error("GF: bad table dump magic");
    auto get32 = [&]() -> uint32_t {
      unsigned char b[4];
      is.read(reinterpret_cast<char*>(b), 4);
      if (!is) throw Error("GF: truncated table dump");
      return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
             (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    };
    if (get32() != 1) throw Error("GF: unsupported table dump version");
    long long p = get32();
    int e = static_cast<int>(get32());
    GaloisField f(p, e);
    for (long long c : f.poly_)
      if (get32() != static_cast<uint32_t>(c)) throw Error("GF: table dump polynomial mismatch");
    if (get32() != f.zech_.size()) throw Error("GF: table dump size mismatch");
    for (int32_t z : f.zech_)
      if (get32() != static_cast<uint32_t>(z)) throw Error("GF: table dump Zech mismatch");
    return f;
  }

 private:
  // Exponents out of range mean the element came from a different field.
  void check_element(Fe a) const {
    if (a.v >= units_)
      throw Error("GF: element exponent " + std::to_string(a.v) + " out of range for GF(" +
                  std::to_string(p_) + "^" + std::to_string(e_) + ")");
  }

  void require_subfield_degree(int d) const {
    if (d < 1 || e_ % d != 0)
      throw Error("GF: degree " + std::to_string(d) + " does not define a subfield of GF(" +
                  std::to_string(p_) + "^" + std::to_string(e_) + ")");
  }

  void require_nested(int sub_d, int sup_d) const {
    require_subfield_degree(sup_d);
    if (sub_d < 1 || sup_d % sub_d != 0)
      throw Error("GF: " + std::to_string(sub_d) + " does not divide " + std::to_string(sup_d));
  }

  // Scans monic candidates x^e + c_{e-1}x^{e-1} + ... + c_0 by ascending
  // integer value of (c_0, ..., c_{e-1}) base p, and accepts the first whose
  // root x has multiplicative order exactly p^e - 1.  That single cycle test
  // certifies both irreducibility and primitivity: if x generates a group of
  // order p^e - 1 in F_p[x]/(f), every nonzero residue is a unit.
  void find_defining_polynomial() {
    for (long long nval = 1; nval < q_; ++nval) {
      if (nval % p_ == 0) continue;  // c_0 == 0: x divides f
      std::vector<long long> coeffs(e_ + 1, 0);
      long long v = nval;
      for (int i = 0; i < e_; ++i) {
        coeffs[i] = v % p_;
        v /= p_;
      }
      coeffs[e_] = 1;
      if (root_order_is_maximal(coeffs)) {
        poly_ = coeffs;
        return;
      }
    }
    throw Error("GF: no primitive polynomial found (unreachable)");
  }

  // Order-of-x test in F_p[x]/(f) by repeated multiplication by x.
  bool root_order_is_maximal(const std::vector<long long>& f) const {
    std::vector<long long> r(e_, 0);
    if (e_ == 1) {
      // residue ring is F_p; root is -c_0
      long long root = positive_mod(-f[0], p_);
      long long cur = 1;
      for (long long k = 1; k <= units_; ++k) {
        cur = (cur * root) % p_;
        if (cur == 1) return k == units_;
      }
      return false;
    }
    r[0] = 1;
    for (long long k = 1; k <= units_; ++k) {
      // multiply by x and reduce
      long long carry = r[e_ - 1];
      for (int i = e_ - 1; i > 0; --i) r[i] = r[i - 1];
      r[0] = 0;
      if (carry != 0)
        for (int i = 0; i < e_; ++i) r[i] = positive_mod(r[i] - carry * f[i], p_);
      bool is_one = r[0] == 1;
      for (int i = 1; is_one && i < e_; ++i) is_one = r[i] == 0;
      if (is_one) return k == units_;
      bool all_zero = true;
      for (int i = 0; all_zero && i < e_; ++i) all_zero = r[i] == 0;
      if (all_zero) return false;  // x was a zero divisor
    }
    return false;
  }

  void build_tables() {
    exp_enc_.assign(std::max<long long>(units_, 1), 0);
    log_.assign(q_, -1);
    // powers of x, encoded base p
    std::vector<long long> r(e_, 0);
    if (e_ == 1) {
      long long root = positive_mod(-poly_[0], p_);
      long long cur = 1;
      for (long long k = 0; k < std::max<long long>(units_, 1); ++k) {
        exp_enc_[k] = cur;
        log_[cur] = static_cast<int32_t>(k);
        cur = (cur * root) % p_;
      }
    } else {
      r[0] = 1;
      for (long long k = 0; k < units_; ++k) {
        long long enc = 0;
        for (int i = e_ - 1; i >= 0; --i) enc = enc * p_ + r[i];
        exp_enc_[k] = enc;
        log_[enc] = static_cast<int32_t>(k);
        long long carry = r[e_ - 1];
        for (int i = e_ - 1; i > 0; --i) r[i] = r[i - 1];
        r[0] = 0;
        if (carry != 0)
          for (int i = 0; i < e_; ++i) r[i] = positive_mod(r[i] - carry * poly_[i], p_);
      }
    }
    // Zech: g^{Z(k)} = 1 + g^k, sentinel -1 where 1 + g^k == 0
    zech_.assign(std::max<long long>(units_, 1), -1);
    for (long long k = 0; k < std::max<long long>(units_, 1); ++k) {
      long long enc = exp_enc_[k];
      long long c0 = enc % p_;
      long long bumped = enc - c0 + (c0 + 1) % p_;
      zech_[k] = bumped == 0 ? -1 : log_[bumped];
    }
  }

  long long p_;
  int e_;
  long long q_ = 0, units_ = 0;
  std::vector<long long> poly_;
  std::vector<int32_t> zech_;
  std::vector<int32_t> log_;
  std::vector<long long> exp_enc_;
};

/// x -> x^{p^j} on a fixed host field; composition adds exponents mod e.
struct FrobeniusAut {
  const GaloisField* field = nullptr;
  int j = 0;

  Fe operator()(Fe a) const { return field->frob(a, j); }
  FrobeniusAut then(const FrobeniusAut& o) const {
    return FrobeniusAut{field, static_cast<int>(positive_mod(j + o.j, field->e()))};
  }
  FrobeniusAut inverse() const {
    return FrobeniusAut{field, static_cast<int>(positive_mod(-j, field->e()))};
  }
  bool is_identity() const { return j % field->e() == 0; }
};

/// One named subfield of the ambient field, with a deterministic element order.
struct Subfield {
  int d = 1;               // degree over F_p
  long long size = 0;      // p^d
  Fe gen;                  // generator of the multiplicative group
  std::vector<Fe> units;   // gen^0, gen^1, ...
  std::vector<Fe> elems;   // zero first, then units

  /// Dense index of an element, usable as a table key.  zero -> 0, gen^i -> i+1.
  long long index(const GaloisField& F, Fe a) const {
    if (a.is_zero()) return 0;
    long long step = F.units() / (size - 1);
    return a.v / step + 1;
  }
};

/// Coordinates of F_{p^sup} over F_{p^sub} in the basis 1, w, w^2, ...,
/// where w generates F_{p^sup}.  Precomputed in both directions.
class Decomp {
 public:
  Decomp() = default;
  Decomp(const GaloisField& F, const Subfield& sub, const Subfield& sup) : sub_(&sub), sup_(&sup) {
    m_ = sup.d / sub.d;
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = F.pow(sup.gen, i);
    table_.assign(sup.size * m_, fe_zero());
    std::vector<char> seen(sup.size, 0);
    std::vector<long long> idx(m_, 0);
    // all |sub|^m combinations; bijectivity onto the big field certifies the basis
    while (true) {
      Fe v = fe_zero();
      for (int i = 0; i < m_; ++i) v = F.add(v, F.mul(sub.elems[idx[i]], basis_[i]));
      long long key = sup.index(F, v);
      if (seen[key]) throw Error("GF: generator powers do not form a basis");
      seen[key] = 1;
      for (int i = 0; i < m_; ++i) table_[key * m_ + i] = sub.elems[idx[i]];
      int pos = 0;
      while (pos < m_ && ++idx[pos] == static_cast<long long>(sub.elems.size())) idx[pos++] = 0;
      if (pos == m_) break;
    }
  }

  int dim() const { return m_; }
  const std::vector<Fe>& basis() const { return basis_; }

  /// Coordinates of a over the subfield, length dim().
  std::vector<Fe> coords(const GaloisField& F, Fe a) const {
    long long key = sup_->index(F, a);
    return std::vector<Fe>(table_.begin() + key * m_, table_.begin() + (key + 1) * m_);
  }

  Fe compose(const GaloisField& F, const std::vector<Fe>& c) const {
    Fe v = fe_zero();
    for (int i = 0; i < m_; ++i) v = F.add(v, F.mul(c[i], basis_[i]));
    return v;
  }

 private:
  const Subfield* sub_ = nullptr;
  const Subfield* sup_ = nullptr;
  int m_ = 0;
  std::vector<Fe> basis_;
  std::vector<Fe> table_;
};

/**
 * The scenario tower: F_p < F_q < F_{q^t} < F_{q^nt} realized as fixed fields
 * of Frobenius powers inside the single ambient field F_{p^(h t n)}.  One set
 * of tables serves every layer, and the subfield lattice is canonical.
 */
class Tower {
 public:
  Tower(long long p, int h, int t, int n)
      : p_(p), h_(h), t_(t), n_(n), field_(p, h * t * n) {
    if (h < 1 || t < 1 || n < 1) throw Error("Tower: degrees must be positive");
    fq_ = make_subfield(h);
    fqt_ = make_subfield(h * t);
    fqnt_ = make_subfield(h * t * n);
    if (t > 1) dec_q_qt_ = Decomp(field_, fq_, fqt_);
    if (n > 1) dec_qt_qnt_ = Decomp(field_, fqt_, fqnt_);
    if (t * n > 1) dec_q_qnt_ = Decomp(field_, fq_, fqnt_);
  }

  const GaloisField& F() const { return field_; }
  long long p() const { return p_; }
  int h() const { return h_; }
  int t() const { return t_; }
  int n() const { return n_; }
  long long q() const { return fq_.size; }
  long long qt() const { return fqt_.size; }
  long long qnt() const { return fqnt_.size; }
  int d_q() const { return h_; }
  int d_qt() const { return h_ * t_; }
  int d_qnt() const { return h_ * t_ * n_; }

  const Subfield& Fq() const { return fq_; }
  const Subfield& Fqt() const { return fqt_; }
  const Subfield& Fqnt() const { return fqnt_; }

  const Subfield& sub(int d) const {
    if (d == fq_.d) return fq_;
    if (d == fqt_.d) return fqt_;
    if (d == fqnt_.d) return fqnt_;
    throw Error("Tower: no cached subfield of degree " + std::to_string(d));
  }

  const Decomp& dec(int sub_d, int sup_d) const {
    if (sub_d == d_q() && sup_d == d_qt()) return dec_q_qt_;
    if (sub_d == d_qt() && sup_d == d_qnt()) return dec_qt_qnt_;
    if (sub_d == d_q() && sup_d == d_qnt()) return dec_q_qnt_;
    throw Error("Tower: no cached decomposition for that pair");
  }

  /// x -> x^{q^i} as an automorphism of the ambient field.
  FrobeniusAut frob_q(int i) const { return FrobeniusAut{&field_, static_cast<int>(positive_mod(h_ * static_cast<long long>(i), field_.e()))}; }

 private:
  Subfield make_subfield(int d) const {
    Subfield s;
    s.d = d;
    s.size = ipow(p_, d);
    s.gen = field_.subfield_gen(d);
    s.units.reserve(s.size - 1);
    for (long long k = 0; k + 1 < s.size; ++k) s.units.push_back(field_.pow(s.gen, k));
    s.elems.reserve(s.size);
    s.elems.push_back(fe_zero());
    s.elems.insert(s.elems.end(), s.units.begin(), s.units.end());
    return s;
  }

  long long p_;
  int h_, t_, n_;
  GaloisField field_;
  Subfield fq_, fqt_, fqnt_;
  Decomp dec_q_qt_, dec_qt_qnt_, dec_q_qnt_;
};

}  // namespace linset

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace linset {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested tables or enumerations exceed a hard size limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// b^e, or -1 if the result would exceed cap.
inline long long ipow_capped(long long b, int e, long long cap) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / b) return -1;
    r *= b;
  }
  return r;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long long mod_pow(long long b, long long e, long long m) {
  b %= m;
  if (b < 0) b += m;
  long long r = 1 % m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

inline long long euler_phi(long long n) {
  long long r = n;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      r -= r / d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

inline long long positive_mod(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace linset

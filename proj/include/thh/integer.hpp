#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "thh/error.hpp"

namespace thh {

using Int = boost::multiprecision::cpp_int;

/// Sentinel for the valuation of zero.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

inline Int ipow(const Int& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

/// Nonnegative residue of a modulo m (m > 0).
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// p-adic valuation of an integer; kInfinity for zero.
inline int vp(Int a, const Int& p) {
  if (a == 0) return kInfinity;
  if (a < 0) a = -a;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline int vp(std::int64_t a, std::int64_t p) { return vp(Int(a), Int(p)); }

inline Int binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  Int out = 1;
  for (unsigned i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

inline Int factorial(unsigned n) {
  Int out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

/// x^{-1} mod m for gcd(x, m) = 1.
inline Int inverse_mod(const Int& x, const Int& m) {
  Int a = mod(x, m), b = m, s0 = 1, s1 = 0;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (a != 1) throw Error(ErrorCode::NonUnit, "integer " + x.str() + " is not invertible mod " + m.str());
  return mod(s0, m);
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace thh

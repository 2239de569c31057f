#pragma once

#include <cstdint>
#include <string>

#include "thh/error.hpp"
#include "thh/integer.hpp"

namespace thh {

/// Z/p^M as a chain ring with uniformizer p.
class IntegersModPrimePower {
 public:
  using Elem = Int;

  IntegersModPrimePower(std::int64_t p, int M) : p_(p), M_(M) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, "p = " + std::to_string(p) + " is not prime");
    if (M < 1) throw Error(ErrorCode::InvalidPrecision, "M must be >= 1");
    modulus_ = ipow(Int(p), static_cast<unsigned>(M));
  }

  std::int64_t p() const { return p_; }
  int ramification() const { return 1; }
  int residue_degree() const { return 1; }
  /// Nilpotency index of the uniformizer.
  int length() const { return M_; }
  const Int& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return mod(Int(1), modulus_); }
  Elem pi() const { return mod(Int(p_), modulus_); }
  Elem from_int(const Int& n) const { return mod(n, modulus_); }
  Elem pi_power(int j) const { return j >= M_ ? Int(0) : ipow(Int(p_), static_cast<unsigned>(j)); }

  Elem add(const Elem& a, const Elem& b) const { return mod(a + b, modulus_); }
  Elem sub(const Elem& a, const Elem& b) const { return mod(a - b, modulus_); }
  Elem neg(const Elem& a) const { return mod(-a, modulus_); }
  Elem mul(const Elem& a, const Elem& b) const { return mod(a * b, modulus_); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_unit(const Elem& a) const { return a % p_ != 0; }

  int valuation(const Elem& a) const { return a == 0 ? kInfinity : vp(a, Int(p_)); }
  Elem unit_inverse(const Elem& a) const { return inverse_mod(a, modulus_); }

  /// Least nonnegative b with b * p^j = a.
  Elem exact_div_pi(const Elem& a, int j) const {
    if (valuation(a) < j) throw Error(ErrorCode::NotDivisible, a.str() + " is not divisible by p^" + std::to_string(j));
    if (a == 0) return 0;
    return a / ipow(Int(p_), static_cast<unsigned>(j));
  }

  std::string to_string(const Elem& a) const { return a.str(); }

  friend bool operator==(const IntegersModPrimePower& a, const IntegersModPrimePower& b) {
    return a.p_ == b.p_ && a.M_ == b.M_;
  }

 private:
  std::int64_t p_;
  int M_;
  Int modulus_;
};

}  // namespace thh

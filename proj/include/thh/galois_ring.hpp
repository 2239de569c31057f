#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thh/error.hpp"
#include "thh/integer.hpp"

namespace thh {

namespace fp_poly {

// Dense polynomials over F_p, little-endian, no trailing zeros.
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly normalize(Poly a, std::int64_t p) {
  for (auto& c : a) c = ((c % p) + p) % p;
  trim(a);
  return a;
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  return static_cast<std::int64_t>(inverse_mod(Int(a), Int(p)));
}

inline Poly sub(Poly a, const Poly& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return out;
}

inline Poly rem(Poly a, const Poly& m, std::int64_t p) {
  trim(a);
  const std::int64_t lead_inv = inv(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::int64_t li = inv(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

/// t^(p^j) mod m.
inline Poly frobenius_power_of_t(const Poly& m, std::int64_t p, int j) {
  Poly x = rem(Poly{0, 1}, m, p);
  for (int step = 0; step < j; ++step) {
    Poly result{1};
    Poly base = x;
    for (std::int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) result = rem(mul(result, base, p), m, p);
      base = rem(mul(base, base, p), m, p);
    }
    x = std::move(result);
  }
  return x;
}

/// Rabin's test: m of degree f is irreducible iff t^{p^f} = t mod m and
/// gcd(t^{p^{f/r}} - t, m) = 1 for every prime r dividing f.
inline bool is_irreducible(const Poly& m_in, std::int64_t p) {
  const Poly m = normalize(m_in, p);
  if (m.size() < 2) return false;
  const int f = static_cast<int>(m.size()) - 1;
  const Poly t = rem(Poly{0, 1}, m, p);
  if (sub(frobenius_power_of_t(m, p, f), t, p).size() != 0) return false;
  for (int r = 2; r <= f; ++r) {
    if (f % r != 0 || !is_prime(r)) continue;
    const Poly g = gcd(m, sub(frobenius_power_of_t(m, p, f / r), t, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace fp_poly

/// Parameters of the Galois ring GR(p^M, f) = (Z/p^M)[t]/(u(t)).
struct GaloisRingSpec {
  std::int64_t p = 2;
  int M = 1;
  int f = 1;
  /// Monic, little-endian, length f + 1.
  std::vector<Int> u{0, 1};

  friend bool operator==(const GaloisRingSpec&, const GaloisRingSpec&) = default;
};

struct GaloisRingElem {
  std::vector<Int> coeffs;

  friend bool operator==(const GaloisRingElem&, const GaloisRingElem&) = default;
};

/// Residue-field element: f residues mod p.
using ResidueElem = std::vector<std::int64_t>;

class GaloisRing {
 public:
  explicit GaloisRing(GaloisRingSpec spec) : spec_(std::move(spec)) {
    if (!is_prime(spec_.p))
      throw Error(ErrorCode::InvalidPrime, "p = " + std::to_string(spec_.p) + " is not prime");
    if (spec_.M < 1) throw Error(ErrorCode::InvalidPrecision, "precision exponent M must be >= 1");
    if (spec_.f < 1) throw Error(ErrorCode::InvalidPrecision, "residue degree f must be >= 1");
    if (static_cast<int>(spec_.u.size()) != spec_.f + 1 || mod(spec_.u.back(), Int(spec_.p)) != 1)
      throw Error(ErrorCode::ReducibleModulus, "u must be monic of degree f = " + std::to_string(spec_.f));
    fp_poly::Poly reduced;
    for (const auto& c : spec_.u) reduced.push_back(static_cast<std::int64_t>(mod(c, Int(spec_.p))));
    if (!fp_poly::is_irreducible(reduced, spec_.p))
      throw Error(ErrorCode::ReducibleModulus, "u is reducible mod p = " + std::to_string(spec_.p));
    modulus_ = ipow(Int(spec_.p), static_cast<unsigned>(spec_.M));
    for (auto& c : spec_.u) c = mod(c, modulus_);
    spec_.u.back() = 1;
  }

  const GaloisRingSpec& spec() const { return spec_; }
  std::int64_t p() const { return spec_.p; }
  int f() const { return spec_.f; }
  int precision() const { return spec_.M; }
  const Int& modulus() const { return modulus_; }
  /// Residue field order q = p^f.
  Int residue_order() const { return ipow(Int(spec_.p), static_cast<unsigned>(spec_.f)); }

  GaloisRingElem zero() const { return GaloisRingElem{std::vector<Int>(spec_.f, 0)}; }
  GaloisRingElem one() const { return from_int(1); }
  GaloisRingElem from_int(const Int& n) const {
    GaloisRingElem out = zero();
    out.coeffs[0] = mod(n, modulus_);
    return out;
  }
  /// Reduces an arbitrary-length integer polynomial in t.
  GaloisRingElem from_coeffs(std::vector<Int> raw) const {
    for (auto& c : raw) c = mod(c, modulus_);
    reduce_poly(raw);
    raw.resize(spec_.f, 0);
    return GaloisRingElem{std::move(raw)};
  }

  GaloisRingElem add(const GaloisRingElem& a, const GaloisRingElem& b) const {
    check(a);
    check(b);
    GaloisRingElem out = a;
    for (int i = 0; i < spec_.f; ++i) out.coeffs[i] = mod(out.coeffs[i] + b.coeffs[i], modulus_);
    return out;
  }
  GaloisRingElem sub(const GaloisRingElem& a, const GaloisRingElem& b) const { return add(a, neg(b)); }
  GaloisRingElem neg(const GaloisRingElem& a) const {
    check(a);
    GaloisRingElem out = a;
    for (auto& c : out.coeffs) c = mod(-c, modulus_);
    return out;
  }
  GaloisRingElem mul(const GaloisRingElem& a, const GaloisRingElem& b) const {
    check(a);
    check(b);
    std::vector<Int> prod(2 * spec_.f - 1, 0);
    for (int i = 0; i < spec_.f; ++i) {
      if (a.coeffs[i] == 0) continue;
      for (int j = 0; j < spec_.f; ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    for (auto& c : prod) c = mod(c, modulus_);
    reduce_poly(prod);
    prod.resize(spec_.f, 0);
    return GaloisRingElem{std::move(prod)};
  }
  GaloisRingElem scale(const GaloisRingElem& a, const Int& n) const {
    check(a);
    GaloisRingElem out = a;
    for (auto& c : out.coeffs) c = mod(c * n, modulus_);
    return out;
  }
  GaloisRingElem pow(GaloisRingElem base, Int exp) const {
    GaloisRingElem result = one();
    while (exp > 0) {
      if ((exp & 1) != 0) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

  bool is_zero(const GaloisRingElem& a) const {
    for (const auto& c : a.coeffs)
      if (c != 0) return false;
    return true;
  }
  bool is_unit(const GaloisRingElem& a) const {
    for (const auto& c : a.coeffs)
      if (c % spec_.p != 0) return true;
    return false;
  }
  /// Minimum p-adic valuation of the t-coefficients; kInfinity for zero.
  int valuation(const GaloisRingElem& a) const {
    int v = kInfinity;
    for (const auto& c : a.coeffs) v = std::min(v, c == 0 ? kInfinity : vp(c, Int(spec_.p)));
    return v >= spec_.M ? kInfinity : v;
  }

  /// Residue-field inversion followed by Newton iteration b <- b(2 - ab).
  GaloisRingElem inv(const GaloisRingElem& a) const {
    if (!is_unit(a)) throw Error(ErrorCode::NonUnit, "Galois ring element is divisible by p");
    GaloisRingElem b = pow(a, residue_order() - 2);
    const GaloisRingElem two = from_int(2);
    for (int precision = 1; precision < spec_.M; precision *= 2) b = mul(b, sub(two, mul(a, b)));
    return b;
  }

  /// The unique lift of a with result^q = result.
  GaloisRingElem teichmuller(const ResidueElem& a) const {
    if (static_cast<int>(a.size()) != spec_.f)
      throw Error(ErrorCode::SpecMismatch, "residue element must have f entries");
    std::vector<Int> raw;
    for (auto c : a) raw.push_back(Int(c));
    GaloisRingElem lift = from_coeffs(std::move(raw));
    return pow(lift, ipow(residue_order(), static_cast<unsigned>(spec_.M - 1)));
  }

  std::string to_string(const GaloisRingElem& a) const {
    if (spec_.f == 1) return a.coeffs[0].str();
    std::string out;
    for (int i = spec_.f - 1; i >= 0; --i) {
      if (a.coeffs[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || a.coeffs[i] != 1) out += a.coeffs[i].str();
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const GaloisRingElem& a) const {
    if (static_cast<int>(a.coeffs.size()) != spec_.f)
      throw Error(ErrorCode::SpecMismatch, "Galois ring element has wrong length");
  }
  void reduce_poly(std::vector<Int>& a) const {
    const int f = spec_.f;
    for (int d = static_cast<int>(a.size()) - 1; d >= f; --d) {
      const Int c = a[d];
      if (c == 0) continue;
      a[d] = 0;
      for (int i = 0; i < f; ++i) a[d - f + i] = mod(a[d - f + i] - c * spec_.u[i], modulus_);
    }
  }

  GaloisRingSpec spec_;
  Int modulus_;
};

}  // namespace thh

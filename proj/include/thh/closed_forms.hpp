#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thh/cdvr.hpp"
#include "thh/dga.hpp"
#include "thh/error.hpp"
#include "thh/fin_module.hpp"
#include "thh/integer.hpp"
#include "thh/quotient_ring.hpp"

namespace thh {

/// v_p(l!) = sum over i of floor(l / p^i).
inline int legendre_vp(std::int64_t l, std::int64_t p) {
  int out = 0;
  for (Int q = p; q <= l; q *= p) out += static_cast<int>(Int(l) / q);
  return out;
}

/// An exact p-adic valuation v_pi / e; comparisons cross-multiply.
struct RationalValuation {
  Int numerator = 0;
  int denominator = 1;
  bool infinite = false;

  /// this >= a / b for integers a >= 0, b > 0.
  bool at_least(const Int& a, const Int& b) const { return infinite || numerator * b >= a * denominator; }

  friend bool operator==(const RationalValuation& x, const RationalValuation& y) {
    if (x.infinite || y.infinite) return x.infinite == y.infinite;
    return x.numerator * y.denominator == y.numerator * x.denominator;
  }
  friend bool operator<(const RationalValuation& x, const RationalValuation& y) {
    if (x.infinite) return false;
    if (y.infinite) return true;
    return x.numerator * y.denominator < y.numerator * x.denominator;
  }
  friend bool operator>=(const RationalValuation& x, const RationalValuation& y) { return !(x < y); }

  std::string to_string() const {
    if (infinite) return "inf";
    const Int g = boost::multiprecision::gcd(numerator < 0 ? Int(-numerator) : numerator, Int(denominator));
    const Int num = g == 0 ? numerator : numerator / g, den = g == 0 ? Int(denominator) : Int(denominator) / g;
    return den == 1 ? num.str() : num.str() + "/" + den.str();
  }
};

inline RationalValuation vp_rational(int v_pi, int e) {
  if (v_pi == kInfinity) return RationalValuation{0, e, true};
  return RationalValuation{Int(v_pi), e, false};
}

/// v_pi(k pi^{k-1}) in A itself (not truncated); kInfinity when it vanishes in equal characteristic.
inline int beta_valuation(const CdvrSpec& cdvr, int k) {
  if (!cdvr.mixed()) return vp(std::int64_t(k), cdvr.p) > 0 ? kInfinity : k - 1;
  const int bound = cdvr.e() * vp(std::int64_t(k), cdvr.p) + k;
  const QuotientRing ring(cdvr, bound);
  return ring.valuation(ring.scale(ring.pi_power(k - 1), Int(k)));
}

/// Result of a closed form evaluated against a declared precision cap.
struct CappedModule {
  FinModule module;
  int exponent = 0;
  int cap = 0;
  bool at_cap = false;
};

/// Default soundness margin for the coefficient computations: e (v_p(n) + 2) + d + 2.
inline int lm_precision_cap(const CdvrSpec& cdvr, int n) {
  return cdvr.e() * (vp(std::int64_t(n), cdvr.p) + 2) + phi_prime_valuation(cdvr) + 2;
}

namespace detail {

inline CappedModule capped_cyclic(const CdvrSpec& cdvr, int exponent, std::optional<int> cap) {
  const int K = cap.value_or(0);
  const ModuleContext ctx{cdvr.p, cdvr.f, cdvr.e(), K};
  const int c = std::min(exponent, K);
  return CappedModule{FinModule::from_exponents(ctx, {c}), exponent, K, exponent >= K};
}

}  // namespace detail

/// THH_{2n-1}(A; Z_p) = A / n phi'(pi), as the cyclic module of exponent e v_p(n) + d.
inline CappedModule lm_module(const CdvrSpec& cdvr, int n, std::optional<int> cap = std::nullopt) {
  if (!cdvr.mixed()) throw Error(ErrorCode::SpecMismatch, "this closed form needs mixed characteristic");
  if (n < 1) throw Error(ErrorCode::SpecMismatch, "n must be positive");
  const int exponent = cdvr.e() * vp(std::int64_t(n), cdvr.p) + phi_prime_valuation(cdvr);
  return detail::capped_cyclic(cdvr, exponent, cap ? cap : std::optional<int>(lm_precision_cap(cdvr, n)));
}

/// Logarithmic variant: A / n pi phi'(pi), exponent e v_p(n) + d + 1.
inline CappedModule log_lm_module(const CdvrSpec& cdvr, int n, std::optional<int> cap = std::nullopt) {
  if (!cdvr.mixed()) throw Error(ErrorCode::SpecMismatch, "this closed form needs mixed characteristic");
  if (n < 1) throw Error(ErrorCode::SpecMismatch, "n must be positive");
  const int exponent = cdvr.e() * vp(std::int64_t(n), cdvr.p) + phi_prime_valuation(cdvr) + 1;
  return detail::capped_cyclic(cdvr, exponent, cap ? cap : std::optional<int>(lm_precision_cap(cdvr, n)));
}

/// Z/p^k (even degrees) plus the sum over 1 <= i <= m of Z/gcd(p^k, i), m = ceil(degree / 2).
inline AbelianInvariants brun_invariants(std::int64_t p, int k, int degree) {
  if (k < 2) throw Error(ErrorCode::KOutOfRange, "this closed form needs k >= 2");
  if (degree < 0) throw Error(ErrorCode::SpecMismatch, "degree must be nonnegative");
  AbelianInvariants out;
  if (degree % 2 == 0) out[k] += 1;
  const int m = (degree + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    const int c = std::min(vp(std::int64_t(i), p), k);
    if (c > 0) out[c] += 1;
  }
  return out;
}

/// A' = F_q: one copy of the residue field in every even degree.
inline FinModule bokstedt_module(const QuotientRing& ring, int degree) {
  if (ring.length() != 1) throw Error(ErrorCode::KOutOfRange, "this closed form needs k = 1");
  return FinModule::from_exponents(ring.module_context(), degree % 2 == 0 ? std::vector<int>{1} : std::vector<int>{});
}

struct RegimeReport {
  bool mixed = true;
  std::int64_t p = 2;
  int e = 1;
  int f = 1;
  int k = 1;
  /// v_pi(phi'(pi)); absent in equal characteristic.
  std::optional<int> phi_prime_valuation;
  /// v_pi(k pi^{k-1}) in A; kInfinity if it vanishes.
  int beta_valuation = 0;
  /// 1..4; 0 in equal characteristic.  When two cases hold the one admitting
  /// a split polynomial generator (1 or 4) is reported.
  int degree_two_case = 0;
  std::array<bool, 4> case_holds{};
  bool ksmall = false;
  bool kbig = false;
  bool in_between = false;
  /// v_p(k pi^{k-1} / phi'(pi)), when that quotient lies in A.
  std::optional<RationalValuation> ratio_vp;
};

inline RegimeReport classify(const QuotientRing& ring) {
  const CdvrSpec& cdvr = ring.cdvr();
  RegimeReport r;
  r.mixed = cdvr.mixed();
  r.p = cdvr.p;
  r.e = cdvr.e();
  r.f = cdvr.f;
  r.k = ring.length();
  const bool p_divides_k = vp(std::int64_t(r.k), r.p) > 0;
  r.beta_valuation = beta_valuation(cdvr, r.k);
  if (!r.mixed) {
    r.ksmall = true;
    r.kbig = p_divides_k;
    return r;
  }
  const int d = phi_prime_valuation(cdvr);
  r.phi_prime_valuation = d;
  const int k = r.k;
  r.case_holds = {p_divides_k && d >= k, p_divides_k && d <= k, !p_divides_k && d <= k - 1,
                  !p_divides_k && d >= k - 1};
  r.degree_two_case = r.case_holds[0] ? 1 : r.case_holds[3] ? 4 : r.case_holds[1] ? 2 : 3;
  if (r.beta_valuation == kInfinity || r.beta_valuation >= d)
    r.ratio_vp = r.beta_valuation == kInfinity ? vp_rational(kInfinity, r.e) : vp_rational(r.beta_valuation - d, r.e);
  r.ksmall = r.case_holds[0] || r.case_holds[3];
  r.kbig = p_divides_k || (r.ratio_vp && r.ratio_vp->at_least(1, r.p - 1));
  r.in_between = !r.ksmall && !r.kbig;
  return r;
}

inline std::string regime_name(const RegimeReport& r) {
  if (r.ksmall && r.kbig) return "ksmall+kbig";
  if (r.ksmall) return "ksmall";
  if (r.kbig) return "kbig";
  return "inBetween";
}

/// Degree 2m: A/pi^k plus m copies of A/pi^g; degree 2m-1: m copies; g = min(v_pi(k pi^{k-1}), k).
inline FinModule ksmall_invariants(const QuotientRing& ring, int degree) {
  if (!classify(ring).ksmall) throw Error(ErrorCode::RegimeMismatch, "the small-k closed form does not apply");
  const int k = ring.length();
  const int g = std::min(beta_valuation(ring.cdvr(), k), k);
  std::vector<int> exps;
  if (degree % 2 == 0) exps.push_back(k);
  for (int i = 1; i <= (degree + 1) / 2; ++i) exps.push_back(g);
  return FinModule::from_exponents(ring.module_context(), exps);
}

/// Degree 2m: A/pi^k plus A/gcd(i phi'(pi), pi^k) for 1 <= i <= m; degree 2m-1 without the A/pi^k.
/// In equal characteristic (p | k) every differential vanishes and each summand is A'.
inline FinModule kbig_invariants(const QuotientRing& ring, int degree) {
  if (!classify(ring).kbig) throw Error(ErrorCode::RegimeMismatch, "the big-k closed form does not apply");
  const int k = ring.length();
  const CdvrSpec& cdvr = ring.cdvr();
  std::vector<int> exps;
  if (degree % 2 == 0) exps.push_back(k);
  const int d = cdvr.mixed() ? phi_prime_valuation(cdvr) : 0;
  for (int i = 1; i <= (degree + 1) / 2; ++i)
    exps.push_back(cdvr.mixed() ? std::min(cdvr.e() * vp(std::int64_t(i), cdvr.p) + d, k) : k);
  return FinModule::from_exponents(ring.module_context(), exps);
}

struct DegreeTwoModule {
  FinModule module;
  int degree_two_case = 0;
  /// Symbolic generators: the free summand first, then the torsion summand.
  std::array<std::string, 2> generator_labels;
};

/// THH_2(A') = A' + A/gcd(phi'(pi), k pi^{k-1}, pi^k) with the generators of the active case.
inline DegreeTwoModule degree_two_module(const QuotientRing& ring) {
  if (!ring.mixed()) throw Error(ErrorCode::SpecMismatch, "this closed form needs mixed characteristic");
  const RegimeReport r = classify(ring);
  const int k = r.k;
  const int c = std::min({*r.phi_prime_valuation, r.beta_valuation, k});
  static const std::array<std::array<std::string, 2>, 4> labels{{
      {"x", "y"},
      {"y", "(π^k/φ'(π))·x"},
      {"y' = y - (kπ^(k-1)/φ'(π))·x", "(π^k/φ'(π))·x"},
      {"x' = x - (φ'(π)/(kπ^(k-1)))·y", "π·y"},
  }};
  return DegreeTwoModule{FinModule::from_exponents(ring.module_context(), {k, c}), r.degree_two_case,
                         labels[r.degree_two_case - 1]};
}

/// num / den computed in a quotient of A large enough that the result is exact in the target ring.
inline QElem exact_quotient(const QuotientRing& target, const std::function<QElem(const QuotientRing&)>& num,
                            const std::function<QElem(const QuotientRing&)>& den) {
  const CdvrSpec& cdvr = target.cdvr();
  for (int K = target.length() + std::max(cdvr.e(), 1);; K *= 2) {
    const QuotientRing big(cdvr, K);
    const QElem d = den(big);
    const int v = big.valuation(d);
    if (v == kInfinity || v + target.length() > K) continue;
    const QElem n = num(big);
    if (big.valuation(n) < v) throw Error(ErrorCode::NotDivisible, "quotient does not lie in A");
    const auto [unit, vv] = big.unit_part(d);
    return target.map_from(big.mul(big.exact_div_pi(n, vv), big.unit_inverse(unit)));
  }
}

/// Cycles of degree 2 generating THH_2(A'), in the order of degree_two_module's labels.
inline std::array<ChainElt, 2> degree_two_generators(const DgaSpec& spec) {
  if (spec.variant != DgaVariant::QuotientThh)
    throw Error(ErrorCode::SpecMismatch, "degree-two generators are defined for quotient DGAs in mixed characteristic");
  const QuotientRing& ring = spec.ring;
  const int k = ring.length();
  const auto x = monomial(spec, {1, 0, 0}), y = monomial(spec, {0, 1, 0});
  const auto phi_prime = [](const QuotientRing& R) { return R.phi_prime(); };
  const auto beta = [k](const QuotientRing& R) { return R.scale(R.pi_power(k - 1), Int(k)); };
  const auto pi_k = [k](const QuotientRing& R) { return R.pi_power(k); };
  switch (classify(ring).degree_two_case) {
    case 1:
      return {x, y};
    case 2:
      return {y, scale(spec, exact_quotient(ring, pi_k, phi_prime), x)};
    case 3:
      return {sub(spec, y, scale(spec, exact_quotient(ring, beta, phi_prime), x)),
              scale(spec, exact_quotient(ring, pi_k, phi_prime), x)};
    default:
      return {sub(spec, x, scale(spec, exact_quotient(ring, phi_prime, beta), y)), scale(spec, ring.pi(), y)};
  }
}

/// The divided powers (y')^[i], i <= ceiling, of the cycle y' = y - c x, c = k pi^{k-1} / phi'(pi).
struct DividedPowerFamily {
  QElem c;
  /// (-1)^l c^l / l!, l = 0..ceiling.
  std::vector<QElem> coefficients;
  std::vector<ChainElt> powers;
};

inline DividedPowerFamily divided_power_family(const DgaSpec& spec, int ceiling) {
  if (spec.variant != DgaVariant::QuotientThh && spec.variant != DgaVariant::EqualCharQuotient)
    throw Error(ErrorCode::SpecMismatch, "divided power families live in quotient DGAs");
  const QuotientRing& ring = spec.ring;
  const CdvrSpec& cdvr = ring.cdvr();
  const int k = ring.length();
  const std::int64_t p = cdvr.p;
  DividedPowerFamily out{ring.zero(), {}, {}};

  if (vp(std::int64_t(k), p) > 0) {
    out.coefficients.push_back(ring.one());
    for (int l = 1; l <= ceiling; ++l) out.coefficients.push_back(ring.zero());
  } else {
    const RegimeReport r = classify(ring);
    if (!r.kbig) throw Error(ErrorCode::ValuationTooSmall, "v_p(k pi^{k-1} / phi'(pi)) < 1/(p-1)");
    const int d = *r.phi_prime_valuation, e = cdvr.e();
    const int vmax = legendre_vp(ceiling, p);
    const QuotientRing big(cdvr, k + d + e * (vmax + 2));
    const auto [den_unit, den_v] = big.unit_part(big.phi_prime());
    const QElem c = big.mul(big.exact_div_pi(big.scale(big.pi_power(k - 1), Int(k)), den_v), big.unit_inverse(den_unit));
    out.c = ring.map_from(c);
    QElem power = big.one();
    for (int l = 0; l <= ceiling; ++l) {
      if (l > 0) power = big.mul(power, big.neg(c));
      const Int fact = factorial(static_cast<unsigned>(l));
      const int v = vp(fact, Int(p));
      const Int cofactor = fact / ipow(Int(p), static_cast<unsigned>(v));
      QElem coef = big.unit_inverse(big.from_int(cofactor));
      if (v > 0) {
        const auto [p_unit, p_v] = big.unit_part(big.from_int(ipow(Int(p), static_cast<unsigned>(v))));
        coef = big.mul(coef, big.mul(big.exact_div_pi(power, p_v), big.unit_inverse(p_unit)));
      } else {
        coef = big.mul(coef, power);
      }
      out.coefficients.push_back(ring.map_from(coef));
    }
  }

  for (int i = 0; i <= ceiling; ++i) {
    ChainElt term{2 * i, {}};
    for (int l = 0; l <= i; ++l) term = add(spec, term, monomial(spec, {l, i - l, 0}, out.coefficients[l]));
    if (!differential(spec, term).is_zero())
      throw Error(ErrorCode::NotACycle, "divided power " + std::to_string(i) + " is not a cycle");
    out.powers.push_back(std::move(term));
  }
  return out;
}

}  // namespace thh

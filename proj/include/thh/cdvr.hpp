#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thh/error.hpp"
#include "thh/galois_ring.hpp"
#include "thh/integer.hpp"

namespace thh {

enum class Characteristic { Mixed, Equal };

/// A complete DVR with perfect residue field F_q, q = p^f.
///
/// Mixed characteristic: A = W(F_q)[z]/(phi) for a monic Eisenstein phi with
/// coefficients in W(F_q), presented by integer t-polynomials over u(t).
/// Equal characteristic: A = F_q[[z]].  In both cases the uniformizer is the
/// class of z.
struct CdvrSpec {
  Characteristic characteristic = Characteristic::Mixed;
  std::int64_t p = 2;
  int f = 1;
  /// Monic lift of an irreducible polynomial over F_p, little-endian.
  std::vector<Int> u{0, 1};
  /// phi_0, ..., phi_e; each entry has f integer t-coefficients.
  std::vector<std::vector<Int>> phi;

  bool mixed() const { return characteristic == Characteristic::Mixed; }
  /// Ramification index; 0 in equal characteristic where it plays no role.
  int e() const { return mixed() ? static_cast<int>(phi.size()) - 1 : 0; }

  friend bool operator==(const CdvrSpec&, const CdvrSpec&) = default;

  /// Mixed characteristic over Z_p with integer phi coefficients.
  static CdvrSpec mixed_over_zp(std::int64_t p, const std::vector<std::int64_t>& phi_coeffs) {
    CdvrSpec s;
    s.p = p;
    for (auto c : phi_coeffs) s.phi.push_back({Int(c)});
    return s;
  }
  /// Mixed characteristic over W(F_q) with integer (constant-in-t) phi coefficients.
  static CdvrSpec mixed_over_witt(std::int64_t p, int f, std::vector<Int> u,
                                  const std::vector<std::int64_t>& phi_coeffs) {
    CdvrSpec s;
    s.p = p;
    s.f = f;
    s.u = std::move(u);
    for (auto c : phi_coeffs) {
      std::vector<Int> entry(f, 0);
      entry[0] = c;
      s.phi.push_back(std::move(entry));
    }
    return s;
  }
  static CdvrSpec equal_char(std::int64_t p, int f = 1, std::vector<Int> u = {0, 1}) {
    CdvrSpec s;
    s.characteristic = Characteristic::Equal;
    s.p = p;
    s.f = f;
    s.u = std::move(u);
    return s;
  }
};

/// The residue Galois ring GR(p^M, f) underlying the spec.
inline GaloisRing base_ring(const CdvrSpec& spec, int M) {
  return GaloisRing(GaloisRingSpec{spec.p, M, spec.f, spec.u});
}

/// Throws with a distinct code per violated invariant.
inline void validate(const CdvrSpec& spec) {
  if (!is_prime(spec.p)) throw Error(ErrorCode::InvalidPrime, "p = " + std::to_string(spec.p) + " is not prime");
  // Irreducibility of u is checked by the Galois ring constructor.
  (void)base_ring(spec, 2);
  if (!spec.mixed()) return;

  const int e = spec.e();
  if (e < 1) throw Error(ErrorCode::InvalidEisenstein, "phi must have degree >= 1");
  const Int p(spec.p);
  for (const auto& c : spec.phi)
    if (static_cast<int>(c.size()) != spec.f)
      throw Error(ErrorCode::InvalidEisenstein, "every phi coefficient must have f = " + std::to_string(spec.f) +
                                                    " entries");
  const auto& lead = spec.phi.back();
  bool monic = lead[0] == 1;
  for (int j = 1; j < spec.f; ++j) monic = monic && lead[j] == 0;
  if (!monic) throw Error(ErrorCode::InvalidEisenstein, "phi must be monic (leading coefficient exactly 1)");
  for (int i = 0; i < e; ++i)
    for (const auto& c : spec.phi[i])
      if (mod(c, p) != 0)
        throw Error(ErrorCode::InvalidEisenstein,
                    "non-leading coefficient of z^" + std::to_string(i) + " is not divisible by p");
  bool exact = false;
  for (const auto& c : spec.phi[0]) exact = exact || mod(c, p * p) != 0;
  if (!exact) throw Error(ErrorCode::InvalidEisenstein, "constant term of phi must have p-valuation exactly 1");
}

inline std::string describe(const CdvrSpec& spec) {
  std::string out = spec.mixed() ? "mixed" : "equal";
  out += " p=" + std::to_string(spec.p) + " f=" + std::to_string(spec.f);
  if (spec.mixed()) {
    out += " phi=[";
    for (std::size_t i = 0; i < spec.phi.size(); ++i) {
      if (i) out += ",";
      if (spec.f == 1) {
        out += spec.phi[i][0].str();
      } else {
        out += "[";
        for (int j = 0; j < spec.f; ++j) out += (j ? "," : "") + spec.phi[i][j].str();
        out += "]";
      }
    }
    out += "]";
  }
  return out;
}

}  // namespace thh

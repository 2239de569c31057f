#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "thh/error.hpp"
#include "thh/integer.hpp"
#include "thh/quotient_ring.hpp"

namespace thh {

/// p-exponent -> multiplicity of the cyclic groups Z/p^exponent.
using AbelianInvariants = std::map<int, int>;

/// Underlying abelian group of the cyclic module A/pi^c.
///
/// In mixed characteristic A/pi^c = sum over b < min(c, e) of W/p^{ceil((c-b)/e)} z^b,
/// each W/p^m being (Z/p^m)^f.  In equal characteristic it is (Z/p)^{cf}.
inline AbelianInvariants abelian_invariants_of_cyclic(int c, const ModuleContext& ctx) {
  AbelianInvariants out;
  if (c <= 0) return out;
  if (ctx.e == 0) {
    out[1] += c * ctx.f;
    return out;
  }
  for (int b = 0; b < std::min(c, ctx.e); ++b) out[ceil_div(c - b, ctx.e)] += ctx.f;
  return out;
}

inline void merge_into(AbelianInvariants& target, const AbelianInvariants& more) {
  for (const auto& [exp, mult] : more) target[exp] += mult;
}

/// "Z/4 ⊕ (Z/2)^3", smallest groups first.
inline std::string abelian_to_string(std::int64_t p, const AbelianInvariants& inv) {
  if (inv.empty()) return "0";
  std::string out;
  for (const auto& [exp, mult] : inv) {
    std::string group = "Z/" + ipow(Int(p), static_cast<unsigned>(exp)).str();
    if (mult > 1) group = "(" + group + ")^" + std::to_string(mult);
    out += (out.empty() ? "" : " ⊕ ") + group;
  }
  return out;
}

/// A finitely generated module over a chain ring: a direct sum of A/pi^c, 1 <= c <= k.
struct FinModule {
  ModuleContext context;
  /// Sorted ascending.
  std::vector<int> pi_exponents;

  static FinModule from_exponents(const ModuleContext& ctx, std::vector<int> exps) {
    FinModule m{ctx, {}};
    for (int c : exps) {
      if (c < 0 || c > ctx.k) throw Error(ErrorCode::SpecMismatch, "pi-exponent out of range");
      if (c > 0) m.pi_exponents.push_back(c);
    }
    std::sort(m.pi_exponents.begin(), m.pi_exponents.end());
    return m;
  }

  bool is_zero() const { return pi_exponents.empty(); }

  AbelianInvariants abelian() const {
    AbelianInvariants out;
    for (int c : pi_exponents) merge_into(out, abelian_invariants_of_cyclic(c, context));
    return out;
  }

  /// log_p of the order: f times the sum of the exponents.
  int log_order() const {
    int total = 0;
    for (int c : pi_exponents) total += c;
    return total * context.f;
  }

  std::string to_string() const {
    if (pi_exponents.empty()) return "0";
    std::string out;
    for (int c : pi_exponents) {
      std::string term = "A/π";
      if (c > 1) term += "^" + std::to_string(c);
      out += (out.empty() ? "" : " ⊕ ") + term;
    }
    return out;
  }

  friend bool operator==(const FinModule& a, const FinModule& b) {
    return a.context == b.context && a.pi_exponents == b.pi_exponents;
  }
};

}  // namespace thh

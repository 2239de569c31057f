#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thh/cdvr.hpp"
#include "thh/chain_linalg.hpp"
#include "thh/error.hpp"
#include "thh/fin_module.hpp"
#include "thh/integer.hpp"
#include "thh/quotient_ring.hpp"

namespace thh {

enum class DgaVariant { QuotientThh, EqualCharQuotient, CdvrWithCoeffs, LogCdvr };

inline const char* to_string(DgaVariant v) {
  switch (v) {
    case DgaVariant::QuotientThh: return "QuotientThh";
    case DgaVariant::EqualCharQuotient: return "EqualCharQuotient";
    case DgaVariant::CdvrWithCoeffs: return "CdvrWithCoeffs";
    case DgaVariant::LogCdvr: return "LogCdvr";
  }
  return "?";
}

/// Monomial x^i y^[j] (d pi)^eps.
struct BasisElt {
  int i = 0;
  int j = 0;
  int eps = 0;

  int degree() const { return 2 * i + 2 * j + eps; }
  auto operator<=>(const BasisElt&) const = default;
};

/// The graded algebra A'[x]<y> (x) Lambda(d pi) (or A'[x] (x) Lambda(d pi) without y)
/// with differential  d x = alpha d pi,  d y^[j] = beta y^[j-1] d pi,  d(d pi) = 0.
struct DgaSpec {
  QuotientRing ring;
  DgaVariant variant = DgaVariant::QuotientThh;
  QElem alpha;
  std::optional<QElem> beta;
  std::string odd_name = "dπ";

  bool has_y() const { return beta.has_value(); }

  /// THH of A' = A/pi^k: alpha = phi'(pi) (0 in equal characteristic), beta = k pi^{k-1}.
  static DgaSpec quotient_thh(const CdvrSpec& cdvr, int k) {
    QuotientRing ring(cdvr, k);
    DgaSpec s{ring, cdvr.mixed() ? DgaVariant::QuotientThh : DgaVariant::EqualCharQuotient,
              cdvr.mixed() ? ring.phi_prime() : ring.zero(), ring.scale(ring.pi_power(k - 1), Int(k)), "dπ"};
    return s;
  }
  /// THH(A; Z_p) with coefficients in A/pi^K: alpha = phi'(pi), no y.
  static DgaSpec cdvr_with_coeffs(const CdvrSpec& cdvr, int K) {
    QuotientRing ring(cdvr, K);
    return DgaSpec{ring, DgaVariant::CdvrWithCoeffs, ring.phi_prime(), std::nullopt, "dπ"};
  }
  /// Logarithmic THH(A | pi; Z_p) with coefficients in A/pi^K: alpha = pi phi'(pi).
  static DgaSpec log_cdvr(const CdvrSpec& cdvr, int K) {
    QuotientRing ring(cdvr, K);
    return DgaSpec{ring, DgaVariant::LogCdvr, ring.mul(ring.pi(), ring.phi_prime()), std::nullopt, "dlog π"};
  }
};

/// A homogeneous element; zero coefficients are never stored.
struct ChainElt {
  int degree = 0;
  std::map<BasisElt, QElem> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const ChainElt& a, const ChainElt& b) {
    return a.is_zero() && b.is_zero() ? true : a.degree == b.degree && a.coeffs == b.coeffs;
  }
};

/// Monomials of degree n, ordered by descending x-exponent.
inline std::vector<BasisElt> basis(const DgaSpec& spec, int n) {
  std::vector<BasisElt> out;
  if (n < 0) return out;
  const int m = n / 2, eps = n % 2;
  if (!spec.has_y()) {
    out.push_back({m, 0, eps});
    return out;
  }
  for (int i = m; i >= 0; --i) out.push_back({i, m - i, eps});
  return out;
}

namespace dga_detail {

inline void accumulate(const QuotientRing& ring, ChainElt& target, const BasisElt& b, const QElem& c) {
  if (ring.is_zero(c)) return;
  auto it = target.coeffs.find(b);
  if (it == target.coeffs.end()) {
    target.coeffs.emplace(b, c);
    return;
  }
  it->second = ring.add(it->second, c);
  if (ring.is_zero(it->second)) target.coeffs.erase(it);
}

}  // namespace dga_detail

inline ChainElt monomial(const DgaSpec& spec, BasisElt b, const QElem& coeff) {
  if (!spec.has_y() && b.j != 0) throw Error(ErrorCode::SpecMismatch, "this DGA has no divided power generator");
  ChainElt out{b.degree(), {}};
  dga_detail::accumulate(spec.ring, out, b, coeff);
  return out;
}
inline ChainElt monomial(const DgaSpec& spec, BasisElt b) { return monomial(spec, b, spec.ring.one()); }

inline ChainElt add(const DgaSpec& spec, const ChainElt& a, const ChainElt& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree != b.degree) throw Error(ErrorCode::SpecMismatch, "adding elements of different degrees");
  ChainElt out = a;
  for (const auto& [m, c] : b.coeffs) dga_detail::accumulate(spec.ring, out, m, c);
  return out;
}
inline ChainElt scale(const DgaSpec& spec, const QElem& s, const ChainElt& a) {
  ChainElt out{a.degree, {}};
  for (const auto& [m, c] : a.coeffs) dga_detail::accumulate(spec.ring, out, m, spec.ring.mul(s, c));
  return out;
}
inline ChainElt sub(const DgaSpec& spec, const ChainElt& a, const ChainElt& b) {
  return add(spec, a, scale(spec, spec.ring.neg(spec.ring.one()), b));
}

/// Coefficient vector in the order of basis(spec, degree).
inline std::vector<QElem> to_vector(const DgaSpec& spec, const ChainElt& a, int degree) {
  const auto bs = basis(spec, degree);
  std::vector<QElem> out(bs.size(), spec.ring.zero());
  for (const auto& [m, c] : a.coeffs) {
    if (m.degree() != degree) throw Error(ErrorCode::SpecMismatch, "element is not of the requested degree");
    for (std::size_t idx = 0; idx < bs.size(); ++idx)
      if (bs[idx] == m) out[idx] = c;
  }
  return out;
}
inline ChainElt from_vector(const DgaSpec& spec, int degree, const std::vector<QElem>& v) {
  const auto bs = basis(spec, degree);
  ChainElt out{degree, {}};
  for (std::size_t idx = 0; idx < bs.size(); ++idx) dga_detail::accumulate(spec.ring, out, bs[idx], v.at(idx));
  return out;
}

/// d(x^i y^[j]) = i alpha x^{i-1} y^[j] d pi + beta x^i y^[j-1] d pi; zero on odd degrees.
inline ChainElt differential(const DgaSpec& spec, const ChainElt& a) {
  const QuotientRing& ring = spec.ring;
  ChainElt out{a.degree - 1, {}};
  for (const auto& [m, c] : a.coeffs) {
    if (m.eps == 1) continue;
    if (m.i > 0) dga_detail::accumulate(ring, out, {m.i - 1, m.j, 1}, ring.mul(c, ring.scale(spec.alpha, Int(m.i))));
    if (m.j > 0 && spec.has_y()) dga_detail::accumulate(ring, out, {m.i, m.j - 1, 1}, ring.mul(c, *spec.beta));
  }
  return out;
}

/// Matrix of d: degree n -> degree n-1 with respect to the ordered bases.
inline ChainMatrix<QuotientRing> differential_matrix(const DgaSpec& spec, int n) {
  const auto cols = basis(spec, n);
  const auto rows = basis(spec, n - 1);
  ChainMatrix<QuotientRing> out(spec.ring, rows.size(), cols.size());
  if (n <= 0 || n % 2 == 1) return out;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const ChainElt image = differential(spec, monomial(spec, cols[c]));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto it = image.coeffs.find(rows[r]);
      if (it != image.coeffs.end()) out(r, c) = it->second;
    }
  }
  return out;
}

/// Divided power product: y^[r] y^[s] = C(r+s, r) y^[r+s], (d pi)^2 = 0.
inline ChainElt multiply(const DgaSpec& spec, const ChainElt& a, const ChainElt& b) {
  const QuotientRing& ring = spec.ring;
  ChainElt out{a.degree + b.degree, {}};
  for (const auto& [ma, ca] : a.coeffs)
    for (const auto& [mb, cb] : b.coeffs) {
      if (ma.eps + mb.eps > 1) continue;
      const Int binom = binomial(static_cast<unsigned>(ma.j + mb.j), static_cast<unsigned>(ma.j));
      const QElem c = ring.mul(ring.mul(ca, cb), ring.from_int(binom));
      dga_detail::accumulate(ring, out, {ma.i + mb.i, ma.j + mb.j, ma.eps + mb.eps}, c);
    }
  return out;
}

inline ChainElt power(const DgaSpec& spec, const ChainElt& a, int m) {
  if (m < 1) throw Error(ErrorCode::SpecMismatch, "power exponent must be positive");
  ChainElt out = a;
  for (int s = 1; s < m; ++s) out = multiply(spec, out, a);
  return out;
}

/// Homology in one degree, with one cycle representative per cyclic summand.
struct DgaHomology {
  FinModule module;
  std::vector<ChainElt> representatives;
};

inline DgaHomology homology(const DgaSpec& spec, int n) {
  if (n < 0) throw Error(ErrorCode::SpecMismatch, "degree must be nonnegative");
  const auto result = subquotient_homology(differential_matrix(spec, n + 1), differential_matrix(spec, n));
  DgaHomology out{result.module, {}};
  for (const auto& rep : result.representatives) out.representatives.push_back(from_vector(spec, n, rep));
  return out;
}

/// Whether the class of the cycle z lies in s * H_n, i.e. z = s w + d v with w a cycle.
inline bool divisibility_query(const DgaSpec& spec, const ChainElt& z, const QElem& s) {
  const int n = z.degree;
  if (!differential(spec, z).is_zero()) throw Error(ErrorCode::NotACycle, "divisibility query needs a cycle");
  const QuotientRing& ring = spec.ring;
  const auto cycles = kernel_basis(differential_matrix(spec, n));
  const auto boundary = differential_matrix(spec, n + 1);
  const std::size_t dim = basis(spec, n).size();
  ChainMatrix<QuotientRing> system(ring, dim, cycles.rows() + boundary.cols());
  for (std::size_t g = 0; g < cycles.rows(); ++g)
    for (std::size_t r = 0; r < dim; ++r) system(r, g) = ring.mul(s, cycles(g, r));
  for (std::size_t c = 0; c < boundary.cols(); ++c)
    for (std::size_t r = 0; r < dim; ++r) system(r, cycles.rows() + c) = boundary(r, c);
  return solve(system, to_vector(spec, z, n)).has_value();
}

inline std::string to_string(const DgaSpec& spec, const ChainElt& a) {
  if (a.is_zero()) return "0";
  std::string out;
  const auto bs = basis(spec, a.degree);
  for (const auto& b : bs) {
    auto it = a.coeffs.find(b);
    if (it == a.coeffs.end()) continue;
    std::vector<std::string> factors;
    const std::string c = spec.ring.to_string(it->second);
    if (c != "1") factors.push_back(c.find(" + ") != std::string::npos ? "(" + c + ")" : c);
    if (b.i == 1) factors.push_back("x");
    if (b.i > 1) factors.push_back("x^" + std::to_string(b.i));
    if (b.j == 1) factors.push_back("y");
    if (b.j > 1) factors.push_back("y^[" + std::to_string(b.j) + "]");
    if (b.eps == 1) factors.push_back(spec.odd_name);
    std::string term;
    for (const auto& fct : factors) term += (term.empty() ? "" : "·") + fct;
    if (term.empty()) term = "1";
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

}  // namespace thh
